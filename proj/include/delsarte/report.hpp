#pragma once

// Serialization of brackets, bound reports and check records. Reals are
// written as decimal strings with 17 significant digits; LogReal values as
// {"sign", "log10"} objects. Integers stay JSON integers.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "delsarte/bounds.hpp"
#include "delsarte/delsarte_lp.hpp"
#include "delsarte/lemmas.hpp"
#include "delsarte/log_real.hpp"

namespace delsarte {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "v1";

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double value);
/// Decimal string of any magnitude, e.g. "1.2345678901234567e-412".
std::string format_real(const LogReal& value);
/// Throws DomainError on anything that is not a complete number.
double parse_real(std::string_view text);
LogReal parse_log_decimal(std::string_view text);

Json log_real_json(const LogReal& value);
LogReal log_real_from_json(const Json& j);

Json problem_json(const Problem& problem);
Problem problem_from_json(const Json& j);

/// Versioned bracket record: problem, convention, m_used, grid_size,
/// relaxed_value, certified_value, max_violation, coefficients (a_s).
Json bracket_json(const Problem& problem, const LPBracket& bracket);
/// Inverse of bracket_json; the certificate is rebuilt from a_s.
LPBracket bracket_from_json(const Json& j);

Json bound_report_json(const BoundReport& report);

Json check_report_json(const CheckReport& report);
/// One JSON object per line, in record order.
std::string check_run_jsonl(const CheckRun& run);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: fields with commas, quotes or newlines are quoted.
std::string to_csv(const CsvTable& table);
/// Throws DomainError on ragged or malformed input.
CsvTable parse_csv(std::string_view text);

}  // namespace delsarte
