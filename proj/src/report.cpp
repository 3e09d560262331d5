#include "delsarte/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <variant>

#include "delsarte/errors.hpp"
#include "delsarte/jacobi.hpp"

namespace delsarte {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_real(const LogReal& value) {
  if (value.is_zero()) return "0";
  const double l10 = value.log10_abs();
  if (!std::isfinite(l10)) return value.sign() > 0 ? "inf" : "-inf";
  if (l10 > -300.0 && l10 < 300.0) return format_real(value.to_double());
  double exponent = std::floor(l10);
  double mantissa = std::pow(10.0, l10 - exponent);
  if (mantissa >= 9.99999999999999995) {
    mantissa = 1.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.16fe%+.0f", value.sign() < 0 ? "-" : "", mantissa, exponent);
  return buf;
}

double parse_real(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw DomainError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

LogReal parse_log_decimal(std::string_view text) {
  const auto e = text.find_first_of("eE");
  if (e == std::string_view::npos) return LogReal(parse_real(text));
  const double mantissa = parse_real(text.substr(0, e));
  std::string_view exp_text = text.substr(e + 1);
  if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
  long exponent = 0;
  const auto [ptr, ec] =
      std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
  if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) {
    throw DomainError("not a number: '" + std::string(text) + "'");
  }
  if (mantissa == 0.0) return {};
  return LogReal::from_log(std::log(std::fabs(mantissa)) + exponent * std::numbers::ln10,
                           mantissa > 0 ? 1 : -1);
}

Json log_real_json(const LogReal& value) {
  Json j;
  j["sign"] = value.sign();
  j["log10"] = value.is_zero() ? "-inf" : format_real(value.log10_abs());
  return j;
}

LogReal log_real_from_json(const Json& j) {
  const int sign = j.at("sign").get<int>();
  if (sign == 0) return {};
  return LogReal::from_log(parse_real(j.at("log10").get<std::string>()) * std::numbers::ln10,
                           sign);
}

Json problem_json(const Problem& problem) {
  Json j;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, CodeProblem>) {
          j["type"] = "code";
          j["n"] = p.n;
          j["theta"] = format_real(p.theta);
          j["m"] = p.m;
        } else {
          j["type"] = "design";
          j["n"] = p.n;
          j["k"] = p.k;
          j["m"] = p.m;
        }
      },
      problem);
  return j;
}

Problem problem_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "code") {
    return CodeProblem{j.at("n").get<int>(), parse_real(j.at("theta").get<std::string>()),
                       j.at("m").get<int>()};
  }
  if (type == "design") {
    DesignProblem p{j.at("n").get<int>(), j.at("k").get<int>(), j.at("m").get<int>()};
    if (j.contains("convention")) p.convention = parse_convention(j["convention"].get<std::string>());
    return p;
  }
  throw DomainError("unknown problem type '" + type + "'");
}

Json bracket_json(const Problem& problem, const LPBracket& bracket) {
  Json j;
  j["version"] = kFormatVersion;
  j["problem"] = problem_json(problem);
  if (const auto* d = std::get_if<DesignProblem>(&problem)) {
    j["convention"] = to_string(d->convention);
  } else {
    j["convention"] = nullptr;
  }
  j["m_used"] = bracket.m_used;
  j["grid_size"] = bracket.grid_size;
  j["relaxed_value"] = format_real(bracket.relaxed_value);
  j["certified_value"] = format_real(bracket.certified_value);
  j["max_violation"] = format_real(bracket.max_violation);
  Json coeffs = Json::array();
  for (int s = 0; s <= bracket.certificate.degree(); ++s) {
    coeffs.push_back(format_real(bracket.certificate.raw_coefficient(s)));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

LPBracket bracket_from_json(const Json& j) {
  if (j.at("version").get<std::string>() != kFormatVersion) {
    throw DomainError("unsupported record version");
  }
  Json pj = j.at("problem");
  if (!j.at("convention").is_null()) pj["convention"] = j["convention"];
  const Problem problem = problem_from_json(pj);
  LPBracket b;
  b.m_used = j.at("m_used").get<int>();
  b.grid_size = j.at("grid_size").get<int>();
  b.relaxed_value = parse_real(j.at("relaxed_value").get<std::string>());
  b.certified_value = parse_real(j.at("certified_value").get<std::string>());
  b.max_violation = parse_real(j.at("max_violation").get<std::string>());
  std::vector<LogReal> a;
  for (const auto& c : j.at("coefficients")) a.push_back(parse_log_decimal(c.get<std::string>()));
  const int n = std::visit([](const auto& p) { return p.n; }, problem);
  b.certificate = CoeffVector::from_raw(PolyFamily::sphere(n), a);
  return b;
}

Json bound_report_json(const BoundReport& report) {
  Json j;
  j["version"] = kFormatVersion;
  j["n"] = report.n;
  if (report.theta) j["theta"] = format_real(*report.theta);
  if (report.k) j["k"] = *report.k;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json item;
    item["name"] = e.name;
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, LogReal>) {
            item["value"] = log_real_json(v);
          } else if constexpr (std::is_same_v<V, long long>) {
            item["value"] = v;
          } else {
            item["value"] = format_real(v);
          }
        },
        e.value);
    item["log_base"] = e.base.empty() ? Json(nullptr) : Json(e.base);
    entries.push_back(std::move(item));
  }
  j["entries"] = std::move(entries);
  Json skipped = Json::array();
  for (const auto& [name, reason] : report.skipped) {
    skipped.push_back(Json{{"name", name}, {"reason", reason}});
  }
  j["skipped"] = std::move(skipped);
  return j;
}

namespace {

Json point_json(const ParamPoint& p) {
  Json j = Json::object();
  for (const auto& [name, v] : p) j[name] = format_real(v);
  return j;
}

}  // namespace

Json check_report_json(const CheckReport& r) {
  Json j;
  j["version"] = kFormatVersion;
  j["id"] = r.id;
  j["kind"] = r.summary ? "summary" : "case";
  j["asserted"] = r.asserted;
  j["holds"] = r.holds;
  Json ranges = Json::array();
  for (const auto& pr : r.ranges) {
    ranges.push_back(Json{{"name", pr.name}, {"lo", format_real(pr.lo)}, {"hi", format_real(pr.hi)}});
  }
  j["ranges"] = std::move(ranges);
  j["worst_case"] = point_json(r.worst_case);
  j["worst_margin"] = format_real(r.worst_margin);
  if (r.constant) {
    j["constant"] = Json{{"name", r.constant_name}, {"value", format_real(*r.constant)}};
  } else {
    j["constant"] = nullptr;
  }
  j["metrics"] = point_json(r.metrics);
  j["findings"] = r.findings;
  j["cases"] = r.cases;
  j["skipped"] = r.skipped;
  return j;
}

std::string check_run_jsonl(const CheckRun& run) {
  std::string out;
  for (const auto& r : run.records) {
    out += check_report_json(r).dump();
    out += '\n';
  }
  return out;
}

namespace {

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw DomainError("CSV row width mismatch");
    line(row);
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw DomainError("CSV quote inside unquoted field");
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      field.clear();
      lines.push_back(std::move(fields));
      fields.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) throw DomainError("unterminated CSV quote");
  if (any) {
    fields.push_back(std::move(field));
    lines.push_back(std::move(fields));
  }
  if (lines.empty()) throw DomainError("CSV input has no header");
  CsvTable t;
  t.header = std::move(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != t.header.size()) throw DomainError("ragged CSV row");
    t.rows.push_back(std::move(lines[i]));
  }
  return t;
}

}  // namespace delsarte
