#pragma once

// Command plumbing shared by the command-line tool and its tests: angle
// parsing, configuration hashing, the on-disk result cache and sweep specs.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "delsarte/delsarte_lp.hpp"
#include "delsarte/report.hpp"

namespace delsarte {

/// "60deg", "1.5rad" (the unit suffix is mandatory). Returns radians.
double parse_angle(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t value);

/// How a single LP is run: a fixed degree, or the doubling sweep up to m_max.
struct LpRequest {
  Problem problem;  // for auto degree, problem.m is ignored
  bool auto_degree = true;
  SolveOptions options;
};

/// Canonical description of everything that determines an LP result.
Json request_json(const LpRequest& request);
/// Hex FNV-1a of the canonical description; keys the cache.
std::string request_key(const LpRequest& request);

/// Payload stored per request: {"bracket": ..., "degree_trace": [...]}.
Json solve_payload(const LpRequest& request);

/// Directory of JSON entries, one per key, written atomically (temp file and
/// rename) and guarded by a checksum of the payload text. Unreadable or
/// mismatching entries count as corrupt and are treated as misses.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(const std::string& key) const;

  std::optional<Json> load(const std::string& key);
  void store(const std::string& key, const Json& payload);

  int hits() const { return hits_; }
  int misses() const { return misses_; }
  int corrupt() const { return corrupt_; }

 private:
  std::filesystem::path dir_;
  int hits_ = 0;
  int misses_ = 0;
  int corrupt_ = 0;
};

/// Resolves the cache directory: the flag if given, else CACHE_DIR, else
/// `fallback` (empty means no cache).
std::string resolve_cache_dir(const std::string& flag, const std::string& fallback);

/// Payload for a request, from the cache when present. `hit` reports which.
Json cached_solve(const LpRequest& request, ResultCache* cache, bool* hit = nullptr);

/// Sweep specification:
///   {"kind": "codes" | "designs",
///    "n": [..] | {"from": a, "to": b, "step": c},
///    "theta": ["60deg", ..]            (codes),
///    "k": [..] | {"from", "to", "step"} (designs),
///    "convention": "strict" | "shifted" (designs, default strict),
///    "m": fixed degree (optional; otherwise the doubling sweep),
///    "m_max": 128, "cut_tol": 1e-10, "grid": 0,
///    "extracts": [["k", "certified_value"], ..],
///    "fit_slope": true}
struct SweepSpec {
  std::string kind;
  std::vector<int> n;
  std::vector<double> theta;              // radians
  std::vector<std::string> theta_labels;  // as written
  std::vector<int> k;
  Convention convention = Convention::strict;
  std::optional<int> m;
  SolveOptions options;
  std::vector<std::pair<std::string, std::string>> extracts;
  bool fit_slope = false;
};

/// Throws DomainError on malformed specs, including empty axes.
SweepSpec parse_sweep_spec(const Json& j);

struct SweepOutput {
  CsvTable table;
  /// Per grid point: the solve payload, or empty when the point failed.
  std::vector<std::optional<Json>> payloads;
  std::vector<std::string> errors;
  /// Two-column tables, one per requested (x, y) pair.
  std::vector<std::pair<std::string, CsvTable>> extracts;
  /// Least-squares log-log slope records (designs with fit_slope).
  std::vector<Json> slopes;
  int succeeded = 0;
  int failed = 0;
  int cache_hits = 0;
};

/// Runs every grid point (cache first, then up to `jobs` concurrent solves),
/// producing one CSV row per point in grid order.
SweepOutput run_sweep(const SweepSpec& spec, ResultCache* cache, int jobs);

}  // namespace delsarte
