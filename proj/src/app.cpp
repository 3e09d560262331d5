#include "delsarte/app.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "delsarte/bounds.hpp"
#include "delsarte/errors.hpp"
#include "delsarte/lemmas.hpp"

namespace delsarte {

namespace fs = std::filesystem;

double parse_angle(std::string_view text) {
  double scale = 0.0;
  std::string_view number;
  if (text.size() > 3 && text.substr(text.size() - 3) == "deg") {
    scale = std::numbers::pi / 180.0;
    number = text.substr(0, text.size() - 3);
  } else if (text.size() > 3 && text.substr(text.size() - 3) == "rad") {
    scale = 1.0;
    number = text.substr(0, text.size() - 3);
  } else {
    throw DomainError("angle '" + std::string(text) + "' needs a 'deg' or 'rad' suffix");
  }
  const double value = parse_real(number);
  if (!std::isfinite(value)) throw DomainError("angle must be finite");
  return value * scale;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

namespace {

Json lp_options_json(const lp::SolverOptions& o) {
  Json j;
  j["feas_tol"] = format_real(o.feas_tol);
  j["opt_tol"] = format_real(o.opt_tol);
  j["max_iter"] = o.max_iter;
  j["refactor_interval"] = o.refactor_interval;
  j["max_condition"] = format_real(o.max_condition);
  j["bland_after"] = o.bland_after;
  j["perturbation"] = format_real(o.perturbation);
  j["scale"] = o.scale;
  j["scale_columns"] = o.scale_columns;
  return j;
}

Problem with_degree(Problem problem, int m) {
  std::visit([m](auto& p) { p.m = m; }, problem);
  return problem;
}

}  // namespace

Json request_json(const LpRequest& request) {
  const SolveOptions& o = request.options;
  Json j;
  j["version"] = kFormatVersion;
  Json problem = problem_json(request.problem);
  if (const auto* d = std::get_if<DesignProblem>(&request.problem)) {
    problem["convention"] = to_string(d->convention);
  }
  if (request.auto_degree) problem.erase("m");
  j["problem"] = std::move(problem);
  j["degree"] = request.auto_degree ? Json("auto") : Json(std::visit([](const auto& p) { return p.m; }, request.problem));
  j["m_max"] = o.m_max;
  j["m_rel_change"] = format_real(o.m_rel_change);
  j["cut_tol"] = format_real(o.cut_tol);
  j["max_rounds"] = o.max_rounds;
  j["initial_grid"] = o.initial_grid;
  j["scan_factor"] = o.scan_factor;
  j["verify_points"] = o.verify_points;
  j["refine_extrema"] = o.refine_extrema;
  j["lp"] = lp_options_json(o.lp);
  return j;
}

std::string request_key(const LpRequest& request) {
  return hex64(fnv1a(request_json(request).dump()));
}

Json solve_payload(const LpRequest& request) {
  LPBracket bracket;
  if (const auto* c = std::get_if<CodeProblem>(&request.problem)) {
    bracket = request.auto_degree ? code_bound_auto(c->n, c->theta, request.options)
                                  : code_bound(*c, request.options);
  } else {
    const auto& d = std::get<DesignProblem>(request.problem);
    bracket = request.auto_degree ? design_bound_auto(d.n, d.k, d.convention, request.options)
                                  : design_bound(d, request.options);
  }
  Json j;
  j["bracket"] = bracket_json(with_degree(request.problem, bracket.m_used), bracket);
  Json trace = Json::array();
  for (const auto& step : bracket.trace) {
    trace.push_back(Json{{"m", step.m},
                         {"relaxed_value", format_real(step.relaxed_value)},
                         {"certified_value", format_real(step.certified_value)}});
  }
  j["degree_trace"] = std::move(trace);
  return j;
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResultCache::entry_path(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<Json> ResultCache::load(const std::string& key) {
  const fs::path path = entry_path(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    Json entry = Json::parse(buffer.str());
    if (entry.at("version").get<std::string>() != kFormatVersion ||
        entry.at("key").get<std::string>() != key) {
      throw DomainError("cache entry header mismatch");
    }
    Json payload = entry.at("payload");
    if (entry.at("checksum").get<std::string>() != hex64(fnv1a(payload.dump()))) {
      throw DomainError("cache checksum mismatch");
    }
    ++hits_;
    return payload;
  } catch (const std::exception&) {
    ++corrupt_;
    ++misses_;
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const Json& payload) {
  fs::create_directories(dir_);
  Json entry;
  entry["version"] = kFormatVersion;
  entry["key"] = key;
  entry["checksum"] = hex64(fnv1a(payload.dump()));
  entry["payload"] = payload;
  const fs::path target = entry_path(key);
  const fs::path temp = dir_ / (key + ".json.tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache entry " + temp.string());
    out << entry.dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot write cache entry " + temp.string());
  }
  fs::rename(temp, target);
}

std::string resolve_cache_dir(const std::string& flag, const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return fallback;
}

Json cached_solve(const LpRequest& request, ResultCache* cache, bool* hit) {
  const std::string key = request_key(request);
  if (cache != nullptr) {
    if (auto payload = cache->load(key)) {
      if (hit != nullptr) *hit = true;
      return *payload;
    }
  }
  Json payload = solve_payload(request);
  if (cache != nullptr) cache->store(key, payload);
  if (hit != nullptr) *hit = false;
  return payload;
}

namespace {

const std::set<std::string> kSpecKeys{"kind",  "n",       "theta", "k",       "convention",
                                      "m",     "m_max",   "cut_tol", "grid",  "extracts",
                                      "fit_slope"};

std::vector<int> parse_int_axis(const Json& j, const std::string& name) {
  std::vector<int> values;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw DomainError("axis '" + name + "' must hold integers");
      values.push_back(v.get<int>());
    }
  } else if (j.is_object()) {
    const int from = j.at("from").get<int>();
    const int to = j.at("to").get<int>();
    const int step = j.contains("step") ? j["step"].get<int>() : 1;
    if (step <= 0) throw DomainError("axis '" + name + "' needs a positive step");
    for (int v = from; v <= to; v += step) values.push_back(v);
  } else {
    throw DomainError("axis '" + name + "' must be a list or a {from, to, step} range");
  }
  if (values.empty()) throw DomainError("axis '" + name + "' is empty");
  return values;
}

const std::vector<std::string> kCodeColumns{
    "n",           "theta",        "theta_label",      "status",
    "error",       "m_used",       "grid_size",        "relaxed_value",
    "certified_value", "max_violation", "rate_exponent", "volume_exponent",
    "kl_exponent", "cor13_exponent", "prop1_r",        "prop1_x_r",
    "prop1_expression_log10", "prop1_expression_alt_log10"};

const std::vector<std::string> kDesignColumns{
    "n",           "k",            "convention",       "status",
    "error",       "m_used",       "grid_size",        "relaxed_value",
    "certified_value", "max_violation", "prop2_ell",   "prop2_rho",
    "prop2_expression_log10", "yudin_gamma", "yudin_value", "yudin_asymptotic_log10",
    "cor14_value_log10", "dgs_design_exponent"};

const std::vector<std::string>& columns_for(const std::string& kind) {
  return kind == "codes" ? kCodeColumns : kDesignColumns;
}

void fill_formulas(const BoundReport& report, std::map<std::string, std::string>& row) {
  for (const auto& e : report.entries) {
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, LogReal>) {
            row[e.name + "_log10"] = format_real(v.log10_abs());
          } else if constexpr (std::is_same_v<V, long long>) {
            row[e.name] = std::to_string(v);
          } else {
            row[e.name] = format_real(v);
          }
        },
        e.value);
  }
}

}  // namespace

SweepSpec parse_sweep_spec(const Json& j) {
  if (!j.is_object()) throw DomainError("sweep spec must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kSpecKeys.contains(key)) throw DomainError("unknown sweep spec key '" + key + "'");
  }
  SweepSpec spec;
  try {
    spec.kind = j.at("kind").get<std::string>();
    if (spec.kind != "codes" && spec.kind != "designs") {
      throw DomainError("sweep kind must be 'codes' or 'designs'");
    }
    spec.n = parse_int_axis(j.at("n"), "n");
    if (spec.kind == "codes") {
      if (j.contains("k") || j.contains("convention")) {
        throw DomainError("code sweeps take 'theta', not 'k' or 'convention'");
      }
      const Json& theta = j.at("theta");
      if (!theta.is_array()) throw DomainError("axis 'theta' must be a list of angles");
      for (const auto& t : theta) {
        const std::string label = t.get<std::string>();
        spec.theta.push_back(parse_angle(label));
        spec.theta_labels.push_back(label);
      }
      if (spec.theta.empty()) throw DomainError("axis 'theta' is empty");
    } else {
      if (j.contains("theta")) throw DomainError("design sweeps take 'k', not 'theta'");
      spec.k = parse_int_axis(j.at("k"), "k");
      if (j.contains("convention")) {
        spec.convention = parse_convention(j["convention"].get<std::string>());
      }
    }
    if (j.contains("m")) spec.m = j["m"].get<int>();
    if (j.contains("m_max")) spec.options.m_max = j["m_max"].get<int>();
    if (j.contains("cut_tol")) spec.options.cut_tol = j["cut_tol"].get<double>();
    if (j.contains("grid")) spec.options.initial_grid = j["grid"].get<int>();
    if (j.contains("fit_slope")) spec.fit_slope = j["fit_slope"].get<bool>();
    if (j.contains("extracts")) {
      const auto& columns = columns_for(spec.kind);
      for (const auto& pair : j["extracts"]) {
        if (!pair.is_array() || pair.size() != 2) {
          throw DomainError("each extract must be a [x, y] pair of column names");
        }
        const std::string x = pair[0].get<std::string>();
        const std::string y = pair[1].get<std::string>();
        for (const auto& c : {x, y}) {
          if (std::find(columns.begin(), columns.end(), c) == columns.end()) {
            throw DomainError("unknown extract column '" + c + "'");
          }
        }
        spec.extracts.emplace_back(x, y);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed sweep spec: ") + e.what());
  }
  if (!(spec.options.cut_tol > 0.0)) throw DomainError("cut_tol must be positive");
  if (spec.options.m_max < 1) throw DomainError("m_max must be positive");
  if (spec.options.initial_grid < 0) throw DomainError("grid must be nonnegative");
  if (spec.m && *spec.m < 1) throw DomainError("m must be positive");
  return spec;
}

namespace {

struct SweepPoint {
  LpRequest request;
  std::map<std::string, std::string> row;
};

std::vector<SweepPoint> sweep_points(const SweepSpec& spec) {
  std::vector<SweepPoint> points;
  auto make_request = [&](Problem problem) {
    LpRequest r;
    r.problem = std::move(problem);
    r.auto_degree = !spec.m.has_value();
    r.options = spec.options;
    return r;
  };
  for (int n : spec.n) {
    if (spec.kind == "codes") {
      for (std::size_t i = 0; i < spec.theta.size(); ++i) {
        SweepPoint p;
        p.request = make_request(CodeProblem{n, spec.theta[i], spec.m.value_or(1)});
        p.row["n"] = std::to_string(n);
        p.row["theta"] = format_real(spec.theta[i]);
        p.row["theta_label"] = spec.theta_labels[i];
        points.push_back(std::move(p));
      }
    } else {
      for (int k : spec.k) {
        SweepPoint p;
        p.request = make_request(DesignProblem{n, k, spec.m.value_or(std::max(k, 1)), spec.convention});
        p.row["n"] = std::to_string(n);
        p.row["k"] = std::to_string(k);
        p.row["convention"] = to_string(spec.convention);
        points.push_back(std::move(p));
      }
    }
  }
  return points;
}

void validate_request(const LpRequest& r) {
  std::visit(
      [&](const auto& p) {
        auto q = p;
        if (r.auto_degree) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, DesignProblem>) {
            q.m = std::max(q.k, 1);
          } else {
            q.m = 1;
          }
        }
        q.validate();
      },
      r.problem);
}

}  // namespace

SweepOutput run_sweep(const SweepSpec& spec, ResultCache* cache, int jobs) {
  std::vector<SweepPoint> points = sweep_points(spec);
  const std::size_t count = points.size();
  std::vector<std::optional<Json>> payloads(count);
  std::vector<std::string> errors(count);
  std::vector<std::size_t> pending;
  SweepOutput output;

  for (std::size_t i = 0; i < count; ++i) {
    try {
      validate_request(points[i].request);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      continue;
    }
    if (cache != nullptr) {
      if (auto payload = cache->load(request_key(points[i].request))) {
        payloads[i] = std::move(*payload);
        ++output.cache_hits;
        continue;
      }
    }
    pending.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= pending.size()) return;
      const std::size_t i = pending[slot];
      try {
        payloads[i] = solve_payload(points[i].request);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(pending.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (cache != nullptr) {
    for (std::size_t i : pending) {
      if (payloads[i]) cache->store(request_key(points[i].request), *payloads[i]);
    }
  }

  const auto& columns = columns_for(spec.kind);
  output.table.header = columns;
  for (std::size_t i = 0; i < count; ++i) {
    auto& row = points[i].row;
    const int n = std::stoi(row["n"]);
    if (payloads[i]) {
      const Json& b = payloads[i]->at("bracket");
      row["status"] = "ok";
      row["m_used"] = std::to_string(b.at("m_used").get<int>());
      row["grid_size"] = std::to_string(b.at("grid_size").get<int>());
      for (const char* field : {"relaxed_value", "certified_value", "max_violation"}) {
        row[field] = b.at(field).get<std::string>();
      }
      if (spec.kind == "codes") {
        const double certified = parse_real(row["certified_value"]);
        row["rate_exponent"] = format_real(std::log2(certified) / n);
      }
      ++output.succeeded;
    } else {
      row["status"] = "error";
      row["error"] = errors[i];
      ++output.failed;
    }
    if (spec.kind == "codes") {
      fill_formulas(code_formulas(n, spec.theta[i % spec.theta.size()]), row);
    } else {
      fill_formulas(design_formulas(n, std::stoi(row["k"])), row);
    }
    std::vector<std::string> fields;
    for (const auto& c : columns) {
      auto it = row.find(c);
      fields.push_back(it == row.end() ? std::string() : it->second);
    }
    output.table.rows.push_back(std::move(fields));
  }

  auto column_index = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(columns.begin(), columns.end(), name) - columns.begin());
  };
  const std::size_t status_col = column_index("status");

  for (const auto& [x, y] : spec.extracts) {
    std::vector<std::string> group_cols;
    for (const std::string axis : {"n", "theta", "k"}) {
      if (axis == x) continue;
      if (std::find(columns.begin(), columns.end(), axis) != columns.end()) group_cols.push_back(axis);
    }
    std::map<std::string, CsvTable> groups;
    std::vector<std::string> order;
    for (const auto& r : output.table.rows) {
      if (r[status_col] != "ok") continue;
      const std::string& xv = r[column_index(x)];
      const std::string& yv = r[column_index(y)];
      if (xv.empty() || yv.empty()) continue;
      std::string label;
      for (const auto& g : group_cols) {
        const std::string& v = g == "theta" ? r[column_index("theta_label")] : r[column_index(g)];
        label += g + v + ".";
      }
      if (!groups.contains(label)) {
        order.push_back(label);
        groups[label].header = {x, y};
      }
      groups[label].rows.push_back({xv, yv});
    }
    for (const auto& label : order) {
      std::string name = label + x + "_vs_" + y;
      output.extracts.emplace_back(std::move(name), std::move(groups[label]));
    }
  }

  if (spec.fit_slope && spec.kind == "designs") {
    for (int n : spec.n) {
      std::vector<double> ks;
      std::vector<double> values;
      for (const auto& r : output.table.rows) {
        if (r[status_col] != "ok" || r[column_index("n")] != std::to_string(n)) continue;
        ks.push_back(parse_real(r[column_index("k")]));
        values.push_back(parse_real(r[column_index("certified_value")]));
      }
      Json record;
      record["version"] = kFormatVersion;
      record["kind"] = "loglog_slope";
      record["n"] = n;
      record["x"] = "k";
      record["y"] = "certified_value";
      record["convention"] = to_string(spec.convention);
      record["points"] = static_cast<int>(ks.size());
      if (ks.size() >= 2) {
        record["slope"] = format_real(loglog_slope(ks, values));
      } else {
        record["slope"] = nullptr;
      }
      record["target"] = n - 1;
      output.slopes.push_back(std::move(record));
    }
  }
  output.payloads = std::move(payloads);
  output.errors = std::move(errors);
  return output;
}

}  // namespace delsarte
