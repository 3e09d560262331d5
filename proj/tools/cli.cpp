#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "delsarte/app.hpp"
#include "delsarte/bounds.hpp"
#include "delsarte/errors.hpp"
#include "delsarte/lemmas.hpp"

namespace delsarte::cli {

namespace {

constexpr const char* kDefaultSweepCache = ".delsarte-cache";

const std::vector<std::string> kSuites{"monotone", "tailsum",        "nem",
                                       "designmono", "roots",        "sandwich-codes",
                                       "sandwich-designs", "all"};

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << text;
  if (!file) throw std::runtime_error("cannot write output file " + path);
}

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions o;
  o.m_max = c.m_max;
  o.cut_tol = c.cut_tol;
  o.initial_grid = c.grid;
  return o;
}

void check_lp_flags(const RunConfig& c) {
  if (c.m_max < 1) throw UsageError("--m-max must be positive");
  if (!(c.cut_tol > 0.0)) throw UsageError("--cut-tol must be positive");
  if (c.grid < 0) throw UsageError("--grid must be nonnegative");
  if (c.jobs < 1) throw UsageError("--jobs must be positive");
  if (c.m && *c.m < 1) throw UsageError("--m must be positive");
}

Json command_header(const RunConfig& c) {
  Json j;
  j["version"] = kFormatVersion;
  j["command"] = c.command;
  j["config"] = run_config_json(c);
  j["config_hash"] = run_config_hash(c);
  return j;
}

SweepSpec single_point_spec(const RunConfig& c) {
  SweepSpec spec;
  spec.n = {*c.n};
  spec.m = c.m;
  spec.options = solve_options(c);
  return spec;
}

/// Runs the one-point sweeps, failing the command if any LP failed.
std::vector<SweepOutput> run_points(const std::vector<SweepSpec>& specs, const RunConfig& c,
                                    std::ostream& err) {
  const std::string dir = resolve_cache_dir(c.cache_dir, "");
  std::optional<ResultCache> cache;
  if (!dir.empty()) cache.emplace(dir);
  std::vector<SweepOutput> outputs;
  for (const auto& spec : specs) {
    SweepOutput o = run_sweep(spec, cache ? &*cache : nullptr, 1);
    for (const auto& e : o.errors) {
      if (!e.empty()) throw BoundError(e);
    }
    outputs.push_back(std::move(o));
  }
  if (cache) {
    err << "cache: " << cache->hits() << " hit(s), " << cache->misses() << " miss(es) in "
        << cache->dir().string() << '\n';
  }
  return outputs;
}

std::string render_points(const RunConfig& c, const std::vector<SweepOutput>& outputs,
                          const BoundReport& formulas) {
  if (c.format == "csv") {
    CsvTable table;
    for (const auto& o : outputs) {
      table.header = o.table.header;
      table.rows.insert(table.rows.end(), o.table.rows.begin(), o.table.rows.end());
    }
    return to_csv(table);
  }
  Json j = command_header(c);
  Json results = Json::array();
  for (const auto& o : outputs) {
    for (const auto& p : o.payloads) results.push_back(*p);
  }
  j["results"] = std::move(results);
  j["formulas"] = bound_report_json(formulas);
  return j.dump(2) + '\n';
}

int cmd_codes(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_lp_flags(c);
  const double theta = parse_angle(c.theta);
  CodeProblem{*c.n, theta, c.m.value_or(1)}.validate();
  SweepSpec spec = single_point_spec(c);
  spec.kind = "codes";
  spec.theta = {theta};
  spec.theta_labels = {c.theta};
  const auto outputs = run_points({spec}, c, err);
  write_text(c.out, render_points(c, outputs, code_formulas(*c.n, theta)), out);
  return kOk;
}

int cmd_designs(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_lp_flags(c);
  std::vector<Convention> conventions;
  if (c.convention.empty()) {
    conventions = {Convention::strict, Convention::shifted};
  } else {
    conventions = {parse_convention(c.convention)};
  }
  std::vector<SweepSpec> specs;
  for (Convention conv : conventions) {
    DesignProblem{*c.n, *c.k, c.m.value_or(*c.k), conv}.validate();
    if (!c.m && c.m_max < *c.k) throw UsageError("--m-max must be at least --k");
    SweepSpec spec = single_point_spec(c);
    spec.kind = "designs";
    spec.k = {*c.k};
    spec.convention = conv;
    specs.push_back(std::move(spec));
  }
  const auto outputs = run_points(specs, c, err);
  write_text(c.out, render_points(c, outputs, design_formulas(*c.n, *c.k)), out);
  return kOk;
}

int cmd_formula(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.theta.empty() && !c.k) throw UsageError("formula needs --theta, --k or both");
  std::vector<BoundReport> reports;
  if (!c.theta.empty()) reports.push_back(code_formulas(*c.n, parse_angle(c.theta)));
  if (c.k) reports.push_back(design_formulas(*c.n, *c.k));
  if (c.format == "csv") {
    CsvTable table;
    table.header = {"report", "name", "value", "log_base", "skipped_reason"};
    for (const auto& r : reports) {
      const std::string label = r.theta ? "codes" : "designs";
      for (const auto& e : r.entries) {
        std::string value = std::visit(
            [](const auto& v) -> std::string {
              using V = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<V, long long>) {
                return std::to_string(v);
              } else {
                return format_real(v);
              }
            },
            e.value);
        table.rows.push_back({label, e.name, value, e.base, ""});
      }
      for (const auto& [name, reason] : r.skipped) table.rows.push_back({label, name, "", "", reason});
    }
    write_text(c.out, to_csv(table), out);
    return kOk;
  }
  Json j = command_header(c);
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(bound_report_json(r));
  j["reports"] = std::move(list);
  write_text(c.out, j.dump(2) + '\n', out);
  return kOk;
}

void append(CheckRun& into, CheckRun&& from) {
  for (auto& r : from.records) into.records.push_back(std::move(r));
}

CheckRun run_suite(const std::string& suite, const RunConfig& c) {
  const bool q = c.quick;
  CheckRun run;
  if (suite == "monotone") {
    return q ? check_monotone_lemmas({6, 12}, {0, 32}, 2000) : check_monotone_lemmas({6, 24}, {0, 64}, 10000);
  }
  if (suite == "tailsum") {
    TailSumOptions o;
    if (q) o = TailSumOptions{{7, 10}, {1, 30}, 2000, 2000};
    return check_tail_sum(o);
  }
  if (suite == "nem") {
    NemOptions o;
    if (q) {
      o.n = {6, 9};
      o.degrees = {0, 1, 2, 4, 8, 16, 32, 64};
      o.scan_points = 20000;
    }
    return check_nem_constant(o);
  }
  if (suite == "designmono") {
    DesignMonotoneOptions o;
    if (q) {
      o.n = {6, 12};
      o.s = {0, 20, 2};
    }
    return check_design_monotone(o);
  }
  if (suite == "roots") {
    return q ? check_root_estimates({6, 32}, {2, 40}) : check_root_estimates();
  }
  if (suite == "sandwich-codes") {
    SandwichCodeOptions o;
    o.solve = solve_options(c);
    return sandwich_codes(o);
  }
  if (suite == "sandwich-designs") {
    SandwichDesignOptions o;
    o.solve = solve_options(c);
    if (!c.convention.empty()) o.convention = parse_convention(c.convention);
    if (q) {
      o.n = {6};
      o.k = {4, 8, 16};
    }
    return sandwich_designs(o);
  }
  for (const auto& s : kSuites) {
    if (s != "all") append(run, run_suite(s, c));
  }
  return run;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_lp_flags(c);
  if (c.format != "json") throw UsageError("verify writes JSON lines; --format csv is not supported");
  const CheckRun run = run_suite(c.suite, c);
  write_text(c.out, check_run_jsonl(run), out);
  for (const auto& r : run.records) {
    if (!r.summary) continue;
    const char* status = r.holds ? "holds" : (r.asserted ? "FAILS" : "finding");
    err << r.id << ": " << status << " (worst margin " << format_real(r.worst_margin) << ", "
        << r.cases << " case(s))\n";
  }
  const bool passed = run.passed();
  err << "verify " << c.suite << ": " << (passed ? "passed" : "failed") << '\n';
  return passed ? kOk : kChecksFailed;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.jobs < 1) throw UsageError("--jobs must be positive");
  std::ifstream in(c.spec_path, std::ios::binary);
  if (!in) throw UsageError("cannot read sweep spec " + c.spec_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json raw;
  try {
    raw = Json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  const SweepSpec spec = parse_sweep_spec(raw);
  ResultCache cache(resolve_cache_dir(c.cache_dir, kDefaultSweepCache));
  const SweepOutput result = run_sweep(spec, &cache, c.jobs);

  if (c.format == "csv") {
    write_text(c.out, to_csv(result.table), out);
  } else {
    Json j = command_header(c);
    j["spec"] = raw;
    Json rows = Json::array();
    for (const auto& r : result.table.rows) {
      Json row;
      for (std::size_t i = 0; i < r.size(); ++i) row[result.table.header[i]] = r[i];
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["slopes"] = result.slopes;
    write_text(c.out, j.dump(2) + '\n', out);
  }

  if (!c.out.empty()) {
    for (const auto& [name, table] : result.extracts) {
      write_text(c.out + "." + name + ".csv", to_csv(table), out);
    }
    if (!result.slopes.empty()) {
      std::string lines;
      for (const auto& s : result.slopes) lines += s.dump() + '\n';
      write_text(c.out + ".slopes.jsonl", lines, out);
    }
  } else {
    if (!result.extracts.empty()) err << "extracts are written next to --out; none requested\n";
    for (const auto& s : result.slopes) err << s.dump() << '\n';
  }
  err << "sweep: " << result.succeeded << " ok, " << result.failed << " failed, "
      << result.cache_hits << " cache hit(s)\n";
  for (std::size_t i = 0; i < result.errors.size(); ++i) {
    if (!result.errors[i].empty()) err << "row " << i + 1 << ": " << result.errors[i] << '\n';
  }
  return result.succeeded > 0 ? kOk : kLpFailure;
}

}  // namespace

Json run_config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (c.n) j["n"] = *c.n;
  if (!c.theta.empty()) j["theta"] = c.theta;
  if (c.k) j["k"] = *c.k;
  if (c.command == "codes" || c.command == "designs" || c.command == "verify") {
    j["m"] = c.m ? Json(*c.m) : Json("auto");
    j["m_max"] = c.m_max;
    j["cut_tol"] = format_real(c.cut_tol);
    j["grid"] = c.grid;
  }
  if (c.command == "designs" || c.command == "verify") {
    j["convention"] = c.convention.empty() ? Json(nullptr) : Json(c.convention);
  }
  if (c.command == "verify") {
    j["suite"] = c.suite;
    j["quick"] = c.quick;
  }
  if (c.command == "sweep") j["spec"] = c.spec_path;
  j["format"] = c.format;
  j["log_base"] = Json{{"exponents", "2"}, {"log10_fields", "10"}};
  return j;
}

std::string run_config_hash(const RunConfig& c) { return hex64(fnv1a(run_config_json(c).dump())); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delsarte LP bounds for spherical codes and designs", "delsarte-cli"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", c.out, "Write output to this file instead of standard output");
  };
  auto add_lp = [&](CLI::App* sub) {
    sub->add_option("--m", c.m, "Fixed polynomial degree (default: doubling sweep)");
    sub->add_option("--m-max", c.m_max, "Largest degree of the doubling sweep")->capture_default_str();
    sub->add_option("--cut-tol", c.cut_tol, "Cutting-plane violation tolerance")->capture_default_str();
    sub->add_option("--grid", c.grid, "Initial constraint points (0: 4m+1 Chebyshev points)")
        ->capture_default_str();
  };
  auto add_cache = [&](CLI::App* sub, const std::string& fallback) {
    sub->add_option("--cache-dir", c.cache_dir, "Result cache directory (default: $CACHE_DIR, else " + fallback + ")");
    sub->add_option("--jobs", c.jobs, "Concurrent solves")->capture_default_str();
  };
  const auto convention_check = CLI::IsMember({"strict", "shifted"});

  auto* codes = app.add_subcommand("codes", "Code LP bracket and code-side formulas");
  codes->add_option("--n", c.n, "Dimension")->required();
  codes->add_option("--theta", c.theta, "Minimal angle with unit suffix, e.g. 60deg")->required();
  add_lp(codes);
  add_cache(codes, "none");
  add_output(codes);

  auto* designs = app.add_subcommand("designs", "Design LP brackets and design-side formulas");
  designs->add_option("--n", c.n, "Dimension")->required();
  designs->add_option("--k", c.k, "Design strength")->required();
  designs->add_option("--convention", c.convention, "strict or shifted (default: both)")
      ->check(convention_check);
  add_lp(designs);
  add_cache(designs, "none");
  add_output(designs);

  auto* formula = app.add_subcommand("formula", "Closed-form bound expressions only");
  formula->add_option("--n", c.n, "Dimension")->required();
  formula->add_option("--theta", c.theta, "Minimal angle with unit suffix");
  formula->add_option("--k", c.k, "Design strength");
  add_output(formula);

  auto* verify = app.add_subcommand("verify", "Numerical lemma and sandwich checks (JSON lines)");
  verify->add_option("suite", c.suite, "Suite to run")->required()->check(CLI::IsMember(kSuites));
  verify->add_flag("--quick", c.quick, "Reduced parameter ranges");
  verify->add_option("--convention", c.convention, "Design convention for sandwich-designs")
      ->check(convention_check);
  add_lp(verify);
  add_output(verify);

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep from a JSON spec (cached)");
  sweep->add_option("spec", c.spec_path, "Sweep specification file")->required();
  add_cache(sweep, ".delsarte-cache");
  add_output(sweep);
  c.format = "csv";

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  if (c.command != "sweep" && chosen->count("--format") == 0) c.format = "json";

  try {
    if (c.command == "codes") return cmd_codes(c, out, err);
    if (c.command == "designs") return cmd_designs(c, out, err);
    if (c.command == "formula") return cmd_formula(c, out, err);
    if (c.command == "verify") return cmd_verify(c, out, err);
    return cmd_sweep(c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegreeLimitError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BoundError& e) {
    err << "LP failure: " << e.what() << '\n';
    return kLpFailure;
  } catch (const NumericalError& e) {
    err << "LP failure: " << e.what() << '\n';
    return kLpFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace delsarte::cli
