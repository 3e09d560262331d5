// Acceptance runner: evaluates each criterion and prints PASS/FAIL per line.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "delsarte/app.hpp"
#include "delsarte/delsarte_lp.hpp"
#include "delsarte/errors.hpp"
#include "delsarte/jacobi.hpp"
#include "delsarte/lemmas.hpp"
#include "delsarte/report.hpp"
#include "oracles.hpp"

using namespace delsarte;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

/// Accumulates failed conditions for one criterion.
class Ledger {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string describe(const CheckReport& r) {
  std::string text = r.id + " " + (r.holds ? "holds" : "fails") + " (" + std::to_string(r.cases) + " cases, " +
                     std::to_string(r.skipped) + " skipped), worst margin " + num(r.worst_margin);
  if (!r.worst_case.empty()) {
    text += " at";
    for (const auto& [name, v] : r.worst_case) text += " " + name + "=" + num(v);
  }
  if (r.constant) text += ", " + r.constant_name + " = " + num(*r.constant);
  for (const auto& [name, v] : r.metrics) text += ", " + name + " = " + num(v);
  return text;
}

void expect_summary(Ledger& l, const CheckRun& run, const std::string& id) {
  const CheckReport* r = run.find(id);
  if (r == nullptr) {
    l.expect(false, "missing summary " + id);
    return;
  }
  l.note(describe(*r));
  l.expect(r->holds, describe(*r));
}

void criterion1(Ledger& l) {
  double worst_one = 0.0;
  double worst_norm = 0.0;
  const int smax = 200;
  const auto g = oracle::gauss_legendre(600);
  for (int n = 3; n <= 32; ++n) {
    const auto f = PolyFamily::sphere(n);
    const double alpha = (n - 3) / 2.0;
    std::vector<long double> quad(smax + 1, 0.0L);
    const double half = kPi / 2.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double phi = half * (g.x[i] + 1.0);
      const double w = g.w[i] * half * std::pow(std::sin(phi), 2.0 * alpha + 1.0);
      const auto r = oracle::normalized_upto(alpha, smax, std::cos(phi));
      for (int s = 0; s <= smax; ++s) quad[s] += w * r[s] * r[s];
    }
    for (int s = 0; s <= smax; ++s) {
      const double log_one = oracle::log_rising((n - 1) / 2.0, s);
      const LogReal one = value_at_one(f, s);
      const double e1 = std::fabs(std::expm1(one.log_abs() - log_one));
      worst_one = std::max(worst_one, e1);
      l.expect(one.sign() == 1, "value_at_one sign at n=" + std::to_string(n));
      const double log_norm = std::log(static_cast<double>(quad[s])) + 2.0 * log_one;
      const double e2 = std::fabs(std::expm1(norm_sq(f, s).log_abs() - log_norm));
      worst_norm = std::max(worst_norm, e2);
    }
  }
  l.note("value_at_one worst relative error " + num(worst_one));
  l.note("norm_sq worst relative error against quadrature " + num(worst_norm));
  l.expect(worst_one <= 1e-12, "value_at_one relative error " + num(worst_one));
  l.expect(worst_norm <= 1e-9, "norm_sq relative error " + num(worst_norm));
  const double base = norm_sq(PolyFamily::sphere(5), 0).to_double();
  l.expect(std::fabs(base - 4.0 / 3.0) <= 1e-12, "norm_sq(5, 0) = " + num(base));
}

void criterion2(Ledger& l) {
  for (int n : {9, 16, 25, 36}) {
    const double x = max_root(PolyFamily::sphere(n), 2);
    l.expect(std::fabs(x - 1.0 / std::sqrt(n)) <= 1e-10, "max_root(" + std::to_string(n) + ", 2) = " + num(x));
  }
  const double x3 = max_root(PolyFamily::sphere(25), 3);
  l.expect(std::fabs(x3 - 1.0 / 3.0) <= 1e-10, "max_root(25, 3) = " + num(x3));
  const CheckRun run = check_root_estimates({6, 32}, {2, 100});
  expect_summary(l, run, "root_gap_bound");
  const CheckReport* center = run.find("root_center_estimate");
  l.expect(center != nullptr, "root center validity map missing");
  if (center != nullptr) {
    int failing = 0;
    int largest_failing_s = 0;
    for (const auto& r : run.records) {
      if (r.id != "root_center_estimate" || r.summary || r.holds) continue;
      ++failing;
      for (const auto& [name, v] : r.worst_case) {
        if (name == "s") largest_failing_s = std::max(largest_failing_s, static_cast<int>(v));
      }
    }
    l.note("root center estimate (finding): " + std::to_string(failing) + " of " +
           std::to_string(center->cases) + " cases fail, largest failing s = " +
           std::to_string(largest_failing_s));
  }
}

void criterion3(Ledger& l) {
  int solves = 0;
  auto solve = [&](const CodeProblem& p) {
    const LPBracket b = code_bound(p);
    ++solves;
    l.expect(b.relaxed_value <= b.certified_value,
             "relaxed > certified at n=" + std::to_string(p.n) + " m=" + std::to_string(p.m));
    return b;
  };
  for (int n : {3, 4, 5, 6, 8}) {
    for (int m : {2, 4, 9}) {
      const double v = solve(CodeProblem{n, kPi / 2, m}).certified_value;
      l.expect(std::fabs(v - 2.0 * n) <= 1e-5,
               "code_bound(" + std::to_string(n) + ", 90deg, m=" + std::to_string(m) + ") = " + num(v));
    }
  }
  for (int m : {11, 12, 16}) {
    const double v = solve(CodeProblem{8, kPi / 3, m}).certified_value;
    l.note("code_bound(8, 60deg, m=" + std::to_string(m) + ") = " + format_real(v));
    l.expect(std::fabs(v - 240.0) <= 1e-3, "E8 value at m=" + std::to_string(m) + " is " + num(v));
  }
  for (int n : {4, 5, 7}) {
    for (double deg : {45.0, 60.0, 75.0}) {
      for (int m : {6, 12}) {
        const CodeProblem p{n, deg * kPi / 180.0, m};
        try {
          solve(p);
        } catch (const BoundError&) {
        }
      }
    }
  }
  l.note(std::to_string(solves) + " code solves checked for relaxed <= certified");
}

void criterion4(Ledger& l) {
  for (int n = 5; n <= 10; ++n) {
    const LPBracket b = design_bound(DesignProblem{n, 2, 2, Convention::shifted});
    l.expect(b.certified_value >= n + 1 - 1e-5, "shifted k=2 at n=" + std::to_string(n) + ": " +
                                                    num(b.certified_value));
    const LPBracket one = design_bound(DesignProblem{n, 1, 1, Convention::shifted});
    l.expect(one.certified_value >= 2.0 - 1e-9, "shifted k=1 at n=" + std::to_string(n) + ": " +
                                                    num(one.certified_value));
  }
  int pairs = 0;
  for (int n : {3, 4, 6, 9, 12}) {
    for (int k : {1, 2, 3, 4, 6, 8}) {
      for (int m : {k, k + 2, 2 * k + 1}) {
        const double strict = design_bound(DesignProblem{n, k, m, Convention::strict}).certified_value;
        const double shifted = design_bound(DesignProblem{n, k, m, Convention::shifted}).certified_value;
        ++pairs;
        l.expect(strict <= shifted + 1e-8, "strict > shifted at (n, k, m) = (" + std::to_string(n) + ", " +
                                               std::to_string(k) + ", " + std::to_string(m) + ")");
      }
    }
  }
  l.note(std::to_string(pairs) + " (n, k, m) triples checked for strict <= shifted");
}

void criterion5(Ledger& l) {
  const CheckRun mono = check_monotone_lemmas({6, 24}, {0, 64}, 10000, false);
  expect_summary(l, mono, "monotone_weighted_square");
  expect_summary(l, mono, "monotone_weighted");
  const CheckRun tail = check_tail_sum(TailSumOptions{}, false);
  expect_summary(l, tail, "ratio_decreasing");
  expect_summary(l, tail, "ratio_step_formula");
  expect_summary(l, tail, "tail_sum");
  DesignMonotoneOptions d;
  d.markov_pairs = 50;
  const CheckRun design = check_design_monotone(d, false);
  expect_summary(l, design, "design_monotone");
  expect_summary(l, design, "gegenbauer_identity");
  expect_summary(l, design, "markov_ordering");
  if (const CheckReport* ident = design.find("gegenbauer_identity")) {
    for (const auto& [name, v] : ident->metrics) {
      if (name == "max_relative_residual") l.expect(v <= 1e-9, "identity residual " + num(v));
    }
  }
  if (const CheckReport* mk = design.find("markov_ordering")) {
    l.expect(mk->cases >= 50, "markov pairs " + std::to_string(mk->cases));
  }
}

void criterion6(Ledger& l) {
  const CheckRun run = sandwich_codes(SandwichCodeOptions{}, false);
  expect_summary(l, run, "sandwich_codes_lower");
  expect_summary(l, run, "sandwich_codes_exponent");
  expect_summary(l, run, "sandwich_codes_exponent_decreasing");
}

void criterion7(Ledger& l) {
  const CheckRun run = sandwich_designs(SandwichDesignOptions{}, false);
  expect_summary(l, run, "sandwich_designs_yudin");
  expect_summary(l, run, "sandwich_designs_upper");
  expect_summary(l, run, "sandwich_designs_slope");
}

struct Captured {
  int code;
  std::string out;
};

Captured run_cli_capture(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void criterion8(Ledger& l) {
  const fs::path dir = fs::temp_directory_path() / ("delsarte-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"codes", "--n", "8", "--theta", "60deg"},
      {"codes", "--n", "5", "--theta", "1.2rad", "--format", "csv"},
      {"designs", "--n", "6", "--k", "4"},
      {"formula", "--n", "10", "--theta", "50deg", "--k", "6"},
      {"verify", "roots", "--quick"},
      {"verify", "monotone", "--quick"},
  };
  for (const auto& c : commands) {
    const Captured a = run_cli_capture(c);
    const Captured b = run_cli_capture(c);
    std::string joined;
    for (const auto& part : c) joined += part + " ";
    l.expect(a.code == b.code && a.out == b.out && !a.out.empty(), "rerun differs: " + joined);
  }

  const fs::path spec = dir / "spec.json";
  {
    std::ofstream out(spec);
    out << R"({"kind": "codes", "n": [4, 6], "theta": ["60deg", "75deg"], "m_max": 32,
               "extracts": [["theta", "certified_value"]]})";
  }
  const std::string cache = (dir / "cache").string();
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  const std::string c = (dir / "c.csv").string();
  const int ra = cli::run_cli({"sweep", spec.string(), "--out", a, "--cache-dir", cache, "--jobs", "2"},
                              std::cout, std::cerr);
  const int rb = cli::run_cli({"sweep", spec.string(), "--out", b, "--cache-dir", cache}, std::cout, std::cerr);
  const int rc = cli::run_cli({"sweep", spec.string(), "--out", c, "--cache-dir", (dir / "cache2").string()},
                              std::cout, std::cerr);
  l.expect(ra == 0 && rb == 0 && rc == 0, "sweep exit codes");
  l.expect(!slurp(a).empty() && slurp(a) == slurp(b) && slurp(a) == slurp(c),
           "sweep output differs between fresh and cached runs");
  l.expect(slurp(a + ".n4.theta_vs_certified_value.csv") == slurp(b + ".n4.theta_vs_certified_value.csv"),
           "extract output differs on rerun");

  ResultCache store(dir / "roundtrip");
  LpRequest r;
  r.problem = CodeProblem{6, 1.3, 10};
  r.auto_degree = false;
  bool hit = false;
  const Json first = cached_solve(r, &store, &hit);
  l.expect(!hit, "fresh cache reported a hit");
  const Json second = cached_solve(r, &store, &hit);
  l.expect(hit && second.dump() == first.dump(), "cache round trip differs");
  {
    std::ofstream out(store.entry_path(request_key(r)), std::ios::trunc);
    out << "{\"version\": \"v1\"";
  }
  const Json third = cached_solve(r, &store, &hit);
  l.expect(!hit && store.corrupt() == 1 && third.dump() == first.dump(), "corrupt entry not recomputed");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Ledger&)>>> criteria{
      {"1 Jacobi engine exactness", criterion1},
      {"2 Root correctness", criterion2},
      {"3 Code LP oracle values", criterion3},
      {"4 Design LP oracle values", criterion4},
      {"5 Lemma suite", criterion5},
      {"6 Sandwich, codes", criterion6},
      {"7 Sandwich, designs", criterion7},
      {"8 Determinism and round-trip", criterion8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Ledger l;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(l);
    } catch (const std::exception& e) {
      l.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << name << ": " << (l.ok() ? "PASS" : "FAIL") << " (" << num(secs) << " s)\n";
    for (const auto& n : l.notes()) std::cout << "    " << n << '\n';
    for (const auto& f : l.failures()) std::cout << "    FAILED: " << f << '\n';
    std::cout.flush();
    if (!l.ok()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
