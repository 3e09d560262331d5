#pragma once

// Command-line front end. run_cli takes the arguments without the program
// name and writes to the given streams so the tool can be driven in-process.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "delsarte/report.hpp"

namespace delsarte::cli {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kUsage = 2,
  kLpFailure = 3,
  kInternal = 4,
};

/// Everything a command was invoked with.
struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::string theta;  // as written, with unit suffix
  std::optional<int> k;
  std::optional<int> m;
  int m_max = 128;
  std::string convention;  // empty: both (designs)
  double cut_tol = 1e-10;
  int grid = 0;
  int jobs = 1;
  std::string cache_dir;
  std::string out;
  std::string format = "json";
  std::string suite;
  bool quick = false;
  std::string spec_path;
};

/// The fields that determine a command's results (not where they go).
Json run_config_json(const RunConfig& config);
std::string run_config_hash(const RunConfig& config);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace delsarte::cli
