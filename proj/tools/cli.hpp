#pragma once

#include "nichols/report.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nichols::cli {

inline constexpr int kSchemaVersion = 1;

// Exit-code contract.
enum ExitCode : int { kPass = 0, kFail = 1, kResourceLimit = 2, kConfigError = 3 };

struct RunConfig {
  std::string command;
  std::vector<std::string> targets;  // verify targets, or the lifting kind
  std::string algebra;               // hilbert and basis
  std::string group = "env:24,12";
  std::string q1 = "w";
  std::optional<std::string> specialize;  // "q1=<root>"
  int max_degree = -1;                    // -1 selects the per-command default
  int a_degree = 3;
  int jobs = 1;
  uint64_t seed = 1;
  std::string lambda = "0,0,0,0";
  double budget = 30;
  std::optional<double> time_limit;
  std::string out;
  bool json = false;
  bool timings = false;

  nlohmann::json to_json() const;
};

struct RunResult {
  std::vector<CheckReport> reports;
  nlohmann::json extra;  // command-specific payload (basis words, series)
};

// Worst status over the reports: any Fail gives 1, else any Unknown gives 2.
int exit_code(const std::vector<CheckReport>& reports);

// The versioned document written by --out and --json. Runtimes are dropped
// unless config.timings, so equal configs give byte-identical documents.
nlohmann::json document(const RunConfig& config, const RunResult& result);

// Aligned plain-text rendering of the reports.
std::string text_table(const RunConfig& config, const RunResult& result);

// Executes a parsed config. Throws ConfigError, ParseError or NotAdmissible
// for invalid input.
RunResult execute(const RunConfig& config);

// Runs `tasks` on `jobs` workers; results keep task order.
std::vector<CheckReport> run_pool(const std::vector<std::function<CheckReport()>>& tasks, int jobs);

// Full entry point: parse argv, execute, print, write --out, return the exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nichols::cli
