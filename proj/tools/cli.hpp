#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace harmonic_aaa::cli {

struct RunReport {
  std::string command;
  std::size_t samples = 0;
  std::size_t smooth_degree = 0;
  std::size_t total_poles = 0;
  std::size_t kept_poles = 0;
  double boundary_max_error = 0.0;
  std::vector<std::pair<std::string, std::string>> extra;  // command-specific lines
  double wall_time_s = 0.0;
  std::vector<std::string> outputs;
};

void print_report(std::ostream& out, const RunReport& report);

enum ExitCode { kOk = 0, kDataError = 1, kUsageError = 2 };

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmonic_aaa::cli
