#pragma once

#include "d1lc/generate.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace d1lc::cli {

/// Exit codes: 0 success, 1 invalid coloring, 2 unreadable or malformed
/// input or configuration, 3 any other failure.
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitFailure = 3;

struct RunOptions {
  std::string graph;
  std::string palettes;
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> settings;  // applied after the file
  std::string output;  // coloring file
  std::string report;  // report file
  bool no_partition = false;
};

struct GenerateOptions {
  GenerateParams params;
  std::string graph_out;
  std::string palettes_out;
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& graph, const std::string& palettes, const std::string& coloring, std::ostream& out,
               std::ostream& err);
int cmd_report(const std::string& report, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches to a subcommand.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace d1lc::cli
