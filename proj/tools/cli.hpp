// Command-line driver. Split from main() so tests can call it in-process.
#pragma once

#include "vk/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vk::cli {

inline const std::vector<std::string> kCommands = {"eval",    "oracle", "ellipse",    "classify", "scan",
                                                   "levelset", "robin", "indicatrix", "measure",  "plot"};

struct RunConfig {
  Config config;
  std::string command;
  std::string output_dir = ".";
  int workers = 0;  // 0 keeps the OpenMP default
  std::uint64_t seed = 0;
};

/// Validates section and key names, then resolves [run] settings.
/// VK_OUTPUT_DIR and VK_WORKERS take precedence over the config file.
RunConfig make_run_config(Config cfg, const std::string& command);

/// Executes one command. Records go to stdout and to the output directory.
/// Returns 0, or 2 for configuration and domain errors, 3 for numeric failures.
int run(const RunConfig& rc, std::ostream& out, std::ostream& err);

/// Parses argv and calls run().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vk::cli
