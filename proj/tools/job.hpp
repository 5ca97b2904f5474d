// Config-driven job runner behind the thetaper executable.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace thetaper::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kNumeric = 3, kIo = 4 };

struct JobArgs {
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  int threads = 1;
  std::optional<std::uint64_t> seed;
};

/// Runs one job; diagnostics go to `err`. Returns the process exit code.
int run_job(const JobArgs& args, std::ostream& err);

}  // namespace thetaper::cli
