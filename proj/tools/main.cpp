#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"thetaper: (theta, T)-periodic Fourier calculus and operator diagnostics"};
  std::string config, positional, out_dir = ".";
  int threads = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config, "Job config (JSON)");
  app.add_option("config_file", positional, "Job config (JSON), alternative to --config");
  app.add_option("--out-dir", out_dir, "Directory for reports and tables");
  app.add_option("--threads", threads, "Worker threads for per-mode solves")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for the randomized verify suite");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : thetaper::cli::kValidation;
  }
  if (config.empty()) config = positional;
  if (config.empty()) {
    std::cerr << "validation error: no config given (use --config <path>)\n";
    return thetaper::cli::kValidation;
  }
  thetaper::cli::JobArgs args;
  args.config = config;
  args.out_dir = out_dir;
  args.threads = threads;
  args.seed = seed;
  return thetaper::cli::run_job(args, std::cerr);
}
