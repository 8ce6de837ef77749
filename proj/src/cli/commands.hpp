#pragma once

#include "config.hpp"

#include <filesystem>
#include <string>

namespace flq::cli {

struct CommandOptions {
  std::filesystem::path out_dir;  // resolved output directory
  int workers = 0;                // 0: FLQ_NUM_WORKERS or 1
};

// Each command writes its artifacts under opts.out_dir and returns the
// process exit status (0 ok, 1 verify failed, sweep propagates the worst).
int run_decompose(const RunConfig& cfg, const CommandOptions& opts);
int run_evolve(const RunConfig& cfg, const CommandOptions& opts);
int run_steady(const RunConfig& cfg, const CommandOptions& opts);
int run_verify(const RunConfig& cfg, const CommandOptions& opts);
int run_sweep(const RunConfig& cfg, const CommandOptions& opts,
              const std::filesystem::path& base_dir);

int dispatch(const std::string& command, const RunConfig& cfg,
             const CommandOptions& opts, const std::filesystem::path& base_dir);

}  // namespace flq::cli
