#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regspec/config.hpp"

namespace regspec {

constexpr const char* kLibraryVersion = "1.0.0";

struct RunRecord {
    std::string kind;
    std::uint64_t config_hash = 0;
    std::vector<std::uint64_t> trial_seeds;  ///< derive_seed(master_seed, t)
    std::vector<std::string> outputs;        ///< artifact file names, sorted
    long long exact_samples = 0;
    long long approximate_samples = 0;
    double wall_seconds = 0.0;  ///< recorded in run.log only
    std::string version = kLibraryVersion;
};

/// Runs one experiment and writes its artifacts plus run.json (deterministic)
/// and run.log (wall clock) into out_dir. Artifacts are staged in memory and
/// committed with temp-file renames only after every trial succeeded; if the
/// commit itself fails, files already renamed by this run are removed.
/// Throws ConfigError for invalid configurations and other Error types for
/// kernel failures.
RunRecord run(const ExperimentConfig& config, const std::string& out_dir);

/// Process exit codes of the command-line tool.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitKernel = 3;

}  // namespace regspec
