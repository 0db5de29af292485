#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "yeastloc/pipeline.hpp"

namespace yeastloc::cli {

// `key = value` run configuration. Keys:
//   feature_order   comma-separated feature names (may be empty)
//   hidden_sizes    comma-separated positive integers
//   learning_rate, momentum, max_epochs, mse_threshold, shuffle (true/false)
//   seed            sets both mlp_seed and train_seed
//   mlp_seed, train_seed
//   train_subsets, test_subsets   comma-separated fold indices
//   pseudo_count
struct RunConfig {
    PipelineConfig pipeline;
    bool feature_order_set = false;
};

// Throws ConfigError for unknown keys, malformed values, or values violating
// the owning type's invariants.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace yeastloc::cli
