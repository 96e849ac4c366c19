#pragma once

#include <string>

#include "grbm/adaptive.hpp"
#include "grbm/train.hpp"

namespace grbm {

// Everything a training run needs, parsed from a flat `key = value` file
// (# starts a comment). Keys are the field names below.
struct RunConfig {
    TrainConfig train;
    AdaptiveConfig adaptive;
    bool adaptive_enabled = true;
    int initial_hidden = 10;

    // mnist | cifar10 | bars_and_stripes | gdat
    std::string dataset = "bars_and_stripes";
    std::string data_dir;
    std::string gdat_path;
    int bas_side = 4;
    long bas_samples = 0;  // 0 = exhaustive
    double binarize_threshold = 0.5;
    double zca_epsilon = 0.1;
    long subset = 0;  // 0 = full dataset
    int checkpoint_every = 0;

    void validate() const;
};

RunConfig parse_config_file(const std::string& path);

// Parses one `key = value` or `key=value` assignment into cfg.
// Unknown keys and unparseable values raise ConfigError naming the key.
void apply_assignment(RunConfig& cfg, const std::string& assignment);

}  // namespace grbm
