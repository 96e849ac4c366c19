#pragma once

#include <stdexcept>
#include <string>

namespace grbm {

// Shape disagreement between a model and its inputs (vectors, datasets,
// checkpoints). The message names the offending operand.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact enumeration requested on a model too large for it.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or unreadable input data (IDX, CIFAR-10, GDAT, checkpoints).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad key or value in a run configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation requires labels the dataset does not carry.
struct LabelsError : std::runtime_error {
    explicit LabelsError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace grbm
