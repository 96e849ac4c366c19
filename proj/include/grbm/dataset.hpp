#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grbm/rng.hpp"

namespace grbm {

// Binarized sample matrix, one sample per row. Entries are exactly 0.0/1.0.
struct Dataset {
    Eigen::MatrixXd samples;  // N x I
    std::optional<std::vector<int>> labels;
    std::string name;
    std::string source_digest;

    long size() const { return static_cast<long>(samples.rows()); }
    int features() const { return static_cast<int>(samples.cols()); }
    int num_classes() const;
};

// Real-valued intermediate between a raw loader and binarization.
struct RealDataset {
    Eigen::MatrixXd samples;  // N x D, pixel values scaled to [0,1]
    std::optional<std::vector<int>> labels;
    std::string name;
    std::string source_digest;

    long size() const { return static_cast<long>(samples.rows()); }
    int features() const { return static_cast<int>(samples.cols()); }
};

// IDX image/label pair (MNIST layout). Pixels scaled to [0,1].
RealDataset load_idx(const std::string& images_path, const std::string& labels_path);

// Writes samples back to the IDX byte format (values rescaled to 0..255).
void write_idx(const std::string& images_path, const std::string& labels_path,
               const Eigen::Ref<const Eigen::MatrixXd>& samples,
               const std::vector<int>& labels, int rows, int cols);

// CIFAR-10 binary batches: 3073-byte records, 1 label byte + 3072 pixels.
RealDataset load_cifar10(const std::vector<std::string>& batch_paths);

void write_cifar10(const std::string& path,
                   const Eigen::Ref<const Eigen::MatrixXd>& samples,
                   const std::vector<int>& labels);

// Entry = 1 iff value > threshold.
Eigen::MatrixXd binarize(const Eigen::Ref<const Eigen::MatrixXd>& samples,
                         double threshold);
Dataset binarize(const RealDataset& data, double threshold);

// All 2^(n+1)-2 distinct n x n patterns with constant rows or constant
// columns, in a fixed order (horizontals by row mask, then the vertical
// patterns not already emitted, by column mask).
Dataset bars_and_stripes(int n);

// Independent draws from the uniform bars-and-stripes distribution.
Dataset bars_and_stripes(int n, long num_samples, RngStream rng);

// Orientation-labeled variant for the two-class task: bars = 0, stripes = 1.
// The two uniform patterns are ambiguous and excluded.
Dataset bars_and_stripes_labeled(int n);

// Binary dataset cache. Magic "GDAT", u32 version=1, u64 N, u32 I,
// u8 has_labels, bits packed row-major LSB-first, then u32 labels.
void save_dataset(const std::string& path, const Dataset& data);
Dataset load_dataset(const std::string& path);

// Deterministic per-class (or plain, when unlabeled) subsample of n rows,
// keyed by seed; row order follows the source dataset.
Dataset stratified_subset(const Dataset& data, long n, std::uint64_t seed);

}  // namespace grbm
