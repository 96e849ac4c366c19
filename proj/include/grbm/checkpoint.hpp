#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "grbm/model.hpp"

namespace grbm {

// Hidden-to-class softmax layer trained on top of the RBM features.
struct SoftmaxHead {
    Eigen::MatrixXd U;  // J x K
    Eigen::VectorXd d;  // K

    int classes() const { return static_cast<int>(d.size()); }
};

struct Checkpoint {
    RbmModel model;
    std::uint64_t step = 0;  // batch updates applied so far
    std::optional<SoftmaxHead> head;
};

// Binary container: magic "GRBM", u32 version=1, u32 I, u32 J, b, c,
// W row-major, u64 step, all little-endian f64. A classifier head is an
// optional trailing "HEAD" section: u32 K, U row-major (J*K), d (K).
void save_checkpoint(const std::string& path, const RbmModel& model, std::uint64_t step);
void append_head(const std::string& path, const SoftmaxHead& head);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace grbm
