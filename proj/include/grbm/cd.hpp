#pragma once

#include <Eigen/Core>
#include <span>

#include "grbm/model.hpp"
#include "grbm/rng.hpp"

namespace grbm {

// Log-likelihood gradient estimate; SGD ascends, theta += lr * d_theta.
struct Gradients {
    Eigen::VectorXd db;
    Eigen::VectorXd dc;
    Eigen::MatrixXd dW;
};

// CD-k over a batch (rows are samples). Each sample runs its own Gibbs chain
// on its own substream, so results do not depend on how the batch is split
// up: stream for row n is rng.substream(sample_ids[n]) when ids are given,
// rng.substream(n) otherwise. The negative phase uses the sampled k-step
// reconstruction v' but keeps the final hidden term as probabilities.
Gradients cd_gradients(const RbmModel& model,
                       const Eigen::Ref<const Eigen::MatrixXd>& batch, int k,
                       RngStream rng, std::span<const long> sample_ids = {});

// Mean per-pixel cross-entropy of the deterministic one-step mean-field
// reconstruction sigmoid(b + W sigmoid(c + W'v)).
double reconstruction_cross_entropy(const RbmModel& model,
                                    const Eigen::Ref<const Eigen::MatrixXd>& v_rows);

}  // namespace grbm
