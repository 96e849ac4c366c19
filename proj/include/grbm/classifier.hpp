#pragma once

#include "grbm/checkpoint.hpp"
#include "grbm/dataset.hpp"
#include "grbm/model.hpp"

namespace grbm {

// Feature map fed to the softmax head: hidden unit probabilities.
Eigen::VectorXd features(const RbmModel& model, const BinaryVector& v);

struct HeadTrainConfig {
    int epochs = 100;
    double lr = 0.1;
    int batch_size = 100;
    bool fine_tune = false;  // also backprop into W and c
    std::uint64_t seed = 0;
};

// Mean cross-entropy of the softmax head over the given rows.
double head_loss(const RbmModel& model, const SoftmaxHead& head,
                 const Eigen::Ref<const Eigen::MatrixXd>& v_rows,
                 const std::vector<int>& labels);

struct HeadGradients {
    Eigen::MatrixXd dU;
    Eigen::VectorXd dd;
    Eigen::VectorXd dc;  // through the sigmoid feature map
    Eigen::MatrixXd dW;
};

// Loss gradients for every trainable tensor (descent direction: theta -= lr * d).
HeadGradients head_gradients(const RbmModel& model, const SoftmaxHead& head,
                             const Eigen::Ref<const Eigen::MatrixXd>& v_rows,
                             const std::vector<int>& labels);

// Minibatch gradient descent on the cross-entropy. Mutates the RBM only
// when cfg.fine_tune is set.
SoftmaxHead train_head(RbmModel& model, const Dataset& data, const HeadTrainConfig& cfg);

// Fraction of samples whose argmax score matches the label; score ties
// resolve to the lowest class index.
double accuracy(const RbmModel& model, const SoftmaxHead& head, const Dataset& data);

}  // namespace grbm
