#pragma once

#include <Eigen/Core>

namespace grbm {

// Zero-phase whitening fitted on real-valued samples (rows).
struct ZcaTransform {
    Eigen::VectorXd mean;
    Eigen::MatrixXd whiten;  // D x D, symmetric
    double epsilon = 0.0;

    Eigen::MatrixXd apply(const Eigen::Ref<const Eigen::MatrixXd>& samples) const;

    // Inverse transform back to centered coordinates plus the mean.
    Eigen::MatrixXd invert(const Eigen::Ref<const Eigen::MatrixXd>& whitened) const;
};

// Mean-centers, eigendecomposes the covariance C = U L U', and forms
// U (L + eps I)^{-1/2} U'.
ZcaTransform zca_fit(const Eigen::Ref<const Eigen::MatrixXd>& samples, double epsilon);

}  // namespace grbm
