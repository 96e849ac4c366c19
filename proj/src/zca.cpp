#include "grbm/zca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace grbm {

Eigen::MatrixXd ZcaTransform::apply(const Eigen::Ref<const Eigen::MatrixXd>& samples) const {
    return (samples.rowwise() - mean.transpose()) * whiten;
}

Eigen::MatrixXd ZcaTransform::invert(const Eigen::Ref<const Eigen::MatrixXd>& whitened) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(whiten);
    Eigen::VectorXd inv = es.eigenvalues().unaryExpr(
        [](double l) { return l > 0.0 ? 1.0 / l : 0.0; });
    Eigen::MatrixXd unwhiten =
        es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
    return (whitened * unwhiten).rowwise() + mean.transpose();
}

ZcaTransform zca_fit(const Eigen::Ref<const Eigen::MatrixXd>& samples, double epsilon) {
    if (samples.rows() < 2)
        throw std::invalid_argument("zca_fit needs at least two samples");
    if (!samples.allFinite())
        throw std::invalid_argument("zca_fit: samples must be finite");

    ZcaTransform t;
    t.epsilon = epsilon;
    t.mean = samples.colwise().mean();
    const Eigen::MatrixXd centered = samples.rowwise() - t.mean.transpose();
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(samples.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("zca_fit: eigendecomposition failed");
    // Nonpositive regularized eigenvalues are projected out rather than
    // producing infinities (only possible at epsilon = 0 on degenerate data).
    Eigen::VectorXd scale = es.eigenvalues().unaryExpr([epsilon](double l) {
        const double s = l + epsilon;
        return s > 0.0 ? 1.0 / std::sqrt(s) : 0.0;
    });
    t.whiten = es.eigenvectors() * scale.asDiagonal() * es.eigenvectors().transpose();
    return t;
}

}  // namespace grbm
