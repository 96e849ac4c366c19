#include "support/oracles.hpp"

#include <cmath>

namespace grbm::oracle {

double hidden_sum(const RbmModel& model, const BinaryVector& v) {
    const int J = model.hidden();
    double total = 0.0;
    for (std::uint64_t hi = 0; hi < (std::uint64_t{1} << J); ++hi)
        total += std::exp(-energy(model, v, BinaryVector::from_index(hi, J)));
    return total;
}

double partition(const RbmModel& model) {
    const int I = model.visible();
    double total = 0.0;
    for (std::uint64_t vi = 0; vi < (std::uint64_t{1} << I); ++vi)
        total += hidden_sum(model, BinaryVector::from_index(vi, I));
    return total;
}

double partition_via_free_energy(const RbmModel& model) {
    const int I = model.visible();
    double total = 0.0;
    for (std::uint64_t vi = 0; vi < (std::uint64_t{1} << I); ++vi)
        total += std::exp(-free_energy(model, BinaryVector::from_index(vi, I)));
    return total;
}

double marginal(const RbmModel& model, const BinaryVector& v) {
    return hidden_sum(model, v) / partition(model);
}

double conditional_by_enumeration(const RbmModel& model, const BinaryVector& v, int j) {
    const int J = model.hidden();
    double on = 0.0;
    double all = 0.0;
    for (std::uint64_t hi = 0; hi < (std::uint64_t{1} << J); ++hi) {
        const double w = std::exp(-energy(model, v, BinaryVector::from_index(hi, J)));
        all += w;
        if ((hi >> j) & 1u) on += w;
    }
    return on / all;
}

Gradients exact_loglik_gradient(const RbmModel& model,
                                const Eigen::Ref<const Eigen::MatrixXd>& v_rows) {
    const int I = model.visible();
    const int J = model.hidden();
    const auto n = v_rows.rows();

    Gradients g;
    g.db = Eigen::VectorXd::Zero(I);
    g.dc = Eigen::VectorXd::Zero(J);
    g.dW = Eigen::MatrixXd::Zero(I, J);

    // Data term.
    for (Eigen::Index r = 0; r < n; ++r) {
        const BinaryVector v(v_rows.row(r).transpose());
        g.db += v.vec();
        for (int j = 0; j < J; ++j) {
            const double p = conditional_by_enumeration(model, v, j);
            g.dc[j] += p;
            g.dW.col(j) += p * v.vec();
        }
    }
    g.db /= static_cast<double>(n);
    g.dc /= static_cast<double>(n);
    g.dW /= static_cast<double>(n);

    // Model expectation by enumeration.
    const double z = partition(model);
    for (std::uint64_t vi = 0; vi < (std::uint64_t{1} << I); ++vi) {
        const BinaryVector v = BinaryVector::from_index(vi, I);
        const double pv = hidden_sum(model, v) / z;
        g.db -= pv * v.vec();
        for (int j = 0; j < J; ++j) {
            const double p = conditional_by_enumeration(model, v, j);
            g.dc[j] -= pv * p;
            g.dW.col(j) -= pv * p * v.vec();
        }
    }
    return g;
}

double jacobi_svd_max(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    // One-sided Jacobi: orthogonalize column pairs of a working copy until
    // every pair is numerically orthogonal; singular values are the final
    // column norms.
    Eigen::MatrixXd a = m;
    const auto cols = a.cols();
    constexpr int kMaxSweeps = 60;
    constexpr double kEps = 1e-15;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (Eigen::Index p = 0; p < cols - 1; ++p) {
            for (Eigen::Index q = p + 1; q < cols; ++q) {
                const double apq = a.col(p).dot(a.col(q));
                const double app = a.col(p).squaredNorm();
                const double aqq = a.col(q).squaredNorm();
                if (std::abs(apq) <= kEps * std::sqrt(app * aqq)) continue;
                rotated = true;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                const Eigen::VectorXd colp = a.col(p);
                a.col(p) = cs * colp - sn * a.col(q);
                a.col(q) = sn * colp + cs * a.col(q);
            }
        }
        if (!rotated) break;
    }
    double best = 0.0;
    for (Eigen::Index p = 0; p < cols; ++p) best = std::max(best, a.col(p).norm());
    return best;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    return 0.5 * (p - q).cwiseAbs().sum();
}

RbmModel random_model(int num_visible, int num_hidden, double scale, std::uint64_t seed) {
    RngStream rng(seed, 0xFACE);
    RbmModel m;
    m.b.resize(num_visible);
    m.c.resize(num_hidden);
    m.W.resize(num_visible, num_hidden);
    for (int i = 0; i < num_visible; ++i) m.b[i] = rng.uniform(-scale, scale);
    for (int j = 0; j < num_hidden; ++j) m.c[j] = rng.uniform(-scale, scale);
    for (int j = 0; j < num_hidden; ++j)
        for (int i = 0; i < num_visible; ++i) m.W(i, j) = rng.uniform(-scale, scale);
    return m;
}

}  // namespace grbm::oracle
