#include "grbm/monitors.hpp"

#include <cmath>
#include <stdexcept>

#include "grbm/errors.hpp"

namespace grbm {

namespace {

Eigen::VectorXd insert_entry(const Eigen::VectorXd& v, int position, double value) {
    Eigen::VectorXd out(v.size() + 1);
    out.head(position) = v.head(position);
    out[position] = value;
    out.tail(v.size() - position) = v.tail(v.size() - position);
    return out;
}

Eigen::VectorXd remove_entry(const Eigen::VectorXd& v, int position) {
    Eigen::VectorXd out(v.size() - 1);
    out.head(position) = v.head(position);
    out.tail(v.size() - 1 - position) = v.tail(v.size() - 1 - position);
    return out;
}

Eigen::MatrixXd insert_column(const Eigen::MatrixXd& m, int position,
                              const Eigen::VectorXd& col) {
    Eigen::MatrixXd out(m.rows(), m.cols() + 1);
    out.leftCols(position) = m.leftCols(position);
    out.col(position) = col;
    out.rightCols(m.cols() - position) = m.rightCols(m.cols() - position);
    return out;
}

Eigen::MatrixXd remove_column(const Eigen::MatrixXd& m, int position) {
    Eigen::MatrixXd out(m.rows(), m.cols() - 1);
    out.leftCols(position) = m.leftCols(position);
    out.rightCols(m.cols() - 1 - position) = m.rightCols(m.cols() - 1 - position);
    return out;
}

}  // namespace

GradientStats GradientStats::zeros(int num_visible, int num_hidden) {
    GradientStats s;
    s.g_b = Eigen::VectorXd::Zero(num_visible);
    s.g_c = Eigen::VectorXd::Zero(num_hidden);
    s.g_W = Eigen::MatrixXd::Zero(num_visible, num_hidden);
    return s;
}

void GradientStats::observe(const Gradients& grads, double decay) {
    if (grads.db.size() != g_b.size() || grads.dc.size() != g_c.size() ||
        grads.dW.rows() != g_W.rows() || grads.dW.cols() != g_W.cols())
        throw DimensionError("GradientStats::observe: gradient shapes do not match");
    g_b = decay * g_b + (1.0 - decay) * grads.db.cwiseAbs();
    g_c = decay * g_c + (1.0 - decay) * grads.dc.cwiseAbs();
    g_W = decay * g_W + (1.0 - decay) * grads.dW.cwiseAbs();
    ++step;
}

void GradientStats::insert_hidden(int position, int parent) {
    g_c = insert_entry(g_c, position, g_c[parent]);
    g_W = insert_column(g_W, position, g_W.col(parent));
}

void GradientStats::remove_hidden(int position) {
    g_c = remove_entry(g_c, position);
    g_W = remove_column(g_W, position);
}

WalkingDistance WalkingDistance::zeros(int num_hidden, double decay) {
    return WalkingDistance{Eigen::VectorXd::Zero(num_hidden), decay};
}

void WalkingDistance::insert_hidden(int position, int parent) {
    wd = insert_entry(wd, position, wd[parent]);
}

void WalkingDistance::remove_hidden(int position) {
    wd = remove_entry(wd, position);
}

WalkingDistance walking_distance_step(const WalkingDistance& wd,
                                      const Eigen::Ref<const Eigen::MatrixXd>& w_prev,
                                      const Eigen::Ref<const Eigen::MatrixXd>& w_cur) {
    if (w_prev.rows() != w_cur.rows() || w_prev.cols() != w_cur.cols())
        throw DimensionError("walking_distance_step: weight snapshots differ in shape");
    if (wd.wd.size() != w_cur.cols())
        throw DimensionError("walking_distance_step: monitor tracks " +
                             std::to_string(wd.wd.size()) + " neurons, weights have " +
                             std::to_string(w_cur.cols()));
    WalkingDistance out = wd;
    for (Eigen::Index j = 0; j < w_cur.cols(); ++j) {
        const double dist = (w_cur.col(j) - w_prev.col(j)).norm();
        out.wd[j] = wd.decay * wd.wd[j] + (1.0 - wd.decay) * dist;
    }
    return out;
}

double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw std::invalid_argument("spectral_norm: empty matrix");
    constexpr double kTol = 1e-8;
    constexpr int kMaxIter = 1000;

    Eigen::VectorXd x = Eigen::VectorXd::Ones(m.cols());
    x /= x.norm();
    double lambda = 0.0;
    for (int it = 0; it < kMaxIter; ++it) {
        const Eigen::VectorXd y = m.transpose() * (m * x);
        lambda = x.dot(y);  // Rayleigh quotient of M'M at unit x
        const double residual = (y - lambda * x).norm();
        if (residual <= kTol * std::max(lambda, 1.0)) break;
        const double norm = y.norm();
        if (norm == 0.0) return 0.0;
        x = y / norm;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

BoundGaps bound_gaps(const RbmModel& prev, const RbmModel& cur) {
    if (prev.visible() != cur.visible() || prev.hidden() != cur.hidden())
        throw DimensionError("bound_gaps: snapshots have different dimensions");
    const double ii = static_cast<double>(cur.visible());
    const double jj = static_cast<double>(cur.hidden());
    BoundGaps g;
    const double db_max = (cur.b - prev.b).cwiseAbs().maxCoeff();
    const double dc_max = (cur.c - prev.c).cwiseAbs().maxCoeff();
    const double dw_spec = spectral_norm(cur.W - prev.W);
    g.gap_b = 0.5 * ii * db_max * db_max;
    g.gap_c = 0.5 * jj * dc_max * dc_max;
    g.gap_w = ii * jj * dw_spec * dw_spec;
    return g;
}

}  // namespace grbm
