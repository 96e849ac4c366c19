#pragma once

#include <Eigen/Core>

#include "grbm/cd.hpp"

namespace grbm {

// Exponentially smoothed per-parameter gradient magnitudes. These are the
// signals the generation condition thresholds, so their shapes must track
// the live model across structural edits.
struct GradientStats {
    Eigen::VectorXd g_b;  // length I
    Eigen::VectorXd g_c;  // length J
    Eigen::MatrixXd g_W;  // I x J
    long step = 0;

    static GradientStats zeros(int num_visible, int num_hidden);

    // g <- decay * g + (1 - decay) * |d|
    void observe(const Gradients& grads, double decay);

    void insert_hidden(int position, int parent);
    void remove_hidden(int position);
};

// Smoothed per-hidden-neuron movement of the weight columns.
struct WalkingDistance {
    Eigen::VectorXd wd;  // length J
    double decay = 0.9;

    static WalkingDistance zeros(int num_hidden, double decay);

    void insert_hidden(int position, int parent);
    void remove_hidden(int position);
};

// wd_j <- decay * wd_j + (1 - decay) * ||col_j(cur) - col_j(prev)||_2
WalkingDistance walking_distance_step(const WalkingDistance& wd,
                                      const Eigen::Ref<const Eigen::MatrixXd>& w_prev,
                                      const Eigen::Ref<const Eigen::MatrixXd>& w_cur);

// Largest singular value by power iteration on M'M, all-ones start vector,
// residual tolerance 1e-8, at most 1000 iterations.
double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& m);

// Third right-hand-side terms of the per-parameter log-partition bounds:
// the quadratic trust terms whose decay signals convergence.
struct BoundGaps {
    double gap_b = 0.0;  // (I/2)  max_i (delta b_i)^2
    double gap_c = 0.0;  // (J/2)  max_j (delta c_j)^2
    double gap_w = 0.0;  // (I*J)  sigma_max(delta W)^2
};

BoundGaps bound_gaps(const RbmModel& prev, const RbmModel& cur);

}  // namespace grbm
