#pragma once

#include <Eigen/Core>
#include <functional>

#include "grbm/cd.hpp"
#include "grbm/model.hpp"

// Reference computations kept deliberately independent of the library's
// closed-form paths: everything here enumerates configurations through the
// public energy() operation or uses a different algorithm outright.
namespace grbm::oracle {

// Sum over all 2^J hidden configurations of exp(-E(v, h)).
double hidden_sum(const RbmModel& model, const BinaryVector& v);

// Z by summing exp(-E) over every (v, h) pair.
double partition(const RbmModel& model);

// Z by the free-energy route, for the two-route partition cross-check.
double partition_via_free_energy(const RbmModel& model);

// p(v) = hidden_sum / partition, all by enumeration.
double marginal(const RbmModel& model, const BinaryVector& v);

// p(h_j = 1 | v) as a ratio of enumerated joint sums.
double conditional_by_enumeration(const RbmModel& model, const BinaryVector& v, int j);

// Exact log-likelihood gradient of the data under the model, data term
// minus enumerated model expectation. Conditionals come from enumeration.
Gradients exact_loglik_gradient(const RbmModel& model,
                                const Eigen::Ref<const Eigen::MatrixXd>& v_rows);

// Largest singular value via cyclic one-sided Jacobi rotations.
double jacobi_svd_max(const Eigen::Ref<const Eigen::MatrixXd>& m);

// Central finite difference (f(x+h) - f(x-h)) / 2h.
double central_difference(const std::function<double(double)>& f, double x, double h);

// Half the L1 distance between two distributions.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

// Deterministic small random model for test batteries.
RbmModel random_model(int num_visible, int num_hidden, double scale, std::uint64_t seed);

}  // namespace grbm::oracle
