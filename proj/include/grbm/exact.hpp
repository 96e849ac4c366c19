#pragma once

#include <Eigen/Core>

#include "grbm/model.hpp"

namespace grbm {

// Largest I+J the enumeration routines accept; past this they are misuse.
inline constexpr int kEnumerationLimit = 24;

bool enumerable(const RbmModel& model);

// Z = sum over all 2^(I+J) configurations of exp(-E(v, h)), evaluated
// term by term. Throws CapacityError when I+J exceeds the limit.
double exact_partition(const RbmModel& model);

// p(v) = exp(-free_energy(v)) / Z.
double exact_marginal(const RbmModel& model, const BinaryVector& v);

// All 2^I marginals in visible counting order (bit i of the row index is v_i).
Eigen::VectorXd exact_visible_distribution(const RbmModel& model);

// Sum over dataset rows of log p(v_n).
double exact_log_likelihood(const RbmModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& v_rows);

}  // namespace grbm
