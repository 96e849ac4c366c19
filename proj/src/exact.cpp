#include "grbm/exact.hpp"

#include <cmath>
#include <string>

#include "grbm/errors.hpp"

namespace grbm {

namespace {

void check_capacity(const RbmModel& model) {
    const int total = model.visible() + model.hidden();
    if (total > kEnumerationLimit) {
        throw CapacityError("exact enumeration needs I+J <= " +
                            std::to_string(kEnumerationLimit) + ", model has " +
                            std::to_string(total));
    }
}

}  // namespace

bool enumerable(const RbmModel& model) {
    return model.visible() + model.hidden() <= kEnumerationLimit;
}

double exact_partition(const RbmModel& model) {
    check_capacity(model);
    const int I = model.visible();
    const int J = model.hidden();
    double z = 0.0;
    for (std::uint64_t vi = 0; vi < (std::uint64_t{1} << I); ++vi) {
        double bv = 0.0;
        Eigen::VectorXd act = model.c;
        for (int i = 0; i < I; ++i) {
            if ((vi >> i) & 1u) {
                bv += model.b[i];
                act += model.W.row(i);
            }
        }
        for (std::uint64_t hi = 0; hi < (std::uint64_t{1} << J); ++hi) {
            double e = -bv;
            for (int j = 0; j < J; ++j)
                if ((hi >> j) & 1u) e -= act[j];
            z += std::exp(-e);
        }
    }
    return z;
}

double exact_marginal(const RbmModel& model, const BinaryVector& v) {
    check_capacity(model);
    return std::exp(-free_energy(model, v)) / exact_partition(model);
}

Eigen::VectorXd exact_visible_distribution(const RbmModel& model) {
    check_capacity(model);
    const int I = model.visible();
    const double z = exact_partition(model);
    Eigen::VectorXd p(Eigen::Index{1} << I);
    for (std::uint64_t vi = 0; vi < (std::uint64_t{1} << I); ++vi)
        p[static_cast<Eigen::Index>(vi)] =
            std::exp(-free_energy(model, BinaryVector::from_index(vi, I))) / z;
    return p;
}

double exact_log_likelihood(const RbmModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& v_rows) {
    check_capacity(model);
    const double log_z = std::log(exact_partition(model));
    const Eigen::VectorXd fe = free_energy_batch(model, v_rows);
    double total = 0.0;
    for (Eigen::Index n = 0; n < fe.size(); ++n) total += -fe[n] - log_z;
    return total;
}

}  // namespace grbm
