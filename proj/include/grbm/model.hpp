#pragma once

#include <Eigen/Core>
#include <initializer_list>

#include "grbm/rng.hpp"

namespace grbm {

// A visible or hidden configuration. Every entry is exactly 0.0 or 1.0;
// construction validates this.
class BinaryVector {
  public:
    explicit BinaryVector(Eigen::VectorXd bits);

    static BinaryVector zeros(int n);
    static BinaryVector ones(int n);
    static BinaryVector of(std::initializer_list<int> bits);

    // nth visible/hidden configuration in counting order, bit i = (index >> i) & 1.
    static BinaryVector from_index(std::uint64_t index, int n);

    const Eigen::VectorXd& vec() const { return bits_; }
    int size() const { return static_cast<int>(bits_.size()); }
    double operator[](int i) const { return bits_[i]; }

  private:
    Eigen::VectorXd bits_;
};

// Binary-binary RBM parameters. W couples visible unit i with hidden unit j;
// the hidden count J changes over training while I stays fixed.
struct RbmModel {
    Eigen::VectorXd b;  // visible bias, length I
    Eigen::VectorXd c;  // hidden bias, length J
    Eigen::MatrixXd W;  // I x J

    int visible() const { return static_cast<int>(b.size()); }
    int hidden() const { return static_cast<int>(c.size()); }

    // Zero biases, W ~ uniform(-0.01/sqrt(I), +0.01/sqrt(I)).
    static RbmModel init(int num_visible, int num_hidden, RngStream rng);

    static RbmModel from_params(Eigen::VectorXd b, Eigen::VectorXd c, Eigen::MatrixXd W);

    // Throws if shapes disagree, J < 1, or any parameter is non-finite.
    void validate() const;
};

double sigmoid(double x);

// Overflow-safe log(1 + exp(x)).
double softplus(double x);

// E(v, h) = -b.v - c.h - v'Wh
double energy(const RbmModel& model, const BinaryVector& v, const BinaryVector& h);

// Element j is p(h_j = 1 | v) = sigmoid(c_j + sum_i v_i W_ij).
Eigen::VectorXd hidden_conditional(const RbmModel& model, const BinaryVector& v);

// Element i is p(v_i = 1 | h) = sigmoid(b_i + sum_j W_ij h_j).
Eigen::VectorXd visible_conditional(const RbmModel& model, const BinaryVector& h);

// Independent Bernoulli draws, element k set with probability probs[k].
BinaryVector sample_binary(const Eigen::VectorXd& probs, RngStream& rng);

// F(v) = -log sum_h exp(-E(v, h)), in closed form via softplus.
double free_energy(const RbmModel& model, const BinaryVector& v);

// Batched forms used by the trainer; rows are samples. No validation beyond
// column counts, callers own the 0/1 discipline.
Eigen::MatrixXd hidden_conditional_batch(const RbmModel& model,
                                         const Eigen::Ref<const Eigen::MatrixXd>& v_rows);
Eigen::MatrixXd visible_conditional_batch(const RbmModel& model,
                                          const Eigen::Ref<const Eigen::MatrixXd>& h_rows);
Eigen::VectorXd free_energy_batch(const RbmModel& model,
                                  const Eigen::Ref<const Eigen::MatrixXd>& v_rows);

// One alternating Gibbs sweep from v: sample h | v, then v' | h.
BinaryVector gibbs_step(const RbmModel& model, const BinaryVector& v, RngStream& rng);

}  // namespace grbm
