#include "grbm/model.hpp"

#include <cmath>
#include <string>

#include "grbm/errors.hpp"

namespace grbm {

namespace {

void check_length(const BinaryVector& x, int expected, const char* which) {
    if (x.size() != expected) {
        throw DimensionError(std::string(which) + " vector has length " +
                             std::to_string(x.size()) + ", model expects " +
                             std::to_string(expected));
    }
}

}  // namespace

BinaryVector::BinaryVector(Eigen::VectorXd bits) : bits_(std::move(bits)) {
    for (Eigen::Index k = 0; k < bits_.size(); ++k) {
        if (bits_[k] != 0.0 && bits_[k] != 1.0) {
            throw std::invalid_argument("BinaryVector entry " + std::to_string(k) +
                                        " is not 0 or 1");
        }
    }
}

BinaryVector BinaryVector::zeros(int n) {
    return BinaryVector(Eigen::VectorXd::Zero(n));
}

BinaryVector BinaryVector::ones(int n) {
    return BinaryVector(Eigen::VectorXd::Ones(n));
}

BinaryVector BinaryVector::of(std::initializer_list<int> bits) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(bits.size()));
    Eigen::Index k = 0;
    for (int bit : bits) v[k++] = static_cast<double>(bit);
    return BinaryVector(std::move(v));
}

BinaryVector BinaryVector::from_index(std::uint64_t index, int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = static_cast<double>((index >> i) & 1u);
    return BinaryVector(std::move(v));
}

RbmModel RbmModel::init(int num_visible, int num_hidden, RngStream rng) {
    if (num_visible < 1) throw std::invalid_argument("model needs at least one visible unit");
    if (num_hidden < 1) throw std::invalid_argument("model needs at least one hidden unit");
    RbmModel m;
    m.b = Eigen::VectorXd::Zero(num_visible);
    m.c = Eigen::VectorXd::Zero(num_hidden);
    m.W.resize(num_visible, num_hidden);
    const double scale = 0.01 / std::sqrt(static_cast<double>(num_visible));
    for (int j = 0; j < num_hidden; ++j)
        for (int i = 0; i < num_visible; ++i) m.W(i, j) = rng.uniform(-scale, scale);
    return m;
}

RbmModel RbmModel::from_params(Eigen::VectorXd b, Eigen::VectorXd c, Eigen::MatrixXd W) {
    RbmModel m{std::move(b), std::move(c), std::move(W)};
    m.validate();
    return m;
}

void RbmModel::validate() const {
    if (c.size() < 1) throw std::invalid_argument("hidden layer may not be empty");
    if (b.size() < 1) throw std::invalid_argument("visible layer may not be empty");
    if (W.rows() != b.size() || W.cols() != c.size()) {
        throw DimensionError("weight matrix is " + std::to_string(W.rows()) + "x" +
                             std::to_string(W.cols()) + ", expected " +
                             std::to_string(b.size()) + "x" + std::to_string(c.size()));
    }
    if (!b.allFinite() || !c.allFinite() || !W.allFinite())
        throw std::invalid_argument("model parameters must be finite");
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double energy(const RbmModel& model, const BinaryVector& v, const BinaryVector& h) {
    check_length(v, model.visible(), "visible");
    check_length(h, model.hidden(), "hidden");
    return -model.b.dot(v.vec()) - model.c.dot(h.vec()) -
           v.vec().dot(model.W * h.vec());
}

Eigen::VectorXd hidden_conditional(const RbmModel& model, const BinaryVector& v) {
    check_length(v, model.visible(), "visible");
    Eigen::VectorXd act = model.c + model.W.transpose() * v.vec();
    return act.unaryExpr([](double x) { return sigmoid(x); });
}

Eigen::VectorXd visible_conditional(const RbmModel& model, const BinaryVector& h) {
    check_length(h, model.hidden(), "hidden");
    Eigen::VectorXd act = model.b + model.W * h.vec();
    return act.unaryExpr([](double x) { return sigmoid(x); });
}

BinaryVector sample_binary(const Eigen::VectorXd& probs, RngStream& rng) {
    Eigen::VectorXd out(probs.size());
    for (Eigen::Index k = 0; k < probs.size(); ++k) {
        const double p = probs[k];
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("probability " + std::to_string(p) +
                                        " at index " + std::to_string(k) +
                                        " outside [0,1]");
        out[k] = rng.next_double() < p ? 1.0 : 0.0;
    }
    return BinaryVector(std::move(out));
}

double free_energy(const RbmModel& model, const BinaryVector& v) {
    check_length(v, model.visible(), "visible");
    const Eigen::VectorXd act = model.c + model.W.transpose() * v.vec();
    double hidden_term = 0.0;
    for (Eigen::Index j = 0; j < act.size(); ++j) hidden_term += softplus(act[j]);
    return -model.b.dot(v.vec()) - hidden_term;
}

Eigen::MatrixXd hidden_conditional_batch(const RbmModel& model,
                                         const Eigen::Ref<const Eigen::MatrixXd>& v_rows) {
    if (v_rows.cols() != model.visible())
        throw DimensionError("batch has " + std::to_string(v_rows.cols()) +
                             " visible columns, model expects " +
                             std::to_string(model.visible()));
    Eigen::MatrixXd act = (v_rows * model.W).rowwise() + model.c.transpose();
    return act.unaryExpr([](double x) { return sigmoid(x); });
}

Eigen::MatrixXd visible_conditional_batch(const RbmModel& model,
                                          const Eigen::Ref<const Eigen::MatrixXd>& h_rows) {
    if (h_rows.cols() != model.hidden())
        throw DimensionError("batch has " + std::to_string(h_rows.cols()) +
                             " hidden columns, model expects " +
                             std::to_string(model.hidden()));
    Eigen::MatrixXd act = (h_rows * model.W.transpose()).rowwise() + model.b.transpose();
    return act.unaryExpr([](double x) { return sigmoid(x); });
}

Eigen::VectorXd free_energy_batch(const RbmModel& model,
                                  const Eigen::Ref<const Eigen::MatrixXd>& v_rows) {
    if (v_rows.cols() != model.visible())
        throw DimensionError("batch has " + std::to_string(v_rows.cols()) +
                             " visible columns, model expects " +
                             std::to_string(model.visible()));
    Eigen::MatrixXd act = (v_rows * model.W).rowwise() + model.c.transpose();
    Eigen::VectorXd hidden_term =
        act.unaryExpr([](double x) { return softplus(x); }).rowwise().sum();
    return -(v_rows * model.b) - hidden_term;
}

BinaryVector gibbs_step(const RbmModel& model, const BinaryVector& v, RngStream& rng) {
    BinaryVector h = sample_binary(hidden_conditional(model, v), rng);
    return sample_binary(visible_conditional(model, h), rng);
}

}  // namespace grbm
