#include "grbm/classifier.hpp"

#include <cmath>
#include <numeric>

#include "grbm/errors.hpp"
#include "grbm/train.hpp"

namespace grbm {

namespace {

void check_labels_present(const Dataset& data) {
    if (!data.labels)
        throw LabelsError("dataset '" + data.name + "' carries no labels");
}

void check_trainable(const Dataset& data) {
    check_labels_present(data);
    if (data.num_classes() < 2)
        throw LabelsError("classification needs at least two classes, got " +
                          std::to_string(data.num_classes()));
}

// Row-wise softmax of scores, numerically shifted.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& scores) {
    Eigen::MatrixXd p(scores.rows(), scores.cols());
    for (Eigen::Index n = 0; n < scores.rows(); ++n) {
        const double m = scores.row(n).maxCoeff();
        Eigen::ArrayXd e = (scores.row(n).array() - m).exp();
        p.row(n) = (e / e.sum()).matrix();
    }
    return p;
}

Eigen::MatrixXd scores_for(const RbmModel& model, const SoftmaxHead& head,
                           const Eigen::Ref<const Eigen::MatrixXd>& v_rows) {
    if (head.U.rows() != model.hidden())
        throw DimensionError("softmax head expects " + std::to_string(head.U.rows()) +
                             " hidden units, model has " +
                             std::to_string(model.hidden()));
    const Eigen::MatrixXd phi = hidden_conditional_batch(model, v_rows);
    return (phi * head.U).rowwise() + head.d.transpose();
}

}  // namespace

Eigen::VectorXd features(const RbmModel& model, const BinaryVector& v) {
    return hidden_conditional(model, v);
}

double head_loss(const RbmModel& model, const SoftmaxHead& head,
                 const Eigen::Ref<const Eigen::MatrixXd>& v_rows,
                 const std::vector<int>& labels) {
    const Eigen::MatrixXd p = softmax_rows(scores_for(model, head, v_rows));
    double loss = 0.0;
    for (Eigen::Index n = 0; n < p.rows(); ++n)
        loss -= std::log(std::max(p(n, labels[static_cast<std::size_t>(n)]), 1e-300));
    return loss / static_cast<double>(p.rows());
}

HeadGradients head_gradients(const RbmModel& model, const SoftmaxHead& head,
                             const Eigen::Ref<const Eigen::MatrixXd>& v_rows,
                             const std::vector<int>& labels) {
    const auto n = v_rows.rows();
    const Eigen::MatrixXd phi = hidden_conditional_batch(model, v_rows);
    const Eigen::MatrixXd scores = (phi * head.U).rowwise() + head.d.transpose();
    Eigen::MatrixXd dscores = softmax_rows(scores);
    for (Eigen::Index r = 0; r < n; ++r)
        dscores(r, labels[static_cast<std::size_t>(r)]) -= 1.0;
    dscores /= static_cast<double>(n);

    HeadGradients g;
    g.dU = phi.transpose() * dscores;
    g.dd = dscores.colwise().sum();
    const Eigen::MatrixXd dphi = dscores * head.U.transpose();
    const Eigen::MatrixXd dact =
        dphi.cwiseProduct(phi.cwiseProduct((1.0 - phi.array()).matrix()));
    g.dc = dact.colwise().sum();
    g.dW = v_rows.transpose() * dact;
    return g;
}

SoftmaxHead train_head(RbmModel& model, const Dataset& data, const HeadTrainConfig& cfg) {
    check_trainable(data);
    if (data.features() != model.visible())
        throw DimensionError("dataset has " + std::to_string(data.features()) +
                             " features, model expects " +
                             std::to_string(model.visible()));
    const int classes = data.num_classes();
    const int J = model.hidden();

    const RngStream root(cfg.seed, stream_purpose::kHead);
    RngStream init_rng = root.substream(0);
    SoftmaxHead head;
    head.U.resize(J, classes);
    const double scale = 0.01 / std::sqrt(static_cast<double>(J));
    for (int k = 0; k < classes; ++k)
        for (int j = 0; j < J; ++j) head.U(j, k) = init_rng.uniform(-scale, scale);
    head.d = Eigen::VectorXd::Zero(classes);

    const long n = data.size();
    std::vector<long> order(static_cast<std::size_t>(n));
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), 0L);
        RngStream shuffle = root.substream(1).substream(static_cast<std::uint64_t>(epoch));
        for (std::size_t i = order.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(shuffle.below(i));
            std::swap(order[i - 1], order[j]);
        }
        for (long start = 0; start < n; start += cfg.batch_size) {
            const long count = std::min<long>(cfg.batch_size, n - start);
            Eigen::MatrixXd batch(count, data.features());
            std::vector<int> batch_labels(static_cast<std::size_t>(count));
            for (long r = 0; r < count; ++r) {
                const long src = order[static_cast<std::size_t>(start + r)];
                batch.row(r) = data.samples.row(src);
                batch_labels[static_cast<std::size_t>(r)] = (*data.labels)[src];
            }
            const HeadGradients g = head_gradients(model, head, batch, batch_labels);
            head.U -= cfg.lr * g.dU;
            head.d -= cfg.lr * g.dd;
            if (cfg.fine_tune) {
                model.W -= cfg.lr * g.dW;
                model.c -= cfg.lr * g.dc;
            }
        }
    }
    return head;
}

double accuracy(const RbmModel& model, const SoftmaxHead& head, const Dataset& data) {
    check_labels_present(data);
    const Eigen::MatrixXd scores = scores_for(model, head, data.samples);
    long hits = 0;
    for (Eigen::Index n = 0; n < scores.rows(); ++n) {
        int best = 0;
        for (int k = 1; k < scores.cols(); ++k)
            if (scores(n, k) > scores(n, best)) best = k;
        if (best == (*data.labels)[static_cast<std::size_t>(n)]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(scores.rows());
}

}  // namespace grbm
