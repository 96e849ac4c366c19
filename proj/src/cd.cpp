#include "grbm/cd.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "grbm/errors.hpp"

namespace grbm {

Gradients cd_gradients(const RbmModel& model,
                       const Eigen::Ref<const Eigen::MatrixXd>& batch, int k,
                       RngStream rng, std::span<const long> sample_ids) {
    const auto n = batch.rows();
    if (n == 0) throw std::invalid_argument("cd_gradients: empty batch");
    if (k < 1) throw std::invalid_argument("cd_gradients: k must be >= 1");
    if (!sample_ids.empty() && static_cast<Eigen::Index>(sample_ids.size()) != n)
        throw DimensionError("cd_gradients: sample_ids length does not match batch");

    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index row = 0; row < n; ++row)
        streams.push_back(rng.substream(
            sample_ids.empty() ? static_cast<std::uint64_t>(row)
                               : static_cast<std::uint64_t>(sample_ids[row])));

    auto draw_rows = [&](const Eigen::MatrixXd& probs) {
        Eigen::MatrixXd out(probs.rows(), probs.cols());
        for (Eigen::Index row = 0; row < probs.rows(); ++row)
            for (Eigen::Index col = 0; col < probs.cols(); ++col)
                out(row, col) = streams[static_cast<std::size_t>(row)].next_double() <
                                        probs(row, col)
                                    ? 1.0
                                    : 0.0;
        return out;
    };

    const Eigen::MatrixXd p_hidden_data = hidden_conditional_batch(model, batch);
    Eigen::MatrixXd hidden = draw_rows(p_hidden_data);
    Eigen::MatrixXd recon;
    Eigen::MatrixXd p_hidden_recon;
    for (int step = 0; step < k; ++step) {
        recon = draw_rows(visible_conditional_batch(model, hidden));
        p_hidden_recon = hidden_conditional_batch(model, recon);
        if (step + 1 < k) hidden = draw_rows(p_hidden_recon);
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    Gradients g;
    g.db = (batch - recon).colwise().mean();
    g.dc = (p_hidden_data - p_hidden_recon).colwise().mean();
    g.dW = (batch.transpose() * p_hidden_data - recon.transpose() * p_hidden_recon) * inv_n;
    return g;
}

double reconstruction_cross_entropy(const RbmModel& model,
                                    const Eigen::Ref<const Eigen::MatrixXd>& v_rows) {
    const Eigen::MatrixXd p_hidden = hidden_conditional_batch(model, v_rows);
    const Eigen::MatrixXd p_visible = visible_conditional_batch(model, p_hidden);
    double total = 0.0;
    for (Eigen::Index row = 0; row < v_rows.rows(); ++row)
        for (Eigen::Index col = 0; col < v_rows.cols(); ++col) {
            const double p =
                std::min(std::max(p_visible(row, col), 1e-12), 1.0 - 1e-12);
            total -= v_rows(row, col) * std::log(p) +
                     (1.0 - v_rows(row, col)) * std::log1p(-p);
        }
    return total / static_cast<double>(v_rows.rows() * v_rows.cols());
}

}  // namespace grbm
