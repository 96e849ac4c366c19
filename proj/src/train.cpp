#include "grbm/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "grbm/errors.hpp"

namespace grbm {

void TrainConfig::validate() const {
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw ConfigError("learning_rate must be finite and >= 0");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (cd_k < 1) throw ConfigError("cd_k must be >= 1");
    if (epochs < 0) throw ConfigError("epochs must be >= 0");
    if (!(ema_decay >= 0.0 && ema_decay < 1.0))
        throw ConfigError("ema_decay must lie in [0, 1)");
    if (!(wd_decay >= 0.0 && wd_decay < 1.0))
        throw ConfigError("wd_decay must lie in [0, 1)");
}

RunMetrics sgd_epoch(RbmModel& model, const Dataset& data, const TrainConfig& cfg,
                     GradientStats& stats, int epoch, const RngStream& root) {
    cfg.validate();
    if (data.size() == 0) throw std::invalid_argument("sgd_epoch: empty dataset");
    if (data.features() != model.visible())
        throw DimensionError("dataset has " + std::to_string(data.features()) +
                             " features, model expects " +
                             std::to_string(model.visible()));
    if (stats.g_b.size() != model.visible() || stats.g_c.size() != model.hidden())
        throw DimensionError("gradient stats do not match the model dimensions");

    const RbmModel at_entry = model;

    // Deterministic (seed, epoch) shuffle.
    std::vector<long> order(static_cast<std::size_t>(data.size()));
    std::iota(order.begin(), order.end(), 0L);
    RngStream shuffle_rng =
        root.substream(stream_purpose::kShuffle).substream(static_cast<std::uint64_t>(epoch));
    for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(shuffle_rng.below(i));
        std::swap(order[i - 1], order[j]);
    }

    const RngStream cd_root =
        root.substream(stream_purpose::kCd).substream(static_cast<std::uint64_t>(epoch));
    const long n = data.size();
    for (long start = 0; start < n; start += cfg.batch_size) {
        const long count = std::min<long>(cfg.batch_size, n - start);
        Eigen::MatrixXd batch(count, data.features());
        for (long r = 0; r < count; ++r)
            batch.row(r) = data.samples.row(order[static_cast<std::size_t>(start + r)]);
        // Streams keyed by dataset identity, so a sample's chain does not
        // depend on where it landed in the batch.
        const std::span<const long> ids(order.data() + start,
                                        static_cast<std::size_t>(count));
        const Gradients g = cd_gradients(model, batch, cfg.cd_k, cd_root, ids);
        model.b += cfg.learning_rate * g.db;
        model.c += cfg.learning_rate * g.dc;
        model.W += cfg.learning_rate * g.dW;
        stats.observe(g, cfg.ema_decay);
    }
    model.validate();

    RunMetrics m;
    m.epoch = epoch;
    m.mean_free_energy = free_energy_batch(model, data.samples).mean();
    m.recon_error = reconstruction_cross_entropy(model, data.samples);
    m.grad_b = stats.g_b.mean();
    m.grad_c = stats.g_c.mean();
    m.grad_w = stats.g_W.mean();
    m.gaps = bound_gaps(at_entry, model);
    m.hidden_count = model.hidden();
    return m;
}

}  // namespace grbm
