#include "grbm/trainer.hpp"

namespace grbm {

TrainResult train_rbm(RbmModel model, const Dataset& data, const TrainConfig& cfg,
                      const std::optional<AdaptiveConfig>& adaptive,
                      const TrainHooks& hooks) {
    cfg.validate();
    model.validate();
    if (adaptive) adaptive->validate(model.hidden());

    TrainResult result;
    result.stats = GradientStats::zeros(model.visible(), model.hidden());
    result.wd = WalkingDistance::zeros(model.hidden(), cfg.wd_decay);

    const RngStream root(cfg.seed, 0);
    AdaptiveState state;

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const Eigen::MatrixXd w_before = model.W;
        RunMetrics metrics = sgd_epoch(model, data, cfg, result.stats, epoch, root);
        result.wd = walking_distance_step(result.wd, w_before, model.W);

        if (adaptive) {
            metrics.events = adaptive_epoch_hook(model, result.stats, result.wd, data,
                                                 *adaptive, epoch, state, root);
            if (!metrics.events.empty()) {
                // The record reflects the live model at the epoch boundary.
                metrics.mean_free_energy = free_energy_batch(model, data.samples).mean();
                metrics.recon_error = reconstruction_cross_entropy(model, data.samples);
                metrics.hidden_count = model.hidden();
            }
        }

        result.history.push_back(metrics);
        if (hooks.on_epoch) hooks.on_epoch(metrics);
        if (hooks.on_checkpoint && hooks.checkpoint_every > 0 &&
            epoch % hooks.checkpoint_every == 0 && epoch != cfg.epochs)
            hooks.on_checkpoint(model, static_cast<std::uint64_t>(result.stats.step), epoch);
    }

    result.step = static_cast<std::uint64_t>(result.stats.step);
    if (hooks.on_checkpoint)
        hooks.on_checkpoint(model, result.step, cfg.epochs);
    result.model = std::move(model);
    return result;
}

}  // namespace grbm
