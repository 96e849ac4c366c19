#pragma once

#include <functional>
#include <optional>

#include "grbm/train.hpp"

namespace grbm {

// Optional per-epoch observers; the trainer stays usable without any sinks.
struct TrainHooks {
    std::function<void(const RunMetrics&)> on_epoch;
    // Called after epochs that hit the cadence and once more at the end.
    std::function<void(const RbmModel&, std::uint64_t step, int epoch)> on_checkpoint;
    int checkpoint_every = 0;  // epochs, 0 = final only
};

struct TrainResult {
    RbmModel model;
    GradientStats stats;
    WalkingDistance wd;
    std::vector<RunMetrics> history;
    std::uint64_t step = 0;  // batch updates applied
};

// Full training run: per epoch, sgd_epoch then (when configured) the
// adaptive structural pass. Epochs are 1-indexed. When adaptive is
// disabled the trajectory is bit-identical to never constructing the hook.
TrainResult train_rbm(RbmModel model, const Dataset& data, const TrainConfig& cfg,
                      const std::optional<AdaptiveConfig>& adaptive,
                      const TrainHooks& hooks = {});

}  // namespace grbm
