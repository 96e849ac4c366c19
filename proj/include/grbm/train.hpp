#pragma once

#include <cstdint>
#include <vector>

#include "grbm/adaptive.hpp"
#include "grbm/dataset.hpp"
#include "grbm/monitors.hpp"

namespace grbm {

struct TrainConfig {
    double learning_rate = 0.1;
    int batch_size = 100;
    int cd_k = 1;
    int epochs = 1;
    std::uint64_t seed = 0;
    double ema_decay = 0.9;  // gradient-magnitude smoothing
    double wd_decay = 0.9;   // walking-distance smoothing

    void validate() const;
};

// One record per epoch; mirrors the metrics stream line.
struct RunMetrics {
    int epoch = 0;
    double mean_free_energy = 0.0;
    double recon_error = 0.0;
    double grad_b = 0.0;  // mean smoothed |db|
    double grad_c = 0.0;
    double grad_w = 0.0;
    BoundGaps gaps;
    int hidden_count = 0;
    std::vector<StructuralEvent> events;
};

// Purpose ids for deriving substreams from the run's root stream. Every
// consumer hangs off its own branch so adding or removing one never
// perturbs the others.
namespace stream_purpose {
inline constexpr std::uint64_t kInit = 0;
inline constexpr std::uint64_t kShuffle = 1;
inline constexpr std::uint64_t kCd = 2;
inline constexpr std::uint64_t kChildNoise = 3;
inline constexpr std::uint64_t kHead = 4;
}  // namespace stream_purpose

// One pass over the data: deterministic (seed, epoch) shuffle, CD-k update
// per minibatch (last partial batch kept), smoothed gradient stats, and the
// epoch's metrics record. Gaps compare against the model at epoch entry.
RunMetrics sgd_epoch(RbmModel& model, const Dataset& data, const TrainConfig& cfg,
                     GradientStats& stats, int epoch, const RngStream& root);

}  // namespace grbm
