#pragma once

#include <optional>
#include <vector>

#include "grbm/dataset.hpp"
#include "grbm/monitors.hpp"

namespace grbm {

struct AdaptiveConfig {
    double theta_g = 0.005;  // generation threshold
    double theta_a = 0.3;    // annihilation threshold on mean activation
    double alpha_c = 1.0;    // range adjustment for the hidden-bias gradient
    double alpha_w = 1.0;    // range adjustment for the weight-column gradient
    int gen_start_epoch = 10;
    int max_hidden = 0;  // 0 = uncapped
    int annihilation_start_epoch = 0;  // 0 = automatic (quiet-period rule)
    int max_generations_per_epoch = 3;
    double child_noise = -1.0;  // negative = default 0.01/sqrt(I)

    void validate(int initial_hidden) const;
    double resolved_child_noise(int num_visible) const;
};

// With annihilation_start_epoch = 0, annihilation engages only after this
// many consecutive epochs without a generation event.
inline constexpr int kAnnihilationPatience = 20;

struct StructuralEvent {
    enum class Kind { kGenerated, kAnnihilated };

    int epoch = 0;
    Kind kind = Kind::kGenerated;
    int neuron_index = 0;                // index at the time of the edit
    std::optional<int> parent_index;     // generation only
    double trigger_value = 0.0;          // generation trigger or mean activation
};

// Per-neuron generation trigger:
// (alpha_c * smoothed |dc_j|) * (alpha_w * rms_i smoothed |dW_ij|).
Eigen::VectorXd generation_triggers(const GradientStats& stats,
                                    const AdaptiveConfig& cfg);

// Neurons whose trigger exceeds theta_g, strongest first, truncated to
// max_generations_per_epoch.
std::vector<int> generation_candidates(const GradientStats& stats,
                                       const AdaptiveConfig& cfg);

// Inserts a child next to parent_j, inheriting its weight column (plus
// uniform noise), bias, and monitor rows. Returns the child's index, or
// nullopt when max_hidden is reached (no edit). Null monitors are skipped.
std::optional<int> generate_neuron(RbmModel& model, int parent_j,
                                   const AdaptiveConfig& cfg, RngStream& rng,
                                   GradientStats* stats = nullptr,
                                   WalkingDistance* wd = nullptr);

// Mean of p(h_j = 1 | v) over all dataset rows.
Eigen::VectorXd mean_hidden_activation(const RbmModel& model, const Dataset& data);

// Neurons whose mean activation over the full dataset falls below theta_a,
// ascending index. Never returns a set that would empty the hidden layer.
std::vector<int> annihilation_candidates(const RbmModel& model, const Dataset& data,
                                         const AdaptiveConfig& cfg);

// Removes hidden unit j and its monitor rows. Refuses to empty the layer.
void annihilate(RbmModel& model, int j, GradientStats* stats = nullptr,
                WalkingDistance* wd = nullptr);

// Carries the generation/annihilation schedule across epochs.
struct AdaptiveState {
    int last_generation_epoch = -1;

    bool annihilation_active(const AdaptiveConfig& cfg, int epoch) const;
};

// Epoch-boundary structural pass: generation first (from this epoch's
// smoothed gradients), then annihilation (neurons born this epoch are
// exempt). Returns the ordered event list.
std::vector<StructuralEvent> adaptive_epoch_hook(RbmModel& model, GradientStats& stats,
                                                 WalkingDistance& wd, const Dataset& data,
                                                 const AdaptiveConfig& cfg, int epoch,
                                                 AdaptiveState& state,
                                                 const RngStream& root);

}  // namespace grbm
