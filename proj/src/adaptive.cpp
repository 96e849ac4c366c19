#include "grbm/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grbm/errors.hpp"
#include "grbm/train.hpp"

namespace grbm {

void AdaptiveConfig::validate(int initial_hidden) const {
    if (!(theta_g > 0.0)) throw ConfigError("theta_g must be > 0");
    if (!(theta_a >= 0.0 && theta_a < 1.0))
        throw ConfigError("theta_a must lie in [0, 1)");
    if (!(alpha_c > 0.0)) throw ConfigError("alpha_c must be > 0");
    if (!(alpha_w > 0.0)) throw ConfigError("alpha_w must be > 0");
    if (gen_start_epoch < 0) throw ConfigError("gen_start_epoch must be >= 0");
    if (annihilation_start_epoch < 0)
        throw ConfigError("annihilation_start_epoch must be >= 0");
    if (max_generations_per_epoch < 0)
        throw ConfigError("max_generations_per_epoch must be >= 0");
    if (max_hidden != 0 && max_hidden < initial_hidden)
        throw ConfigError("max_hidden must be 0 or >= the initial hidden count");
}

double AdaptiveConfig::resolved_child_noise(int num_visible) const {
    if (child_noise >= 0.0) return child_noise;
    return 0.01 / std::sqrt(static_cast<double>(num_visible));
}

Eigen::VectorXd generation_triggers(const GradientStats& stats,
                                    const AdaptiveConfig& cfg) {
    const auto num_hidden = stats.g_c.size();
    if (stats.g_W.cols() != num_hidden)
        throw DimensionError("gradient stats disagree on the hidden count");
    const double inv_sqrt_i = 1.0 / std::sqrt(static_cast<double>(stats.g_W.rows()));
    Eigen::VectorXd triggers(num_hidden);
    for (Eigen::Index j = 0; j < num_hidden; ++j) {
        const double column_rms = stats.g_W.col(j).norm() * inv_sqrt_i;
        triggers[j] = (cfg.alpha_c * stats.g_c[j]) * (cfg.alpha_w * column_rms);
    }
    return triggers;
}

std::vector<int> generation_candidates(const GradientStats& stats,
                                       const AdaptiveConfig& cfg) {
    const Eigen::VectorXd triggers = generation_triggers(stats, cfg);
    std::vector<int> flagged;
    for (Eigen::Index j = 0; j < triggers.size(); ++j)
        if (triggers[j] > cfg.theta_g) flagged.push_back(static_cast<int>(j));
    std::sort(flagged.begin(), flagged.end(), [&](int a, int b) {
        if (triggers[a] != triggers[b]) return triggers[a] > triggers[b];
        return a < b;
    });
    if (cfg.max_generations_per_epoch > 0 &&
        flagged.size() > static_cast<std::size_t>(cfg.max_generations_per_epoch))
        flagged.resize(static_cast<std::size_t>(cfg.max_generations_per_epoch));
    return flagged;
}

std::optional<int> generate_neuron(RbmModel& model, int parent_j,
                                   const AdaptiveConfig& cfg, RngStream& rng,
                                   GradientStats* stats, WalkingDistance* wd) {
    if (parent_j < 0 || parent_j >= model.hidden())
        throw DimensionError("generate_neuron: parent index " +
                             std::to_string(parent_j) + " out of range");
    if (cfg.max_hidden != 0 && model.hidden() >= cfg.max_hidden) return std::nullopt;

    const int child = parent_j + 1;
    const int I = model.visible();
    const double noise = cfg.resolved_child_noise(I);
    Eigen::VectorXd column = model.W.col(parent_j);
    for (int i = 0; i < I; ++i) column[i] += rng.uniform(-noise, noise);

    Eigen::MatrixXd w(model.W.rows(), model.W.cols() + 1);
    w.leftCols(child) = model.W.leftCols(child);
    w.col(child) = column;
    w.rightCols(model.W.cols() - child) = model.W.rightCols(model.W.cols() - child);
    Eigen::VectorXd c(model.c.size() + 1);
    c.head(child) = model.c.head(child);
    c[child] = model.c[parent_j];
    c.tail(model.c.size() - child) = model.c.tail(model.c.size() - child);
    model.W = std::move(w);
    model.c = std::move(c);

    if (stats) stats->insert_hidden(child, parent_j);
    if (wd) wd->insert_hidden(child, parent_j);
    return child;
}

Eigen::VectorXd mean_hidden_activation(const RbmModel& model, const Dataset& data) {
    if (data.size() == 0)
        throw std::invalid_argument("mean_hidden_activation: empty dataset");
    return hidden_conditional_batch(model, data.samples).colwise().mean();
}

namespace {

std::vector<int> candidates_from_means(const Eigen::VectorXd& means, double theta_a) {
    std::vector<int> flagged;
    for (Eigen::Index j = 0; j < means.size(); ++j)
        if (means[j] < theta_a) flagged.push_back(static_cast<int>(j));
    if (flagged.size() == static_cast<std::size_t>(means.size()) && !flagged.empty()) {
        // Keep the most active unit so the layer never empties.
        const auto keep = std::max_element(
            flagged.begin(), flagged.end(),
            [&](int a, int b) { return means[a] < means[b]; });
        flagged.erase(keep);
    }
    return flagged;
}

}  // namespace

std::vector<int> annihilation_candidates(const RbmModel& model, const Dataset& data,
                                         const AdaptiveConfig& cfg) {
    return candidates_from_means(mean_hidden_activation(model, data), cfg.theta_a);
}

void annihilate(RbmModel& model, int j, GradientStats* stats, WalkingDistance* wd) {
    if (model.hidden() <= 1)
        throw std::logic_error("annihilate: refusing to remove the last hidden unit");
    if (j < 0 || j >= model.hidden())
        throw DimensionError("annihilate: index " + std::to_string(j) + " out of range");

    const auto J = model.W.cols();
    Eigen::MatrixXd w(model.W.rows(), J - 1);
    w.leftCols(j) = model.W.leftCols(j);
    w.rightCols(J - 1 - j) = model.W.rightCols(J - 1 - j);
    Eigen::VectorXd c(J - 1);
    c.head(j) = model.c.head(j);
    c.tail(J - 1 - j) = model.c.tail(J - 1 - j);
    model.W = std::move(w);
    model.c = std::move(c);

    if (stats) stats->remove_hidden(j);
    if (wd) wd->remove_hidden(j);
}

bool AdaptiveState::annihilation_active(const AdaptiveConfig& cfg, int epoch) const {
    if (cfg.annihilation_start_epoch > 0)
        return epoch >= cfg.annihilation_start_epoch;
    return epoch >= cfg.gen_start_epoch + kAnnihilationPatience &&
           epoch - last_generation_epoch >= kAnnihilationPatience;
}

std::vector<StructuralEvent> adaptive_epoch_hook(RbmModel& model, GradientStats& stats,
                                                 WalkingDistance& wd, const Dataset& data,
                                                 const AdaptiveConfig& cfg, int epoch,
                                                 AdaptiveState& state,
                                                 const RngStream& root) {
    std::vector<StructuralEvent> events;
    std::vector<int> born_this_epoch;

    if (epoch >= cfg.gen_start_epoch) {
        const Eigen::VectorXd triggers = generation_triggers(stats, cfg);
        std::vector<int> parents = generation_candidates(stats, cfg);
        // Apply highest index first so pending parent indices stay valid.
        std::sort(parents.begin(), parents.end(), std::greater<int>());
        RngStream child_rng = root.substream(stream_purpose::kChildNoise)
                                  .substream(static_cast<std::uint64_t>(epoch));
        std::uint64_t seq = 0;
        for (int parent : parents) {
            RngStream noise_rng = child_rng.substream(seq++);
            const auto child = generate_neuron(model, parent, cfg, noise_rng, &stats, &wd);
            if (!child) break;  // capacity reached, nothing more fits this epoch
            for (int& idx : born_this_epoch)
                if (idx >= *child) ++idx;
            born_this_epoch.push_back(*child);
            events.push_back({epoch, StructuralEvent::Kind::kGenerated, *child, parent,
                              triggers[parent]});
            state.last_generation_epoch = epoch;
        }
    }

    if (state.annihilation_active(cfg, epoch)) {
        const Eigen::VectorXd means = mean_hidden_activation(model, data);
        std::vector<int> doomed = candidates_from_means(means, cfg.theta_a);
        std::erase_if(doomed, [&](int j) {
            return std::find(born_this_epoch.begin(), born_this_epoch.end(), j) !=
                   born_this_epoch.end();
        });
        // Highest index first so earlier removals do not shift later ones.
        std::sort(doomed.begin(), doomed.end(), std::greater<int>());
        for (int j : doomed) {
            if (model.hidden() <= 1) break;
            annihilate(model, j, &stats, &wd);
            events.push_back(
                {epoch, StructuralEvent::Kind::kAnnihilated, j, std::nullopt, means[j]});
        }
    }
    return events;
}

}  // namespace grbm
