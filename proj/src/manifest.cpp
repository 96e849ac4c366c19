#include "grbm/manifest.hpp"

#include <chrono>
#include <ctime>

#include "json.hpp"

namespace grbm {

namespace {

using nlohmann::json;

json event_to_json(const StructuralEvent& e) {
    json j{{"kind", e.kind == StructuralEvent::Kind::kGenerated ? "generated"
                                                                : "annihilated"},
           {"index", e.neuron_index},
           {"trigger", e.trigger_value},
           {"epoch", e.epoch}};
    if (e.parent_index) j["parent"] = *e.parent_index;
    else j["parent"] = nullptr;
    return j;
}

}  // namespace

std::string RunManifest::to_json() const {
    const RunConfig& c = config;
    json j{
        {"artifact_version", artifact_version},
        {"created_utc", created_utc},
        {"finished_utc", finished_utc},
        {"out_dir", out_dir},
        {"dataset_name", dataset_name},
        {"dataset_digest", dataset_digest},
        {"config",
         {{"learning_rate", c.train.learning_rate},
          {"batch_size", c.train.batch_size},
          {"cd_k", c.train.cd_k},
          {"epochs", c.train.epochs},
          {"seed", c.train.seed},
          {"ema_decay", c.train.ema_decay},
          {"wd_decay", c.train.wd_decay},
          {"theta_g", c.adaptive.theta_g},
          {"theta_a", c.adaptive.theta_a},
          {"alpha_c", c.adaptive.alpha_c},
          {"alpha_w", c.adaptive.alpha_w},
          {"gen_start_epoch", c.adaptive.gen_start_epoch},
          {"max_hidden", c.adaptive.max_hidden},
          {"annihilation_start_epoch", c.adaptive.annihilation_start_epoch},
          {"max_generations_per_epoch", c.adaptive.max_generations_per_epoch},
          {"child_noise", c.adaptive.child_noise},
          {"adaptive", c.adaptive_enabled},
          {"initial_hidden", c.initial_hidden},
          {"dataset", c.dataset},
          {"data_dir", c.data_dir},
          {"gdat_path", c.gdat_path},
          {"bas_side", c.bas_side},
          {"bas_samples", c.bas_samples},
          {"binarize_threshold", c.binarize_threshold},
          {"zca_epsilon", c.zca_epsilon},
          {"subset", c.subset},
          {"checkpoint_every", c.checkpoint_every}}}};
    return j.dump(2);
}

RunManifest RunManifest::from_json(const std::string& text) {
    const json j = json::parse(text);
    RunManifest m;
    m.artifact_version = j.value("artifact_version", "");
    m.created_utc = j.value("created_utc", "");
    m.finished_utc = j.value("finished_utc", "");
    m.out_dir = j.value("out_dir", "");
    m.dataset_name = j.value("dataset_name", "");
    m.dataset_digest = j.value("dataset_digest", "");
    const json& c = j.at("config");
    RunConfig& cfg = m.config;
    cfg.train.learning_rate = c.at("learning_rate");
    cfg.train.batch_size = c.at("batch_size");
    cfg.train.cd_k = c.at("cd_k");
    cfg.train.epochs = c.at("epochs");
    cfg.train.seed = c.at("seed");
    cfg.train.ema_decay = c.at("ema_decay");
    cfg.train.wd_decay = c.at("wd_decay");
    cfg.adaptive.theta_g = c.at("theta_g");
    cfg.adaptive.theta_a = c.at("theta_a");
    cfg.adaptive.alpha_c = c.at("alpha_c");
    cfg.adaptive.alpha_w = c.at("alpha_w");
    cfg.adaptive.gen_start_epoch = c.at("gen_start_epoch");
    cfg.adaptive.max_hidden = c.at("max_hidden");
    cfg.adaptive.annihilation_start_epoch = c.at("annihilation_start_epoch");
    cfg.adaptive.max_generations_per_epoch = c.at("max_generations_per_epoch");
    cfg.adaptive.child_noise = c.at("child_noise");
    cfg.adaptive_enabled = c.at("adaptive");
    cfg.initial_hidden = c.at("initial_hidden");
    cfg.dataset = c.at("dataset");
    cfg.data_dir = c.at("data_dir");
    cfg.gdat_path = c.at("gdat_path");
    cfg.bas_side = c.at("bas_side");
    cfg.bas_samples = c.at("bas_samples");
    cfg.binarize_threshold = c.at("binarize_threshold");
    cfg.zca_epsilon = c.at("zca_epsilon");
    cfg.subset = c.at("subset");
    cfg.checkpoint_every = c.at("checkpoint_every");
    return m;
}

std::string metrics_json_line(const RunMetrics& m) {
    json events = json::array();
    for (const auto& e : m.events) events.push_back(event_to_json(e));
    const json j{{"epoch", m.epoch},
                 {"mean_free_energy", m.mean_free_energy},
                 {"recon_error", m.recon_error},
                 {"grad_b", m.grad_b},
                 {"grad_c", m.grad_c},
                 {"grad_w", m.grad_w},
                 {"gap_b", m.gaps.gap_b},
                 {"gap_c", m.gaps.gap_c},
                 {"gap_w", m.gaps.gap_w},
                 {"hidden_count", m.hidden_count},
                 {"events", events}};
    return j.dump();
}

std::string event_json_line(const StructuralEvent& e) {
    return event_to_json(e).dump();
}

std::string current_utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace grbm
