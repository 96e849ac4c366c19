#include "grbm/config.hpp"

#include <charconv>
#include <fstream>

#include "grbm/errors.hpp"

namespace grbm {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad numeric value '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': bad integer value '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': bad integer value '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': bad boolean value '" + value + "'");
}

}  // namespace

void RunConfig::validate() const {
    train.validate();
    if (adaptive_enabled) adaptive.validate(initial_hidden);
    if (initial_hidden < 1) throw ConfigError("initial_hidden must be >= 1");
    if (dataset != "mnist" && dataset != "cifar10" && dataset != "bars_and_stripes" &&
        dataset != "gdat")
        throw ConfigError("unknown dataset '" + dataset + "'");
    if (bas_side < 1) throw ConfigError("bas_side must be >= 1");
    if (bas_samples < 0) throw ConfigError("bas_samples must be >= 0");
    if (subset < 0) throw ConfigError("subset must be >= 0");
    if (checkpoint_every < 0) throw ConfigError("checkpoint_every must be >= 0");
}

void apply_assignment(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty config key in '" + assignment + "'");

    if (key == "learning_rate") cfg.train.learning_rate = parse_double(key, value);
    else if (key == "batch_size") cfg.train.batch_size = static_cast<int>(parse_long(key, value));
    else if (key == "cd_k") cfg.train.cd_k = static_cast<int>(parse_long(key, value));
    else if (key == "epochs") cfg.train.epochs = static_cast<int>(parse_long(key, value));
    else if (key == "seed") cfg.train.seed = parse_u64(key, value);
    else if (key == "ema_decay") cfg.train.ema_decay = parse_double(key, value);
    else if (key == "wd_decay") cfg.train.wd_decay = parse_double(key, value);
    else if (key == "theta_g") cfg.adaptive.theta_g = parse_double(key, value);
    else if (key == "theta_a") cfg.adaptive.theta_a = parse_double(key, value);
    else if (key == "alpha_c") cfg.adaptive.alpha_c = parse_double(key, value);
    else if (key == "alpha_w") cfg.adaptive.alpha_w = parse_double(key, value);
    else if (key == "gen_start_epoch") cfg.adaptive.gen_start_epoch = static_cast<int>(parse_long(key, value));
    else if (key == "max_hidden") cfg.adaptive.max_hidden = static_cast<int>(parse_long(key, value));
    else if (key == "annihilation_start_epoch") cfg.adaptive.annihilation_start_epoch = static_cast<int>(parse_long(key, value));
    else if (key == "max_generations_per_epoch") cfg.adaptive.max_generations_per_epoch = static_cast<int>(parse_long(key, value));
    else if (key == "child_noise") cfg.adaptive.child_noise = parse_double(key, value);
    else if (key == "adaptive") cfg.adaptive_enabled = parse_bool(key, value);
    else if (key == "initial_hidden") cfg.initial_hidden = static_cast<int>(parse_long(key, value));
    else if (key == "dataset") cfg.dataset = value;
    else if (key == "data_dir") cfg.data_dir = value;
    else if (key == "gdat_path") cfg.gdat_path = value;
    else if (key == "bas_side") cfg.bas_side = static_cast<int>(parse_long(key, value));
    else if (key == "bas_samples") cfg.bas_samples = parse_long(key, value);
    else if (key == "binarize_threshold") cfg.binarize_threshold = parse_double(key, value);
    else if (key == "zca_epsilon") cfg.zca_epsilon = parse_double(key, value);
    else if (key == "subset") cfg.subset = parse_long(key, value);
    else if (key == "checkpoint_every") cfg.checkpoint_every = static_cast<int>(parse_long(key, value));
    else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            apply_assignment(cfg, line);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

}  // namespace grbm
