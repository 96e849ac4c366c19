#pragma once

#include <string>

#include "grbm/config.hpp"
#include "grbm/train.hpp"

namespace grbm {

inline constexpr const char* kArtifactVersion = "grbm 1.0.0";

// Run provenance written before training starts; holds everything needed
// to reproduce the checkpoints bit for bit.
struct RunManifest {
    std::string artifact_version = kArtifactVersion;
    RunConfig config;
    std::string dataset_name;
    std::string dataset_digest;
    std::string out_dir;
    std::string created_utc;
    std::string finished_utc;  // empty until the run completes

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

// One metrics-stream line (no trailing newline), valid standalone JSON.
std::string metrics_json_line(const RunMetrics& m);

// One event-log line.
std::string event_json_line(const StructuralEvent& e);

std::string current_utc_timestamp();

}  // namespace grbm
