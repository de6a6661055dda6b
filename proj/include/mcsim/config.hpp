#pragma once

// JSON configuration: one flat object carrying parameter overrides, the
// scenario definition and an optional elastic-map request.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mcsim/airspring.hpp"
#include "mcsim/harness.hpp"
#include "mcsim/scenarios.hpp"

namespace mcsim::config {

struct MapRequest {
    airspring::Valve valve = airspring::Valve::Open;
    double stroke_min = -0.04;
    double stroke_max = 0.04;
    int points = 81;
    std::optional<double> static_load;  // defaults to the front-left static corner load
    std::vector<airspring::MapEvent> events;
};

struct ScenarioConfig {
    double dt = 1e-3;
    std::optional<double> duration;
    std::vector<scenarios::Segment> segments;
    scenarios::RoadNoiseSpec road{};
};

struct ConfigFile {
    harness::SimConfig sim{};
    ScenarioConfig scenario{};
    std::optional<MapRequest> map;
};

/// Parses JSON text. Throws ConfigError on malformed input or unknown keys.
ConfigFile parse(const std::string& json_text);
ConfigFile load(const std::filesystem::path& path);

/// Builds the input trace (segments plus road noise).
scenarios::ScenarioTrace build_trace(const ScenarioConfig& sc);

std::vector<airspring::MapPoint> build_map(const MapRequest& req, const harness::SimConfig& sim);

}  // namespace mcsim::config
