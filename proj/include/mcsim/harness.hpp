#pragma once

// Closed-loop simulation: estimator -> per-corner controller -> valve events
// -> plant step, with steady-state angle and vertical-acceleration indexes.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcsim/controller.hpp"
#include "mcsim/estimator.hpp"
#include "mcsim/scenarios.hpp"
#include "mcsim/vehicle.hpp"

namespace mcsim::harness {

enum class Mode { Soft, Hard, Basic, Extended };

std::string_view mode_name(Mode m);
/// Throws ConfigError on an unknown name.
Mode parse_mode(std::string_view name);

struct HarnessParams {
    double jz_window = 1.0;          // s
    double accel_noise = 0.0;        // m/s^2, std-dev added to measured ax, ay
    std::uint64_t accel_noise_seed = 1;
    double ss_window = 0.5;          // s, averaging window at the end of each hold
    double min_hold = 1.0;           // s
};

struct SimConfig {
    vehicle::VehicleParams vehicle{};
    estimator::FilterParams filter{};
    controller::Thresholds thresholds{};
    controller::ExtendedOptions extended{};
    HarnessParams harness{};

    estimator::GeometryParams geometry() const;
    void validate() const;
};

struct Event {
    double t = 0.0;
    Corner corner = Corner::FL;
    airspring::Valve action = airspring::Valve::Open;
    double kick = 0.0;  // N, zero for closings
    controller::OpenReason reason = controller::OpenReason::None;
    double stroke = 0.0;
    double az_before = 0.0;  // heave acceleration just before / after this event
    double az_after = 0.0;
};

struct TimeSeries {
    std::vector<double> t, phi, theta, z, az;
    std::array<std::vector<double>, 4> stroke, fz;
    std::array<std::vector<int>, 4> valve;  // 1 = open

    std::size_t size() const { return t.size(); }
};

struct PhaseMetric {
    std::string phase;
    double j_phi = 0.0;
    double j_theta = 0.0;
};

struct OpeningMetric {
    double t = 0.0;
    Corner corner = Corner::FL;
    double j_z = 0.0;
    bool truncated = false;
};

struct MetricsReport {
    std::vector<PhaseMetric> phases;      // only phases long enough to measure
    std::vector<OpeningMetric> openings;
    double j_z = 0.0;                     // max over openings (or the post-manoeuvre window)
    bool j_z_truncated = false;
};

struct RunResult {
    Mode mode = Mode::Soft;
    TimeSeries series;
    std::vector<Event> events;
    MetricsReport metrics;
};

/// Throws DivergenceError if the plant blows up.
RunResult run(const scenarios::ScenarioTrace& trace, Mode mode, const SimConfig& cfg);

/// Mean |angle| over [hold_end - window, hold_end). Throws InvalidParameter
/// when the hold window is shorter than min_hold.
double steady_state_angle(const std::vector<double>& t, const std::vector<double>& angle,
                          const scenarios::PhaseLabel& phase, double window = 0.5, double min_hold = 1.0);

struct PeakResult {
    double value = 0.0;
    bool truncated = false;
};

/// Max |az| over [t_open, t_open + window]; truncated at the end of the series.
PeakResult vertical_accel_peak(const std::vector<double>& t, const std::vector<double>& az, double t_open,
                               double window = 1.0);

MetricsReport compute_metrics(const TimeSeries& ts, const std::vector<Event>& events,
                              const std::vector<scenarios::PhaseLabel>& labels, const HarnessParams& hp);

/// a / b with 0/0 = 1.
double ratio(double a, double b);

struct CompareRow {
    std::string mode;
    std::string metric;
    std::string phase;
    double value = 0.0;
    double ratio_vs_hard = 0.0;
};

struct CompareReport {
    std::vector<RunResult> runs;  // one per requested mode, in request order
    std::vector<CompareRow> rows;
};

/// Runs every mode (plus hard for normalisation) on the same trace.
CompareReport compare(const scenarios::ScenarioTrace& trace, const std::vector<Mode>& modes,
                      const SimConfig& cfg, bool parallel = true);

/// Mean J_phi ratio vs hard over every measured phase after the first.
double mean_post_first_ratio(const MetricsReport& mode, const MetricsReport& hard);

}  // namespace mcsim::harness
