#pragma once

// Exogenous input traces: COG accelerations built from ramped segments, and
// per-corner road height.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mcsim/corner.hpp"

namespace mcsim::scenarios {

/// Constant (ax, ay) held over [t0, t1], ramped in before t0 + ramp_in and
/// ramped out over [t1, t1 + ramp_out].
struct Segment {
    double t0 = 0.0;
    double t1 = 0.0;
    double ax = 0.0;
    double ay = 0.0;
    double ramp_in = 0.2;
    double ramp_out = 0.2;
    std::string label;

    double weight(double t) const;
};

struct PhaseLabel {
    std::string name;
    double start = 0.0;       // input starts to rise
    double end = 0.0;         // input back to zero
    double hold_start = 0.0;  // constant-input window
    double hold_end = 0.0;
};

struct ScenarioTrace {
    double dt = 1e-3;
    std::vector<double> t;
    std::vector<double> ax;
    std::vector<double> ay;
    std::array<std::vector<double>, 4> road;
    std::vector<PhaseLabel> labels;

    std::size_t size() const { return t.size(); }
    double duration() const { return dt * static_cast<double>(t.size()); }
    CornerArray road_at(std::size_t k) const {
        return {road[0][k], road[1][k], road[2][k], road[3][k]};
    }
    /// Throws InvalidParameter on length mismatch or |a| > max_accel.
    void validate() const;
};

inline constexpr double max_accel = 10.0;

/// Superposes `segments` on a grid of round(duration/dt) samples. Segments
/// whose hold windows overlap on the same nonzero channel are rejected.
ScenarioTrace make_mixed(const std::vector<Segment>& segments, double dt, double duration);

/// Default duration: end of the last segment's ramp-out plus `tail`.
ScenarioTrace make_mixed(const std::vector<Segment>& segments, double dt);

struct BrakingSpec {
    double a_peak = -3.0;
    double t_start = 0.5;
    double t_ramp = 0.2;
    double t_hold = 3.0;
    double t_release = 0.2;
    double tail = 3.0;
    double dt = 1e-3;
};
ScenarioTrace make_braking(const BrakingSpec& spec);

struct ChicaneSpec {
    double ay_amp = 2.0;
    int n_steps = 3;
    double t_hold = 3.0;
    double t_start = 0.5;
    double ramp = 0.2;
    double tail = 3.0;
    double dt = 1e-3;
};
ScenarioTrace make_chicane(const ChicaneSpec& spec);

struct RoadNoiseSpec {
    double amplitude = 0.0;  // m, RMS-like scale of each corner profile
    std::uint64_t seed = 1;
    int components = 32;
    double f_min = 0.5;   // Hz
    double f_max = 15.0;  // Hz
    double fade_in = 0.5; // s
};

/// Band-limited sum of sinusoids per corner, fully determined by the seed.
std::array<std::vector<double>, 4> make_road_noise(const RoadNoiseSpec& spec, std::size_t samples, double dt);

inline constexpr double default_tail = 3.0;

}  // namespace mcsim::scenarios
