#include "mcsim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mcsim/errors.hpp"

namespace mcsim::scenarios {

namespace {
double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_segment(const Segment& s) {
    if (!std::isfinite(s.t0) || !std::isfinite(s.t1) || s.t0 < 0.0 || !(s.t1 > s.t0))
        throw InvalidParameter("segment needs 0 <= t0 < t1");
    if (!(s.ramp_in > 0.0) || !(s.ramp_out > 0.0)) throw InvalidParameter("segment ramps must be positive");
    if (s.t0 + s.ramp_in > s.t1) throw InvalidParameter("segment ramp-in longer than the segment");
    if (std::abs(s.ax) > max_accel || std::abs(s.ay) > max_accel)
        throw InvalidParameter("segment acceleration exceeds 10 m/s^2");
}

bool overlaps(const Segment& a, const Segment& b) {
    const bool same_channel = (a.ax != 0.0 && b.ax != 0.0) || (a.ay != 0.0 && b.ay != 0.0);
    return same_channel && a.t0 < b.t1 && b.t0 < a.t1;
}
}  // namespace

double Segment::weight(double t) const {
    return clip01((t - t0) / ramp_in) * (1.0 - clip01((t - t1) / ramp_out));
}

void ScenarioTrace::validate() const {
    const std::size_t n = t.size();
    if (ax.size() != n || ay.size() != n) throw InvalidParameter("trace arrays differ in length");
    for (const auto& r : road)
        if (r.size() != n) throw InvalidParameter("road arrays differ in length");
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(ax[k]) > max_accel || std::abs(ay[k]) > max_accel)
            throw InvalidParameter("trace acceleration exceeds 10 m/s^2");
}

ScenarioTrace make_mixed(const std::vector<Segment>& segments, double dt, double duration) {
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    if (!(duration > 0.0)) throw InvalidParameter("duration must be positive");
    for (const auto& s : segments) check_segment(s);
    for (std::size_t i = 0; i < segments.size(); ++i)
        for (std::size_t j = i + 1; j < segments.size(); ++j)
            if (overlaps(segments[i], segments[j]))
                throw InvalidParameter("overlapping segments on the same channel");

    const auto n = static_cast<std::size_t>(std::llround(duration / dt));
    if (n < 2) throw InvalidParameter("duration shorter than two samples");

    ScenarioTrace tr;
    tr.dt = dt;
    tr.t.resize(n);
    tr.ax.assign(n, 0.0);
    tr.ay.assign(n, 0.0);
    for (auto& r : tr.road) r.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        tr.t[k] = t;
        for (const auto& s : segments) {
            const double w = s.weight(t);
            if (w == 0.0) continue;
            tr.ax[k] += s.ax * w;
            tr.ay[k] += s.ay * w;
        }
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        PhaseLabel p;
        p.name = s.label.empty() ? "phase" + std::to_string(i + 1) : s.label;
        p.start = s.t0;
        p.end = s.t1 + s.ramp_out;
        p.hold_start = s.t0 + s.ramp_in;
        p.hold_end = s.t1;
        tr.labels.push_back(std::move(p));
    }
    tr.validate();
    return tr;
}

ScenarioTrace make_mixed(const std::vector<Segment>& segments, double dt) {
    double end = 0.0;
    for (const auto& s : segments) end = std::max(end, s.t1 + s.ramp_out);
    return make_mixed(segments, dt, end + default_tail);
}

ScenarioTrace make_braking(const BrakingSpec& b) {
    if (b.a_peak > 0.0) throw InvalidParameter("braking needs a_peak <= 0");
    if (!(b.t_ramp > 0.0) || !(b.t_hold > 0.0) || !(b.t_release > 0.0) || b.t_start < 0.0 || b.tail < 0.0)
        throw InvalidParameter("braking durations must be positive");
    Segment s;
    s.t0 = b.t_start;
    s.t1 = b.t_start + b.t_ramp + b.t_hold;
    s.ax = b.a_peak;
    s.ramp_in = b.t_ramp;
    s.ramp_out = b.t_release;
    s.label = "brake";
    return make_mixed({s}, b.dt, s.t1 + s.ramp_out + b.tail);
}

ScenarioTrace make_chicane(const ChicaneSpec& c) {
    if (c.n_steps < 1) throw InvalidParameter("chicane needs at least one step");
    if (!(c.t_hold > 0.0) || !(c.ramp > 0.0) || c.t_start < 0.0 || c.tail < 0.0)
        throw InvalidParameter("chicane durations must be positive");
    std::vector<Segment> segs;
    const double len = c.ramp + c.t_hold;
    for (int i = 0; i < c.n_steps; ++i) {
        Segment s;
        s.t0 = c.t_start + i * len;
        s.t1 = s.t0 + len;
        s.ay = (i % 2 == 0) ? c.ay_amp : -c.ay_amp;
        s.ramp_in = c.ramp;
        s.ramp_out = c.ramp;
        s.label = "step" + std::to_string(i + 1);
        segs.push_back(std::move(s));
    }
    return make_mixed(segs, c.dt, segs.back().t1 + c.ramp + c.tail);
}

std::array<std::vector<double>, 4> make_road_noise(const RoadNoiseSpec& spec, std::size_t samples, double dt) {
    if (!(spec.amplitude >= 0.0)) throw InvalidParameter("road amplitude must be >= 0");
    if (spec.components < 1 || !(spec.f_max > spec.f_min) || !(spec.f_min > 0.0))
        throw InvalidParameter("bad road noise band");
    std::array<std::vector<double>, 4> road;
    for (auto& r : road) r.assign(samples, 0.0);
    if (spec.amplitude == 0.0) return road;

    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const int n = spec.components;
    const double amp = spec.amplitude / std::sqrt(static_cast<double>(n));
    const double ratio = spec.f_max / spec.f_min;

    for (auto& r : road) {
        std::vector<double> freq(static_cast<std::size_t>(n)), phase(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            // log-spaced band with a random jitter inside each bin
            const double u = (j + uniform()) / n;
            freq[static_cast<std::size_t>(j)] = spec.f_min * std::pow(ratio, u);
            phase[static_cast<std::size_t>(j)] = uniform() * 2.0 * std::numbers::pi;
        }
        for (std::size_t k = 0; k < samples; ++k) {
            const double t = static_cast<double>(k) * dt;
            double h = 0.0;
            for (std::size_t j = 0; j < freq.size(); ++j)
                h += std::sin(2.0 * std::numbers::pi * freq[j] * t + phase[j]);
            const double fade = spec.fade_in > 0.0 ? std::clamp(t / spec.fade_in, 0.0, 1.0) : 1.0;
            r[k] = amp * fade * h;
        }
    }
    return road;
}

}  // namespace mcsim::scenarios
