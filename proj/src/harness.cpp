#include "mcsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <limits>
#include <random>

#include "mcsim/errors.hpp"

namespace mcsim::harness {

using airspring::Valve;
using controller::OpenReason;

std::string_view mode_name(Mode m) {
    switch (m) {
    case Mode::Soft: return "soft";
    case Mode::Hard: return "hard";
    case Mode::Basic: return "basic";
    case Mode::Extended: return "extended";
    }
    return "?";
}

Mode parse_mode(std::string_view name) {
    for (Mode m : {Mode::Soft, Mode::Hard, Mode::Basic, Mode::Extended})
        if (mode_name(m) == name) return m;
    throw ConfigError("unknown controller mode '" + std::string(name) + "'");
}

estimator::GeometryParams SimConfig::geometry() const {
    return {vehicle.sprung_mass, vehicle.wheelbase, vehicle.track, vehicle.cog_height};
}

void SimConfig::validate() const {
    vehicle.validate();
    filter.validate();
    thresholds.validate();
    if (!(harness.jz_window > 0.0)) throw InvalidParameter("jz_window must be positive");
    if (!(harness.accel_noise >= 0.0)) throw InvalidParameter("accel_noise must be >= 0");
    if (!(harness.ss_window > 0.0) || harness.min_hold < harness.ss_window)
        throw InvalidParameter("steady-state window must be positive and fit in the minimum hold");
}

namespace {

struct Interp {
    const scenarios::ScenarioTrace& tr;
    std::size_t k;
    vehicle::PlantInputs operator()(double tau) const {
        const double w = tau / tr.dt;
        const std::size_t j = k + 1;
        vehicle::PlantInputs u;
        u.ax = tr.ax[k] + w * (tr.ax[j] - tr.ax[k]);
        u.ay = tr.ay[k] + w * (tr.ay[j] - tr.ay[k]);
        for (std::size_t i = 0; i < 4; ++i) u.road[i] = tr.road[i][k] + w * (tr.road[i][j] - tr.road[i][k]);
        return u;
    }
};

vehicle::PlantInputs sample(const scenarios::ScenarioTrace& tr, std::size_t k) {
    return {tr.ax[k], tr.ay[k], tr.road_at(k)};
}

}  // namespace

RunResult run(const scenarios::ScenarioTrace& trace, Mode mode, const SimConfig& cfg) {
    cfg.validate();
    trace.validate();
    const std::size_t n = trace.size();
    if (n < 2) throw InvalidParameter("trace needs at least two samples");

    const vehicle::FullCar car(cfg.vehicle);
    const auto geom = cfg.geometry();
    const auto& sp = cfg.vehicle.spring;
    const double dt = trace.dt;

    vehicle::VehicleState state = car.equilibrium();
    if (mode == Mode::Hard)
        for (auto& s : state.springs) s = airspring::close_valve(s, sp, 0.0).state;

    estimator::LoadTransferEstimate est;
    std::array<controller::ControllerState, 4> ctl{};
    std::mt19937_64 noise_rng(cfg.harness.accel_noise_seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    RunResult res;
    res.mode = mode;
    TimeSeries& ts = res.series;
    for (auto* v : {&ts.t, &ts.phi, &ts.theta, &ts.z, &ts.az}) v->reserve(n);
    for (std::size_t i = 0; i < 4; ++i) {
        ts.stroke[i].reserve(n);
        ts.fz[i].reserve(n);
        ts.valve[i].reserve(n);
    }

    for (std::size_t k = 0; k < n; ++k) {
        const double t = trace.t[k];
        const vehicle::PlantInputs u = sample(trace, k);

        double ax_meas = u.ax, ay_meas = u.ay;
        if (cfg.harness.accel_noise > 0.0) {
            ax_meas += cfg.harness.accel_noise * noise(noise_rng);
            ay_meas += cfg.harness.accel_noise * noise(noise_rng);
        }
        const CornerArray fz = estimator::load_transfer(ax_meas, ay_meas, geom);
        est = estimator::filter_update(est, fz, dt, cfg.filter);

        const CornerArray strokes = car.strokes(state);

        if (mode == Mode::Basic || mode == Mode::Extended) {
            for (Corner c : kCorners) {
                const auto i = index(c);
                const controller::StepResult r =
                    mode == Mode::Basic
                        ? controller::basic_step(ctl[i], est.fz_fast[i], t, cfg.thresholds)
                        : controller::extended_step(ctl[i], est.fz_fast[i], est.fz_fast[i], est.fz_slow[i],
                                                    strokes[i], t, cfg.thresholds, cfg.extended);
                ctl[i] = r.state;
                if (r.valve == state.springs[i].valve) continue;

                Event ev;
                ev.t = t;
                ev.corner = c;
                ev.action = r.valve;
                ev.reason = r.reason;
                ev.stroke = strokes[i];
                ev.az_before = car.vertical_acceleration(state, u);
                if (r.valve == Valve::Open) {
                    const auto o = airspring::open_valve(state.springs[i], sp, strokes[i]);
                    state.springs[i] = o.state;
                    ev.kick = o.kick_force;
                } else {
                    state.springs[i] = airspring::close_valve(state.springs[i], sp, strokes[i]).state;
                }
                ev.az_after = car.vertical_acceleration(state, u);
                res.events.push_back(ev);
            }
        }

        ts.t.push_back(t);
        ts.phi.push_back(state.phi);
        ts.theta.push_back(state.theta);
        ts.z.push_back(state.z);
        ts.az.push_back(car.vertical_acceleration(state, u));
        for (std::size_t i = 0; i < 4; ++i) {
            ts.stroke[i].push_back(strokes[i]);
            ts.fz[i].push_back(fz[i]);
            ts.valve[i].push_back(state.springs[i].valve == Valve::Open ? 1 : 0);
        }

        if (k + 1 < n) {
            try {
                state = car.step(state, Interp{trace, k}, dt);
            } catch (const StrokeOutOfRange& e) {
                throw DivergenceError("stroke out of range at t=" + std::to_string(t) + ": " + e.what());
            } catch (const DivergenceError& e) {
                throw DivergenceError(std::string(mode_name(mode)) + " run diverged at t=" + std::to_string(t) +
                                      ": " + e.what());
            }
        }
    }

    res.metrics = compute_metrics(ts, res.events, trace.labels, cfg.harness);
    return res;
}

double steady_state_angle(const std::vector<double>& t, const std::vector<double>& angle,
                          const scenarios::PhaseLabel& phase, double window, double min_hold) {
    if (phase.hold_end - phase.hold_start < min_hold - 1e-9)
        throw InvalidParameter("phase '" + phase.name + "' holds less than the minimum steady window");
    const double lo = phase.hold_end - window;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] >= lo - 1e-9 && t[k] < phase.hold_end - 1e-9) {
            sum += std::abs(angle[k]);
            ++count;
        }
    }
    if (count == 0) throw InvalidParameter("phase '" + phase.name + "' lies outside the series");
    return sum / static_cast<double>(count);
}

PeakResult vertical_accel_peak(const std::vector<double>& t, const std::vector<double>& az, double t_open,
                               double window) {
    if (t.empty() || t_open < t.front() - 1e-9 || t_open > t.back() + 1e-9)
        throw InvalidParameter("opening time outside the series");
    PeakResult r;
    const double hi = t_open + window;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= t_open - 1e-9 && t[k] <= hi + 1e-9) r.value = std::max(r.value, std::abs(az[k]));
    r.truncated = hi > t.back() + 1e-9;
    return r;
}

MetricsReport compute_metrics(const TimeSeries& ts, const std::vector<Event>& events,
                              const std::vector<scenarios::PhaseLabel>& labels, const HarnessParams& hp) {
    MetricsReport m;
    for (const auto& ph : labels) {
        if (ph.hold_end - ph.hold_start < hp.min_hold - 1e-9) continue;
        m.phases.push_back({ph.name, steady_state_angle(ts.t, ts.phi, ph, hp.ss_window, hp.min_hold),
                            steady_state_angle(ts.t, ts.theta, ph, hp.ss_window, hp.min_hold)});
    }
    for (const auto& e : events) {
        if (e.action != Valve::Open) continue;
        const PeakResult p = vertical_accel_peak(ts.t, ts.az, e.t, hp.jz_window);
        m.openings.push_back({e.t, e.corner, p.value, p.truncated});
        if (p.value >= m.j_z) m.j_z = p.value;
        m.j_z_truncated = m.j_z_truncated || p.truncated;
    }
    if (m.openings.empty() && !labels.empty() && !ts.t.empty()) {
        const double t0 = std::min(labels.back().hold_end, ts.t.back());
        const PeakResult p = vertical_accel_peak(ts.t, ts.az, t0, hp.jz_window);
        m.j_z = p.value;
        m.j_z_truncated = p.truncated;
    }
    if (m.j_z_truncated) std::cerr << "warning: J_z window truncated at the end of the series\n";
    return m;
}

double ratio(double a, double b) {
    if (b == 0.0) return a == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return a / b;
}

double mean_post_first_ratio(const MetricsReport& mode, const MetricsReport& hard) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 1; i < mode.phases.size() && i < hard.phases.size(); ++i) {
        sum += ratio(mode.phases[i].j_phi, hard.phases[i].j_phi);
        ++count;
    }
    return count ? sum / count : 1.0;
}

CompareReport compare(const scenarios::ScenarioTrace& trace, const std::vector<Mode>& modes,
                      const SimConfig& cfg, bool parallel) {
    if (modes.empty()) throw InvalidParameter("compare needs at least one mode");
    std::vector<Mode> all = modes;
    const bool hard_requested = std::find(modes.begin(), modes.end(), Mode::Hard) != modes.end();
    if (!hard_requested) all.push_back(Mode::Hard);

    std::vector<RunResult> results;
    if (parallel) {
        std::vector<std::future<RunResult>> fut;
        for (Mode m : all) fut.push_back(std::async(std::launch::async, [&, m] { return run(trace, m, cfg); }));
        for (auto& f : fut) results.push_back(f.get());
    } else {
        for (Mode m : all) results.push_back(run(trace, m, cfg));
    }

    const MetricsReport hard =
        results[static_cast<std::size_t>(std::find(all.begin(), all.end(), Mode::Hard) - all.begin())].metrics;

    CompareReport rep;
    for (std::size_t r = 0; r < modes.size(); ++r) {
        const RunResult& res = results[r];
        const std::string name(mode_name(res.mode));
        const auto& mm = res.metrics;
        for (std::size_t i = 0; i < mm.phases.size(); ++i) {
            const double hphi = i < hard.phases.size() ? hard.phases[i].j_phi : 0.0;
            const double htheta = i < hard.phases.size() ? hard.phases[i].j_theta : 0.0;
            rep.rows.push_back({name, "j_phi", mm.phases[i].phase, mm.phases[i].j_phi, ratio(mm.phases[i].j_phi, hphi)});
            rep.rows.push_back(
                {name, "j_theta", mm.phases[i].phase, mm.phases[i].j_theta, ratio(mm.phases[i].j_theta, htheta)});
        }
        rep.rows.push_back({name, "j_z", "all", mm.j_z, ratio(mm.j_z, hard.j_z)});
        if (mm.phases.size() > 1) {
            const double mr = mean_post_first_ratio(mm, hard);
            rep.rows.push_back({name, "j_phi_mean_ratio", "post_first", mr, mr});
        }
    }
    results.resize(modes.size());
    rep.runs = std::move(results);
    return rep;
}

}  // namespace mcsim::harness
