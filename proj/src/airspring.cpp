#include "mcsim/airspring.hpp"

#include <cmath>
#include <string>

#include "mcsim/errors.hpp"

namespace mcsim::airspring {

void SpringParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParameter(std::string("spring parameter must be positive: ") + name);
    };
    positive(gamma, "gamma");
    positive(area, "area");
    positive(v_main_0, "v_main_0");
    positive(v_aux, "v_aux");
    positive(p_atm, "p_atm");
    positive(damping_c, "damping_c");
    if (gamma < 1.0) throw InvalidParameter("spring parameter gamma must be >= 1");
}

SpringState init_at_equilibrium(const SpringParams& params, double static_load) {
    params.validate();
    if (!(static_load > 0.0) || !std::isfinite(static_load))
        throw InvalidParameter("static load must be positive");
    const double p_bar = params.p_atm + static_load / params.area;
    SpringState s;
    s.valve = Valve::Open;
    s.p_ref = p_bar;
    s.v_ref = params.v_main_0 + params.v_aux;
    s.p_aux_frozen = p_bar;
    s.stroke_at_close = 0.0;
    return s;
}

double main_volume(const SpringParams& params, double stroke) {
    const double v = params.v_main_0 - params.area * stroke;
    if (!(v > 0.0))
        throw StrokeOutOfRange("stroke " + std::to_string(stroke) + " m collapses the main chamber");
    return v;
}

double active_volume(const SpringState& state, const SpringParams& params, double stroke) {
    const double vm = main_volume(params, stroke);
    return state.valve == Valve::Open ? vm + params.v_aux : vm;
}

double main_pressure(const SpringState& state, const SpringParams& params, double stroke) {
    return state.p_ref * std::pow(state.v_ref / active_volume(state, params, stroke), params.gamma);
}

double linearized_stiffness(double p_bar, const SpringParams& params, double total_volume) {
    if (p_bar < 0.0 || !(total_volume > 0.0))
        throw InvalidParameter("linearized_stiffness needs p >= 0 and V > 0");
    return params.gamma * p_bar * params.area * params.area / total_volume;
}

double local_stiffness(const SpringState& state, const SpringParams& params, double stroke) {
    return linearized_stiffness(main_pressure(state, params, stroke), params,
                                active_volume(state, params, stroke));
}

double elastic_force(const SpringState& state, const SpringParams& params, double stroke) {
    return (main_pressure(state, params, stroke) - params.p_atm) * params.area;
}

double elastic_energy(const SpringState& state, const SpringParams& params, double stroke) {
    // integral of (p_ref (v_ref/V)^g - p_atm) A ds with dV = -A ds
    const double v0 = active_volume(state, params, 0.0);
    const double v1 = active_volume(state, params, stroke);
    const double g = params.gamma;
    const double c = state.p_ref * std::pow(state.v_ref, g);
    double gas;
    if (g == 1.0) {
        gas = c * std::log(v0 / v1);
    } else {
        gas = c * (std::pow(v1, 1.0 - g) - std::pow(v0, 1.0 - g)) / (g - 1.0);
    }
    return gas - params.p_atm * params.area * stroke;
}

OpenResult open_valve(const SpringState& state, const SpringParams& params, double stroke) {
    if (state.valve == Valve::Open) return {state, 0.0, false};

    const double vm = main_volume(params, stroke);
    const double p_main = main_pressure(state, params, stroke);
    const double v_total = vm + params.v_aux;
    const double p_mix = (p_main * vm + state.p_aux_frozen * params.v_aux) / v_total;

    SpringState next = state;
    next.valve = Valve::Open;
    next.p_ref = p_mix;
    next.v_ref = v_total;
    next.p_aux_frozen = p_mix;
    return {next, (p_mix - p_main) * params.area, true};
}

CloseResult close_valve(const SpringState& state, const SpringParams& params, double stroke) {
    if (state.valve == Valve::Closed) return {state, false};

    const double p = main_pressure(state, params, stroke);
    SpringState next = state;
    next.valve = Valve::Closed;
    next.p_ref = p;
    next.v_ref = main_volume(params, stroke);
    next.p_aux_frozen = p;
    next.stroke_at_close = stroke;
    return {next, true};
}

double damper_force(const SpringParams& params, double elongation_rate) {
    return -params.damping_c * elongation_rate;
}

std::vector<MapPoint> export_elastic_map(const SpringParams& params, double static_load,
                                         Valve initial_valve, std::span<const double> stroke_grid,
                                         std::span<const MapEvent> events) {
    SpringState s = init_at_equilibrium(params, static_load);
    if (initial_valve == Valve::Closed) s = close_valve(s, params, 0.0).state;

    for (const MapEvent& e : events) {
        if (e.target == Valve::Open)
            s = open_valve(s, params, e.stroke).state;
        else
            s = close_valve(s, params, e.stroke).state;
    }

    std::vector<MapPoint> out;
    out.reserve(stroke_grid.size());
    for (double dz : stroke_grid) out.push_back({dz, elastic_force(s, params, dz)});
    return out;
}

std::vector<double> stroke_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) throw InvalidParameter("stroke grid needs hi > lo and >= 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
    g.back() = hi;
    return g;
}

}  // namespace mcsim::airspring
