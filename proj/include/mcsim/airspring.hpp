#pragma once

// Multichamber air spring with one auxiliary reservoir behind an on/off valve.
//
// Stroke convention: positive stroke is compression. The elastic force is the
// gauge pressure of the main chamber times the piston area, positive when it
// pushes the body up.
//
// Each gas body (main+aux when the valve is open, main alone when closed)
// evolves polytropically from the reference captured at its last valve event.
// Opening mixes the two chambers isothermally by volume-weighted pressure.

#include <span>
#include <vector>

namespace mcsim::airspring {

struct SpringParams {
    double gamma = 1.4;          // polytropic coefficient [-]
    double area = 0.0133;        // piston area [m^2]
    double v_main_0 = 1.4e-3;    // main chamber volume at zero stroke [m^3]
    double v_aux = 1.53e-3;      // auxiliary chamber volume [m^3]
    double p_atm = 101325.0;     // ambient pressure [Pa]
    double damping_c = 1600.0;   // damper coefficient [N s/m]

    /// Largest compression stroke before the main chamber collapses.
    double max_compression() const { return v_main_0 / area; }

    /// Throws InvalidParameter when a field is out of its physical domain.
    void validate() const;
};

enum class Valve { Open, Closed };

struct SpringState {
    Valve valve = Valve::Open;
    double p_ref = 0.0;            // absolute pressure of the active gas body at its reference [Pa]
    double v_ref = 0.0;            // volume of the active gas body at its reference [m^3]
    double p_aux_frozen = 0.0;     // auxiliary chamber pressure while closed [Pa]
    double stroke_at_close = 0.0;  // stroke at the last closing instant [m]
};

/// Open-valve state whose gauge pressure carries `static_load` at zero stroke.
SpringState init_at_equilibrium(const SpringParams& params, double static_load);

/// v_main_0 - area * stroke. Throws StrokeOutOfRange if non-positive.
double main_volume(const SpringParams& params, double stroke);

/// Volume of the gas body currently coupled to the piston.
double active_volume(const SpringState& state, const SpringParams& params, double stroke);

/// Absolute pressure of the main chamber at `stroke`.
double main_pressure(const SpringState& state, const SpringParams& params, double stroke);

/// Linearised stiffness gamma * p * A^2 / V of a pneumatic spring.
double linearized_stiffness(double p_bar, const SpringParams& params, double total_volume);

/// Stiffness of the given state at `stroke`, i.e. the analytic slope of elastic_force.
double local_stiffness(const SpringState& state, const SpringParams& params, double stroke);

double elastic_force(const SpringState& state, const SpringParams& params, double stroke);

/// Work done against the elastic force from stroke 0 to `stroke` with the valve
/// state held fixed. Used for energy bookkeeping in the plant.
double elastic_energy(const SpringState& state, const SpringParams& params, double stroke);

struct OpenResult {
    SpringState state;
    double kick_force = 0.0;  // elastic force after minus before [N]
    bool switched = false;    // false when the valve was already open
};

struct CloseResult {
    SpringState state;
    bool switched = false;  // false when the valve was already closed
};

OpenResult open_valve(const SpringState& state, const SpringParams& params, double stroke);
CloseResult close_valve(const SpringState& state, const SpringParams& params, double stroke);

/// Viscous damper force -c * elongation_rate (opposes stroke elongation).
double damper_force(const SpringParams& params, double elongation_rate);

struct MapPoint {
    double stroke;
    double force;
};

struct MapEvent {
    double stroke;
    Valve target;  // Open or Closed
};

/// Static stroke-force map of a spring that starts at equilibrium with the
/// given valve configuration (Closed means closed at zero stroke) and then
/// undergoes `events` in order, each applied at its own stroke.
std::vector<MapPoint> export_elastic_map(const SpringParams& params, double static_load,
                                         Valve initial_valve, std::span<const double> stroke_grid,
                                         std::span<const MapEvent> events = {});

/// Evenly spaced grid with `points` samples over [lo, hi].
std::vector<double> stroke_grid(double lo, double hi, int points);

}  // namespace mcsim::airspring
