#pragma once

// 7-DOF full car: sprung body heave/roll/pitch on four air-spring corners and
// four unsprung masses with linear tyres.
//
// Coordinates are positive upward. Positive roll lowers the left side,
// positive pitch lowers the nose. Stroke is compression positive:
//   stroke_i = z_us_i - (z - lat_i * T/2 * phi - lon_i * d_i * theta)
// with lat = +1 left / -1 right, lon = +1 front / -1 rear, d = a front / b rear.
// Everything is written as deviation from the static equilibrium, so gravity
// only enters through the static corner loads.

#include <array>
#include <functional>

#include "mcsim/airspring.hpp"
#include "mcsim/corner.hpp"
#include "mcsim/rk4.hpp"

namespace mcsim::vehicle {

struct VehicleParams {
    double sprung_mass = 2100.0;       // kg
    double wheelbase = 3.3;            // m
    double track = 1.6;                // m
    double cog_height = 0.56;          // m
    double roll_inertia = 600.0;       // kg m^2
    double pitch_inertia = 2500.0;     // kg m^2
    double unsprung_mass = 50.0;       // kg per corner
    double tire_stiffness = 250.0e3;   // N/m
    double front_axle_distance = 1.65; // a, m
    double rear_axle_distance = 1.65;  // b, m
    double gravity = 9.81;             // m/s^2
    airspring::SpringParams spring{};

    void validate() const;
    double axle_distance(Corner c) const {
        return is_front(c) ? front_axle_distance : rear_axle_distance;
    }
    /// Static vertical load carried by one corner spring.
    double static_corner_load(Corner c) const;
};

using SpringStates = std::array<airspring::SpringState, 4>;

struct VehicleState {
    double z = 0.0, z_dot = 0.0;
    double phi = 0.0, phi_dot = 0.0;
    double theta = 0.0, theta_dot = 0.0;
    CornerArray z_us{};
    CornerArray z_us_dot{};
    SpringStates springs{};
};

struct PlantInputs {
    double ax = 0.0;  // m/s^2
    double ay = 0.0;  // m/s^2
    CornerArray road{};  // m
};

/// Continuous part of the state: z, phi, theta, z_us[4], then the rates.
using Coords = StateVec<14>;

Coords pack(const VehicleState& s);
void unpack(const Coords& x, VehicleState& s);

class FullCar {
public:
    explicit FullCar(const VehicleParams& params);

    const VehicleParams& params() const { return params_; }

    /// Flat, motionless state with all springs at equilibrium, valves open.
    VehicleState equilibrium() const;

    /// Spring force each corner carries at the equilibrium state.
    const CornerArray& static_forces() const { return static_forces_; }

    double corner_stroke(const VehicleState& s, Corner c) const;
    CornerArray strokes(const VehicleState& s) const;
    CornerArray stroke_rates(const VehicleState& s) const;

    /// Elastic plus damper force each corner applies upward on the body.
    CornerArray suspension_forces(const VehicleState& s) const;

    Coords derivative(const Coords& x, const SpringStates& springs, const PlantInputs& in) const;

    /// One RK4 step. `inputs(tau)` gives the exogenous inputs at offset tau in [0, dt].
    /// Throws DivergenceError on non-finite state or |phi|, |theta| >= max_angle.
    VehicleState step(const VehicleState& s, const std::function<PlantInputs(double)>& inputs,
                      double dt) const;
    VehicleState step(const VehicleState& s, const PlantInputs& in, double dt) const;

    /// Heave acceleration from the current force balance.
    double vertical_acceleration(const VehicleState& s, const PlantInputs& in) const;

    /// Kinetic plus spring and tyre potential energy relative to equilibrium.
    double mechanical_energy(const VehicleState& s, const CornerArray& road) const;

    static constexpr double max_angle = 0.2;
    static constexpr double max_dt = 2e-3;

private:
    CornerArray strokes_from(const Coords& x) const;

    VehicleParams params_;
    CornerArray static_forces_{};
    SpringStates initial_springs_{};
};

}  // namespace mcsim::vehicle
