#include "mcsim/vehicle.hpp"

#include <cmath>
#include <string>

#include "mcsim/errors.hpp"

namespace mcsim::vehicle {

namespace {
enum : std::size_t { kZ = 0, kPhi = 1, kTheta = 2, kZus = 3, kZd = 7, kPhid = 8, kThetad = 9, kZusd = 10 };
}

void VehicleParams::validate() const {
    const double vals[] = {sprung_mass,    wheelbase,     track,          cog_height,
                           roll_inertia,   pitch_inertia, unsprung_mass,  tire_stiffness,
                           front_axle_distance, rear_axle_distance, gravity};
    for (double v : vals)
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameter("vehicle parameters must be positive");
    if (std::abs(front_axle_distance + rear_axle_distance - wheelbase) > 1e-9 * wheelbase)
        throw InvalidParameter("front and rear axle distances must add up to the wheelbase");
    spring.validate();
}

double VehicleParams::static_corner_load(Corner c) const {
    // axle load split by lever arms, then halved per side
    const double other = is_front(c) ? rear_axle_distance : front_axle_distance;
    return sprung_mass * gravity * other / (2.0 * wheelbase);
}

Coords pack(const VehicleState& s) {
    Coords x{};
    x[kZ] = s.z;
    x[kPhi] = s.phi;
    x[kTheta] = s.theta;
    x[kZd] = s.z_dot;
    x[kPhid] = s.phi_dot;
    x[kThetad] = s.theta_dot;
    for (std::size_t i = 0; i < 4; ++i) {
        x[kZus + i] = s.z_us[i];
        x[kZusd + i] = s.z_us_dot[i];
    }
    return x;
}

void unpack(const Coords& x, VehicleState& s) {
    s.z = x[kZ];
    s.phi = x[kPhi];
    s.theta = x[kTheta];
    s.z_dot = x[kZd];
    s.phi_dot = x[kPhid];
    s.theta_dot = x[kThetad];
    for (std::size_t i = 0; i < 4; ++i) {
        s.z_us[i] = x[kZus + i];
        s.z_us_dot[i] = x[kZusd + i];
    }
}

FullCar::FullCar(const VehicleParams& params) : params_(params) {
    params_.validate();
    for (Corner c : kCorners) {
        const auto i = index(c);
        initial_springs_[i] = airspring::init_at_equilibrium(params_.spring, params_.static_corner_load(c));
        // use the evaluated force so equilibrium is an exact fixed point
        static_forces_[i] = airspring::elastic_force(initial_springs_[i], params_.spring, 0.0);
    }
}

VehicleState FullCar::equilibrium() const {
    VehicleState s;
    s.springs = initial_springs_;
    return s;
}

namespace {
// body-side vertical displacement at a corner (same arithmetic for both sides so mirroring is exact)
inline double body_corner(double z, double phi, double theta, double half_track, double d, Corner c) {
    return z - lateral_sign(c) * (half_track * phi) - longitudinal_sign(c) * (d * theta);
}
}  // namespace

CornerArray FullCar::strokes_from(const Coords& x) const {
    CornerArray out{};
    const double ht = 0.5 * params_.track;
    for (Corner c : kCorners) {
        const auto i = index(c);
        out[i] = x[kZus + i] - body_corner(x[kZ], x[kPhi], x[kTheta], ht, params_.axle_distance(c), c);
    }
    return out;
}

double FullCar::corner_stroke(const VehicleState& s, Corner c) const {
    return s.z_us[index(c)] -
           body_corner(s.z, s.phi, s.theta, 0.5 * params_.track, params_.axle_distance(c), c);
}

CornerArray FullCar::strokes(const VehicleState& s) const { return strokes_from(pack(s)); }

CornerArray FullCar::stroke_rates(const VehicleState& s) const {
    CornerArray out{};
    const double ht = 0.5 * params_.track;
    for (Corner c : kCorners) {
        const auto i = index(c);
        out[i] = s.z_us_dot[i] -
                 body_corner(s.z_dot, s.phi_dot, s.theta_dot, ht, params_.axle_distance(c), c);
    }
    return out;
}

CornerArray FullCar::suspension_forces(const VehicleState& s) const {
    const CornerArray dz = strokes(s);
    const CornerArray dzd = stroke_rates(s);
    CornerArray f{};
    for (std::size_t i = 0; i < 4; ++i)
        f[i] = airspring::elastic_force(s.springs[i], params_.spring, dz[i]) +
               airspring::damper_force(params_.spring, -dzd[i]);
    return f;
}

Coords FullCar::derivative(const Coords& x, const SpringStates& springs, const PlantInputs& in) const {
    const VehicleParams& p = params_;
    const double ht = 0.5 * p.track;
    const CornerArray dz = strokes_from(x);

    CornerArray df{};
    for (Corner c : kCorners) {
        const auto i = index(c);
        const double rate =
            x[kZusd + i] - body_corner(x[kZd], x[kPhid], x[kThetad], ht, p.axle_distance(c), c);
        const double f = airspring::elastic_force(springs[i], p.spring, dz[i]) +
                         airspring::damper_force(p.spring, -rate);
        df[i] = f - static_forces_[i];
    }
    constexpr auto FL = 0, FR = 1, RL = 2, RR = 3;

    Coords d{};
    d[kZ] = x[kZd];
    d[kPhi] = x[kPhid];
    d[kTheta] = x[kThetad];
    for (std::size_t i = 0; i < 4; ++i) d[kZus + i] = x[kZusd + i];

    d[kZd] = ((df[FL] + df[FR]) + (df[RL] + df[RR])) / p.sprung_mass;
    d[kPhid] = (-ht * ((df[FL] - df[FR]) + (df[RL] - df[RR])) - p.sprung_mass * in.ay * p.cog_height) /
               p.roll_inertia;
    d[kThetad] = (-(p.front_axle_distance * (df[FL] + df[FR]) - p.rear_axle_distance * (df[RL] + df[RR])) -
                  p.sprung_mass * in.ax * p.cog_height) /
                 p.pitch_inertia;
    for (std::size_t i = 0; i < 4; ++i)
        d[kZusd + i] = (p.tire_stiffness * (in.road[i] - x[kZus + i]) - df[i]) / p.unsprung_mass;
    return d;
}

VehicleState FullCar::step(const VehicleState& s, const std::function<PlantInputs(double)>& inputs,
                           double dt) const {
    if (!(dt > 0.0) || dt > max_dt) throw InvalidParameter("plant step needs 0 < dt <= 2 ms");
    const Coords x = pack(s);
    for (double v : x)
        if (!std::isfinite(v)) throw DivergenceError("plant state is non-finite");
    // evaluate the midpoint inputs once; RK4 asks for tau = dt/2 twice
    const PlantInputs u0 = inputs(0.0), um = inputs(0.5 * dt), u1 = inputs(dt);
    for (const PlantInputs* u : {&u0, &um, &u1}) {
        bool ok = std::isfinite(u->ax) && std::isfinite(u->ay);
        for (double r : u->road) ok = ok && std::isfinite(r);
        if (!ok) throw DivergenceError("non-finite plant input");
    }
    const Coords next = rk4_step<14>(
        [&](double tau, const Coords& y) {
            const PlantInputs& u = tau == 0.0 ? u0 : (tau == dt ? u1 : um);
            return derivative(y, s.springs, u);
        },
        x, dt);

    for (double v : next)
        if (!std::isfinite(v)) throw DivergenceError("plant state became non-finite");
    if (std::abs(next[kPhi]) >= max_angle || std::abs(next[kTheta]) >= max_angle)
        throw DivergenceError("body angle left the small-angle range (phi=" + std::to_string(next[kPhi]) +
                              ", theta=" + std::to_string(next[kTheta]) + ")");

    VehicleState out = s;
    unpack(next, out);
    return out;
}

VehicleState FullCar::step(const VehicleState& s, const PlantInputs& in, double dt) const {
    return step(s, [&](double) { return in; }, dt);
}

double FullCar::vertical_acceleration(const VehicleState& s, const PlantInputs& in) const {
    return derivative(pack(s), s.springs, in)[kZd];
}

double FullCar::mechanical_energy(const VehicleState& s, const CornerArray& road) const {
    const VehicleParams& p = params_;
    double e = 0.5 * p.sprung_mass * s.z_dot * s.z_dot + 0.5 * p.roll_inertia * s.phi_dot * s.phi_dot +
               0.5 * p.pitch_inertia * s.theta_dot * s.theta_dot;
    const CornerArray dz = strokes(s);
    for (std::size_t i = 0; i < 4; ++i) {
        e += 0.5 * p.unsprung_mass * s.z_us_dot[i] * s.z_us_dot[i];
        e += airspring::elastic_energy(s.springs[i], p.spring, dz[i]) - static_forces_[i] * dz[i];
        const double tyre = s.z_us[i] - road[i];
        e += 0.5 * p.tire_stiffness * tyre * tyre;
    }
    return e;
}

}  // namespace mcsim::vehicle
