#include <gtest/gtest.h>

#include <cmath>

#include "mcsim/errors.hpp"
#include "mcsim/vehicle.hpp"
#include "test_util.hpp"

using namespace mcsim;
using namespace mcsim::vehicle;

namespace {

VehicleState settle(const FullCar& car, VehicleState s, const PlantInputs& u, double seconds, double dt = 1e-3) {
    const int n = static_cast<int>(std::lround(seconds / dt));
    for (int k = 0; k < n; ++k) s = car.step(s, u, dt);
    return s;
}

VehicleState all_closed(const FullCar& car) {
    VehicleState s = car.equilibrium();
    for (auto& sp : s.springs) sp = airspring::close_valve(sp, car.params().spring, 0.0).state;
    return s;
}

}  // namespace

TEST(VehicleParamsTest, DefaultsValidAndAxleSplitChecked) {
    VehicleParams p;
    EXPECT_NO_THROW(p.validate());
    EXPECT_NEAR(p.static_corner_load(Corner::FL), 5150.25, 1e-9);
    p.front_axle_distance = 1.0;
    EXPECT_THROW(p.validate(), InvalidParameter);
    p = {};
    p.sprung_mass = -1;
    EXPECT_THROW(p.validate(), InvalidParameter);
}

TEST(VehicleParamsTest, UnequalAxleSplitSumsToWeight) {
    VehicleParams p;
    p.front_axle_distance = 1.5;
    p.rear_axle_distance = 1.8;
    double sum = 0;
    for (Corner c : kCorners) sum += p.static_corner_load(c);
    EXPECT_NEAR(sum, p.sprung_mass * p.gravity, 1e-9);
    EXPECT_GT(p.static_corner_load(Corner::FL), p.static_corner_load(Corner::RL));
}

TEST(VehicleStroke, FlatStaticStateIsZero) {
    const FullCar car(VehicleParams{});
    const VehicleState s = car.equilibrium();
    for (Corner c : kCorners) EXPECT_EQ(car.corner_stroke(s, c), 0.0);
}

TEST(VehicleStroke, PureRollSplitsLeftRight) {
    const FullCar car(VehicleParams{});
    VehicleState s = car.equilibrium();
    s.phi = 0.01;
    EXPECT_NEAR(car.corner_stroke(s, Corner::FL), 0.008, 1e-15);
    EXPECT_NEAR(car.corner_stroke(s, Corner::RL), 0.008, 1e-15);
    EXPECT_NEAR(car.corner_stroke(s, Corner::FR), -0.008, 1e-15);
    EXPECT_NEAR(car.corner_stroke(s, Corner::RR), -0.008, 1e-15);
}

TEST(VehicleStroke, PureHeaveEqualOnAllCorners) {
    const FullCar car(VehicleParams{});
    VehicleState s = car.equilibrium();
    s.z = 0.01;  // body up: every corner extends
    for (Corner c : kCorners) EXPECT_DOUBLE_EQ(car.corner_stroke(s, c), -0.01);
}

TEST(VehicleStroke, PitchNoseDownCompressesFront) {
    const FullCar car(VehicleParams{});
    VehicleState s = car.equilibrium();
    s.theta = 0.01;
    EXPECT_NEAR(car.corner_stroke(s, Corner::FL), 0.0165, 1e-15);
    EXPECT_NEAR(car.corner_stroke(s, Corner::RR), -0.0165, 1e-15);
}

TEST(VehicleStep, EquilibriumIsFixedPoint) {
    const FullCar car(VehicleParams{});
    for (const VehicleState start : {car.equilibrium(), all_closed(car)}) {
        VehicleState s = start;
        for (int k = 0; k < 1000; ++k) {
            const VehicleState n = car.step(s, PlantInputs{}, 1e-3);
            const Coords a = pack(s), b = pack(n);
            for (std::size_t i = 0; i < a.size(); ++i) ASSERT_LE(std::abs(a[i] - b[i]), 1e-12);
            s = n;
        }
        const Coords d = car.derivative(pack(start), start.springs, PlantInputs{});
        for (double v : d) EXPECT_EQ(v, 0.0);
    }
}

TEST(VehicleStep, BrakingSettlesToStaticBalanceSoft) {
    const FullCar car(VehicleParams{});
    PlantInputs u;
    u.ax = -2.0;
    const VehicleState s = settle(car, car.equilibrium(), u, 12.0);
    const auto x = testutil::static_balance(car.params(), s.springs, -2.0, 0.0);
    EXPECT_GT(s.theta, 0.0);  // nose down
    EXPECT_NEAR(s.theta / x[2], 1.0, 0.01);
    EXPECT_NEAR(std::abs(s.phi), 0.0, 1e-12);
}

TEST(VehicleStep, BrakingSettlesToStaticBalanceHard) {
    const FullCar car(VehicleParams{});
    PlantInputs u;
    u.ax = -2.0;
    const VehicleState s = settle(car, all_closed(car), u, 12.0);
    const auto x = testutil::static_balance(car.params(), s.springs, -2.0, 0.0);
    EXPECT_NEAR(s.theta / x[2], 1.0, 0.01);
}

TEST(VehicleStep, CorneringSettlesToStaticBalance) {
    const FullCar car(VehicleParams{});
    PlantInputs u;
    u.ax = 1.0;
    u.ay = 2.0;
    const VehicleState s = settle(car, car.equilibrium(), u, 12.0);
    const auto x = testutil::static_balance(car.params(), s.springs, 1.0, 2.0);
    EXPECT_LT(s.phi, 0.0);  // positive ay loads the right side
    EXPECT_NEAR(s.phi / x[1], 1.0, 0.01);
    EXPECT_NEAR(s.theta / x[2], 1.0, 0.01);
}

TEST(VehicleStep, HardPitchSmallerThanSoftBySeriesStiffnessRatio) {
    const FullCar car(VehicleParams{});
    PlantInputs u;
    u.ax = -2.0;
    const double soft = settle(car, car.equilibrium(), u, 12.0).theta;
    const double hard = settle(car, all_closed(car), u, 12.0).theta;
    EXPECT_LT(std::abs(hard), std::abs(soft));

    const auto& sp = car.params().spring;
    const double pbar = car.equilibrium().springs[0].p_ref;
    const double ks = airspring::linearized_stiffness(pbar, sp, sp.v_main_0 + sp.v_aux);
    const double kh = airspring::linearized_stiffness(pbar, sp, sp.v_main_0);
    EXPECT_NEAR(ks / kh, 0.478, 0.001);  // spring-only ratio
    const double kt = car.params().tire_stiffness;
    const double series = (ks * kt / (ks + kt)) / (kh * kt / (kh + kt));
    EXPECT_NEAR(hard / soft, series, 0.02 * series);
}

TEST(VehicleAccel, ZeroAtEquilibrium) {
    const FullCar car(VehicleParams{});
    EXPECT_EQ(car.vertical_acceleration(car.equilibrium(), PlantInputs{}), 0.0);
}

TEST(VehicleAccel, KickAppearsAsForceOverMass) {
    const FullCar car(VehicleParams{});
    VehicleState s = all_closed(car);
    s.z = -0.01;  // every corner compressed by 1 cm with valves closed
    s.z_us = {0, 0, 0, 0};
    const double before = car.vertical_acceleration(s, PlantInputs{});
    const double stroke = car.corner_stroke(s, Corner::FL);
    const auto o = airspring::open_valve(s.springs[0], car.params().spring, stroke);
    ASSERT_NE(o.kick_force, 0.0);
    s.springs[0] = o.state;
    const double after = car.vertical_acceleration(s, PlantInputs{});
    EXPECT_NEAR(std::abs(after - before), std::abs(o.kick_force) / car.params().sprung_mass, 1e-12);
}

TEST(VehicleAccel, SymmetricRoadStepMatchesQuarterCar) {
    const VehicleParams p{};
    const FullCar car(p);
    PlantInputs u;
    u.road = {0.01, 0.01, 0.01, 0.01};

    // independent quarter car: body M/4, same spring/damper/tyre
    const airspring::SpringState spring = car.equilibrium().springs[0];
    const double S = airspring::elastic_force(spring, p.spring, 0.0);
    const double mb = p.sprung_mass / 4.0, r = 0.01, dt = 1e-3;
    auto f = [&](const std::array<double, 4>& q) {
        const double dz = q[1] - q[0], dzd = q[3] - q[2];
        const double dF = airspring::elastic_force(spring, p.spring, dz) + p.spring.damping_c * dzd - S;
        return std::array<double, 4>{q[2], q[3], dF / mb, (p.tire_stiffness * (r - q[1]) - dF) / p.unsprung_mass};
    };
    std::array<double, 4> q{0, 0, 0, 0};
    VehicleState s = car.equilibrium();
    for (int k = 0; k < 2000; ++k) {
        const double az_full = car.vertical_acceleration(s, u);
        const double az_quarter = f(q)[2];
        ASSERT_NEAR(az_full, az_quarter, 1e-9 * (1.0 + std::abs(az_quarter))) << "k=" << k;
        ASSERT_NEAR(s.phi, 0.0, 1e-15);
        s = car.step(s, u, dt);
        const auto k1 = f(q);
        std::array<double, 4> t2, t3, t4;
        for (int i = 0; i < 4; ++i) t2[i] = q[i] + 0.5 * dt * k1[i];
        const auto k2 = f(t2);
        for (int i = 0; i < 4; ++i) t3[i] = q[i] + 0.5 * dt * k2[i];
        const auto k3 = f(t3);
        for (int i = 0; i < 4; ++i) t4[i] = q[i] + dt * k3[i];
        const auto k4 = f(t4);
        for (int i = 0; i < 4; ++i) q[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
}

TEST(VehicleProperty, PassiveFreeDecay) {
    const FullCar car(VehicleParams{});
    testutil::Gen gen(11);
    for (int trial = 0; trial < 5; ++trial) {
        VehicleState s = car.equilibrium();
        for (int i = 0; i < 4; ++i)
            if (gen.coin()) s.springs[i] = airspring::close_valve(s.springs[i], car.params().spring, 0.0).state;
        s.z = gen.uniform(-0.02, 0.02);
        s.phi = gen.uniform(-0.01, 0.01);
        s.theta = gen.uniform(-0.01, 0.01);
        s.z_dot = gen.uniform(-0.2, 0.2);
        for (auto& v : s.z_us) v = gen.uniform(-0.005, 0.005);
        const CornerArray road{};
        double e = car.mechanical_energy(s, road);
        const double e0 = e;
        ASSERT_GT(e0, 0.0);
        for (int k = 0; k < 3000; ++k) {
            s = car.step(s, PlantInputs{}, 1e-3);
            const double en = car.mechanical_energy(s, road);
            ASSERT_LE(en, e + 1e-10 * e0) << "trial " << trial << " step " << k;
            e = en;
        }
        EXPECT_LT(e, 0.05 * e0);
    }
}

TEST(VehicleProperty, MirrorSymmetryIsExact) {
    const FullCar car(VehicleParams{});
    testutil::Gen gen(5);
    std::vector<CornerArray> road(1500);
    for (std::size_t k = 0; k < road.size(); ++k)
        for (auto& r : road[k]) r = 0.003 * std::sin(0.01 * k * gen.uniform(0.5, 3.0) + gen.uniform(0, 6));
    VehicleState a = car.equilibrium(), b = car.equilibrium();
    // close one left and one right corner in mirrored fashion
    a.springs[0] = airspring::close_valve(a.springs[0], car.params().spring, 0.0).state;
    b.springs[1] = airspring::close_valve(b.springs[1], car.params().spring, 0.0).state;
    for (std::size_t k = 0; k < road.size(); ++k) {
        PlantInputs ua, ub;
        ua.ax = ub.ax = -1.0 * std::sin(0.002 * k);
        ua.ay = 2.0 * std::sin(0.003 * k);
        ub.ay = -ua.ay;
        ua.road = road[k];
        ub.road = {road[k][1], road[k][0], road[k][3], road[k][2]};
        a = car.step(a, ua, 1e-3);
        b = car.step(b, ub, 1e-3);
        ASSERT_EQ(a.phi, -b.phi);
        ASSERT_EQ(a.theta, b.theta);
        ASSERT_EQ(a.z, b.z);
        const auto sa = car.strokes(a), sb = car.strokes(b);
        for (Corner c : kCorners) ASSERT_EQ(sa[index(c)], sb[index(mirrored(c))]);
    }
    EXPECT_NE(a.phi, 0.0);
}

TEST(VehicleProperty, Rk4FourthOrder) {
    const FullCar car(VehicleParams{});
    auto input = [](double t) {
        PlantInputs u;
        u.ax = -2.0 * std::sin(3.0 * t);
        u.ay = 1.5 * std::sin(2.0 * t + 0.3);
        return u;
    };
    auto simulate = [&](double dt) {
        VehicleState s = car.equilibrium();
        const int n = static_cast<int>(std::lround(1.0 / dt));
        for (int k = 0; k < n; ++k) {
            const double t0 = k * dt;
            s = car.step(s, [&](double tau) { return input(t0 + tau); }, dt);
        }
        return pack(s);
    };
    const Coords x1 = simulate(2e-3), x2 = simulate(1e-3), x3 = simulate(5e-4);
    double e12 = 0, e23 = 0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        e12 = std::max(e12, std::abs(x1[i] - x2[i]));
        e23 = std::max(e23, std::abs(x2[i] - x3[i]));
    }
    const double order = std::log2(e12 / e23);
    EXPECT_NEAR(order, 4.0, 0.5) << "e12=" << e12 << " e23=" << e23;
}

TEST(VehicleProperty, ValveEventsLeaveCoordinatesContinuous) {
    const FullCar car(VehicleParams{});
    VehicleState s = car.equilibrium();
    PlantInputs u;
    u.ax = -3.0;
    s = settle(car, s, u, 0.5);
    const Coords before = pack(s);
    const CornerArray dz = car.strokes(s);
    for (std::size_t i = 0; i < 4; ++i) s.springs[i] = airspring::close_valve(s.springs[i], car.params().spring, dz[i]).state;
    EXPECT_EQ(pack(s), before);
    for (std::size_t i = 0; i < 4; ++i) s.springs[i] = airspring::open_valve(s.springs[i], car.params().spring, dz[i]).state;
    EXPECT_EQ(pack(s), before);
}

TEST(VehicleStep, RejectsBadTimeStep) {
    const FullCar car(VehicleParams{});
    EXPECT_THROW(car.step(car.equilibrium(), PlantInputs{}, 0.0), InvalidParameter);
    EXPECT_THROW(car.step(car.equilibrium(), PlantInputs{}, 3e-3), InvalidParameter);
}

TEST(VehicleStep, DivergenceDetected) {
    VehicleParams p;
    p.spring.v_main_0 = 0.1;  // keep strokes admissible so only the angle bound trips
    const FullCar car(p);
    VehicleState s = car.equilibrium();
    s.phi = 0.1995;
    s.phi_dot = 2.0;
    EXPECT_THROW(car.step(s, PlantInputs{}, 1e-3), DivergenceError);

    VehicleState n = car.equilibrium();
    n.z_dot = std::nan("");
    EXPECT_THROW(car.step(n, PlantInputs{}, 1e-3), DivergenceError);
    PlantInputs bad;
    bad.ax = std::nan("");
    EXPECT_THROW(car.step(car.equilibrium(), bad, 1e-3), DivergenceError);
}
