// Randomised invariants with seeded hand-rolled generators.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mcsim/airspring.hpp"
#include "mcsim/controller.hpp"
#include "mcsim/csv.hpp"
#include "mcsim/estimator.hpp"
#include "mcsim/harness.hpp"
#include "test_util.hpp"

using namespace mcsim;
using airspring::Valve;
using testutil::Gen;

namespace {
const airspring::SpringParams SP{};

airspring::SpringState random_state(Gen& g) {
    auto s = airspring::init_at_equilibrium(SP, g.uniform(1000, 9000));
    if (g.coin()) s = airspring::close_valve(s, SP, g.uniform(-0.04, 0.04)).state;
    return s;
}
}  // namespace

TEST(AirspringProperty, CloseIsForceContinuous) {
    Gen g(1);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        auto s = airspring::init_at_equilibrium(SP, g.uniform(500, 10000));
        // random history: a few open/close events before the measured close
        for (int j = g.integer(0, 3); j > 0; --j) {
            const double dz = g.uniform(-0.04, 0.04);
            s = s.valve == Valve::Open ? airspring::close_valve(s, SP, dz).state : airspring::open_valve(s, SP, dz).state;
        }
        if (s.valve == Valve::Closed) s = airspring::open_valve(s, SP, g.uniform(-0.04, 0.04)).state;
        const double dz = g.uniform(-0.05, 0.05);
        const double before = airspring::elastic_force(s, SP, dz);
        const double after = airspring::elastic_force(airspring::close_valve(s, SP, dz).state, SP, dz);
        worst = std::max(worst, std::abs(after - before));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(AirspringProperty, NoKickAfterReturningToClosingStroke) {
    Gen g(2);
    for (int i = 0; i < 2000; ++i) {
        const auto soft = airspring::init_at_equilibrium(SP, g.uniform(1000, 9000));
        const double sbar = g.uniform(-0.03, 0.03);
        auto s = airspring::close_valve(soft, SP, sbar).state;
        // loading cycle: force evaluations along a path do not change the closed state
        for (int j = 0; j < 5; ++j) (void)airspring::elastic_force(s, SP, g.uniform(-0.04, 0.04));
        const auto o = airspring::open_valve(s, SP, sbar);
        ASSERT_NEAR(o.kick_force, 0.0, 1e-9);
    }
}

TEST(AirspringProperty, OpenConservesGasMass) {
    Gen g(3);
    for (int i = 0; i < 5000; ++i) {
        auto s = airspring::close_valve(airspring::init_at_equilibrium(SP, g.uniform(1000, 9000)), SP,
                                        g.uniform(-0.03, 0.03))
                     .state;
        const double dz = g.uniform(-0.04, 0.04);
        const double vm = airspring::main_volume(SP, dz);
        const double before = airspring::main_pressure(s, SP, dz) * vm + s.p_aux_frozen * SP.v_aux;
        const auto o = airspring::open_valve(s, SP, dz);
        const double after = o.state.p_ref * (vm + SP.v_aux);
        ASSERT_NEAR(after, before, 1e-12 * before);
    }
}

TEST(AirspringProperty, FiniteDifferenceMatchesStiffnessLaw) {
    Gen g(4);
    for (int i = 0; i < 2000; ++i) {
        const auto s = random_state(g);
        const double dz = g.uniform(-0.04, 0.04);
        const double h = g.uniform(1e-6, 1e-4);
        const double fd = (airspring::elastic_force(s, SP, dz + h) - airspring::elastic_force(s, SP, dz - h)) / (2 * h);
        const double k = airspring::linearized_stiffness(airspring::main_pressure(s, SP, dz), SP,
                                                         airspring::active_volume(s, SP, dz));
        ASSERT_NEAR(fd / k, 1.0, 0.01);
    }
}

TEST(AirspringProperty, ProgressiveEverywhere) {
    Gen g(5);
    for (int i = 0; i < 5000; ++i) {
        const auto s = random_state(g);
        const double dz = g.uniform(-0.04, 0.04);
        const double d = g.uniform(1e-4, 0.02);
        const double f0 = airspring::elastic_force(s, SP, dz);
        ASSERT_GT(airspring::elastic_force(s, SP, dz + d) - f0, f0 - airspring::elastic_force(s, SP, dz - d));
    }
}

TEST(AirspringProperty, HardStifferAtMatchedForce) {
    Gen g(6);
    for (int i = 0; i < 2000; ++i) {
        const auto soft = airspring::init_at_equilibrium(SP, g.uniform(1000, 9000));
        const double dz = g.uniform(-0.04, 0.04);
        const auto hard = airspring::close_valve(soft, SP, dz).state;  // same force at dz
        ASSERT_GT(airspring::local_stiffness(hard, SP, dz), airspring::local_stiffness(soft, SP, dz));
    }
}

TEST(EstimatorProperty, ZeroSumAndSuperposition) {
    Gen g(7);
    const estimator::GeometryParams G{};
    for (int i = 0; i < 10000; ++i) {
        const double ax = g.uniform(-10, 10), ay = g.uniform(-10, 10);
        const auto f = estimator::load_transfer(ax, ay, G);
        ASSERT_EQ((f[0] + f[3]) + (f[1] + f[2]), 0.0);
        ASSERT_EQ(f[0] + f[1] + f[2] + f[3], 0.0);
        const double a = g.uniform(-3, 3), b = g.uniform(-3, 3);
        const auto fab = estimator::load_transfer(a * ax, b * ay, G);
        const auto fx = estimator::load_transfer(ax, 0, G), fy = estimator::load_transfer(0, ay, G);
        for (int c = 0; c < 4; ++c) ASSERT_NEAR(fab[c], a * fx[c] + b * fy[c], 1e-10 * (1 + std::abs(fab[c])));
    }
}

TEST(EstimatorProperty, MatchesMomentBalanceOracle) {
    Gen g(8);
    const estimator::GeometryParams G{};
    for (int i = 0; i < 1000; ++i) {
        const double ax = g.uniform(-10, 10), ay = g.uniform(-10, 10);
        // single-track model: axle load changes satisfy force and pitch-moment balance
        //   dF_front + dF_rear = 0,  L * dF_rear - M*ax*H = 0   (moments about the front contact)
        const double dF_rear = G.mass * ax * G.cog_height / G.wheelbase;
        const double dF_front = -dF_rear;
        // single-axle model: side load changes, T * dF_right - M*ay*H = 0
        const double dF_right = G.mass * ay * G.cog_height / G.track;
        const double dF_left = -dF_right;
        const double oracle[4] = {0.5 * dF_front + 0.5 * dF_left, 0.5 * dF_front + 0.5 * dF_right,
                                  0.5 * dF_rear + 0.5 * dF_left, 0.5 * dF_rear + 0.5 * dF_right};
        const auto f = estimator::load_transfer(ax, ay, G);
        // a few ulps of the largest term
        const double scale = std::abs(dF_rear) + std::abs(dF_right);
        for (int c = 0; c < 4; ++c) ASSERT_NEAR(f[c], oracle[c], 8 * 2.3e-16 * scale);
    }
}

TEST(ControllerProperty, DwellAlwaysRespected) {
    Gen g(9);
    const controller::Thresholds th{};
    for (int trial = 0; trial < 50; ++trial) {
        controller::ControllerState b, e;
        double last_b = -1e9, last_e = -1e9;
        for (int k = 0; k < 4000; ++k) {
            const double t = k * 1e-3;
            const double fz = g.uniform(-800, 800);
            const double slow = g.uniform(-800, 800);
            const auto rb = controller::basic_step(b, fz, t, th);
            const auto re = controller::extended_step(e, fz, fz, slow, g.uniform(-0.01, 0.01), t, th);
            if (rb.switched) {
                ASSERT_GE(t - last_b, 0.1 - 1e-9);
                last_b = t;
            }
            if (re.switched) {
                ASSERT_GE(t - last_e, 0.1 - 1e-9);
                last_e = t;
            }
            b = rb.state;
            e = re.state;
        }
    }
}

TEST(ControllerProperty, NoChatteringUnderBoundedNoise) {
    Gen g(10);
    const controller::Thresholds th{};
    const double band = (th.t1 - th.t2) / 2;
    for (int trial = 0; trial < 200; ++trial) {
        // constant level outside [t2, t1], noise below half the hysteresis band
        const bool high = g.coin();
        const double level = high ? g.uniform(th.t1 + band, 800) : g.uniform(0, th.t2 - band);
        const double sign = g.coin() ? 1 : -1;
        controller::ControllerState s;
        if (g.coin()) s.node = controller::Node::Hard;
        int transitions = 0;
        for (int k = 0; k < 3000; ++k) {
            const double fz = sign * (level + g.uniform(-0.99 * band, 0.99 * band));
            const auto r = controller::basic_step(s, fz, k * 1e-3, th);
            transitions += r.switched ? 1 : 0;
            s = r.state;
        }
        ASSERT_LE(transitions, 1);
    }
}

TEST(ControllerProperty, PulseAlwaysEndsHard) {
    Gen g(11);
    const controller::Thresholds th{};
    for (int trial = 0; trial < 200; ++trial) {
        controller::ControllerState s;
        s.node = controller::Node::ReopenPulse;
        s.last_switch = 0.0;
        s.stroke_at_close = 0.003;
        double t = 0;
        controller::StepResult r{};
        do {
            t += 1e-3;
            r = controller::extended_step(s, g.uniform(-800, 800), g.uniform(-800, 800), g.uniform(-800, 800),
                                          g.uniform(-0.01, 0.01), t, th);
            s = r.state;
        } while (s.node == controller::Node::ReopenPulse && t < 1.0);
        ASSERT_EQ(s.node, controller::Node::Hard);
        ASSERT_NEAR(t, 0.1, 1e-9);
    }
}

TEST(ControllerProperty, RecrossOpeningsAreKickFree) {
    Gen g(12);
    for (int trial = 0; trial < 6; ++trial) {
        auto tr = scenarios::make_braking({});
        if (trial > 0) {
            scenarios::RoadNoiseSpec rs;
            rs.amplitude = g.uniform(0.0, 0.003);
            rs.seed = static_cast<std::uint64_t>(trial);
            tr.road = scenarios::make_road_noise(rs, tr.size(), tr.dt);
        }
        const auto r = harness::run(tr, harness::Mode::Extended, {});
        for (const auto& e : r.events)
            if (e.reason == controller::OpenReason::Recross)
                EXPECT_LT(std::abs(e.kick), SP.area * 1000.0) << "trial " << trial;
    }
}

TEST(DeterminismProperty, TraceAndRunAreBitIdentical) {
    Gen g(13);
    for (int trial = 0; trial < 3; ++trial) {
        scenarios::ChicaneSpec c;
        c.ay_amp = g.uniform(1.0, 3.0);
        auto tr = scenarios::make_chicane(c);
        scenarios::RoadNoiseSpec rs;
        rs.amplitude = 0.004;
        rs.seed = static_cast<std::uint64_t>(g.integer(1, 1000));
        tr.road = scenarios::make_road_noise(rs, tr.size(), tr.dt);
        auto tr2 = scenarios::make_chicane(c);
        tr2.road = scenarios::make_road_noise(rs, tr2.size(), tr2.dt);
        ASSERT_EQ(tr.ay, tr2.ay);
        ASSERT_EQ(tr.road, tr2.road);
        harness::SimConfig cfg;
        cfg.harness.accel_noise = 0.2;
        const auto a = harness::run(tr, harness::Mode::Extended, cfg);
        const auto b = harness::run(tr2, harness::Mode::Extended, cfg);
        std::ostringstream sa, sb;
        csv::write_timeseries(sa, a.series);
        csv::write_events(sa, a.events);
        csv::write_timeseries(sb, b.series);
        csv::write_events(sb, b.events);
        ASSERT_EQ(sa.str(), sb.str());
    }
}
