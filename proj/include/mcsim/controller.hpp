#pragma once

// Per-corner valve switching state machines.
//
// basic:    Soft -> Hard when |fz| > t1, Hard -> Soft when |fz| <= t2.
// extended: adds a kick-avoidance cycle (Hard -> ArmedOpen -> Soft once the
//           stroke recrosses the closing stroke, or after a backup timeout)
//           and an inversion cycle (Hard/ArmedOpen -> ReopenPulse -> Hard,
//           a brief open that re-closes at the earliest allowed instant).
// Every transition that moves the valve honours min_switch_interval.

#include <limits>
#include <string_view>

#include "mcsim/airspring.hpp"

namespace mcsim::controller {

struct Thresholds {
    double t1 = 300.0;                 // closing threshold, N
    double t2 = 150.0;                 // opening threshold, N
    double t3 = 200.0;                 // inversion modulus threshold, N
    double stroke_tol = 1e-3;          // m
    double backup_timeout = 2.0;       // s
    double min_switch_interval = 0.1;  // s

    void validate() const;
};

enum class Node { Soft, Hard, ArmedOpen, ReopenPulse };

enum class OpenReason { None, Threshold, Recross, Backup, Pulse };

struct ControllerState {
    Node node = Node::Soft;
    double stroke_at_close = 0.0;
    double last_switch = -std::numeric_limits<double>::infinity();
    double armed_since = 0.0;
    double prev_stroke = 0.0;
    int load_sign = 0;  // sign of the load that caused the last closing
    bool has_prev = false;
};

struct StepResult {
    ControllerState state;
    airspring::Valve valve = airspring::Valve::Open;  // commanded position after this step
    bool switched = false;                            // valve command changed this step
    OpenReason reason = OpenReason::None;             // set when the step opened the valve
};

struct ExtendedOptions {
    bool kick_avoidance = true;
    bool inversion = true;
};

/// Valve position implied by a node.
airspring::Valve commanded_valve(Node n);

/// True once min_switch_interval has elapsed since the last switch.
bool dwell_elapsed(const ControllerState& cs, double t, const Thresholds& th);

StepResult basic_step(const ControllerState& cs, double fz, double t, const Thresholds& th);

/// `fz_threshold` drives the t1/t2 comparisons, `fz_fast`/`fz_slow` feed the
/// inversion detector, `stroke` is this corner's current stroke.
StepResult extended_step(const ControllerState& cs, double fz_threshold, double fz_fast, double fz_slow,
                         double stroke, double t, const Thresholds& th, const ExtendedOptions& opts = {});

/// Has the stroke crossed (or landed on) the stored closing stroke at this step?
bool stroke_recrossed(double stroke, double prev_stroke, double stroke_at_close, double tol);

std::string_view node_name(Node n);
std::string_view reason_name(OpenReason r);

}  // namespace mcsim::controller
