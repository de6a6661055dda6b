#include "mcsim/controller.hpp"

#include <cmath>

#include "mcsim/errors.hpp"
#include "mcsim/estimator.hpp"

namespace mcsim::controller {

using airspring::Valve;

void Thresholds::validate() const {
    if (!(t2 > 0.0) || !(t1 > t2)) throw InvalidParameter("thresholds need t1 > t2 > 0");
    if (!(t3 > 0.0)) throw InvalidParameter("t3 must be positive");
    if (!(stroke_tol > 0.0)) throw InvalidParameter("stroke_tol must be positive");
    if (!(backup_timeout > 0.0)) throw InvalidParameter("backup_timeout must be positive");
    if (!(min_switch_interval >= 0.1 - 1e-12)) throw InvalidParameter("min_switch_interval must be >= 0.1 s");
}

Valve commanded_valve(Node n) {
    return (n == Node::Soft || n == Node::ReopenPulse) ? Valve::Open : Valve::Closed;
}

bool dwell_elapsed(const ControllerState& cs, double t, const Thresholds& th) {
    // small slack so that 100 steps of 1 ms count as 100 ms
    return t - cs.last_switch >= th.min_switch_interval - 1e-9;
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

StepResult finish(ControllerState s, double t, bool switched, OpenReason reason) {
    if (switched) s.last_switch = t;
    return {s, commanded_valve(s.node), switched, reason};
}

}  // namespace

StepResult basic_step(const ControllerState& cs, double fz, double t, const Thresholds& th) {
    ControllerState s = cs;
    const double mag = std::abs(fz);
    if (dwell_elapsed(cs, t, th)) {
        if (s.node == Node::Soft && mag > th.t1) {
            s.node = Node::Hard;
            return finish(s, t, true, OpenReason::None);
        }
        if (s.node != Node::Soft && mag <= th.t2) {
            s.node = Node::Soft;
            return finish(s, t, true, OpenReason::Threshold);
        }
    }
    return finish(s, t, false, OpenReason::None);
}

bool stroke_recrossed(double stroke, double prev_stroke, double stroke_at_close, double tol) {
    const double e = stroke - stroke_at_close;
    if (std::abs(e) > tol) return false;
    if (e == 0.0) return true;
    const double e_prev = prev_stroke - stroke_at_close;
    if (e_prev * e < 0.0) return true;
    // about to cross before the next step and this step is the closer one
    const double e_next = 2.0 * e - e_prev;
    return e * e_next < 0.0 && std::abs(e) <= std::abs(e_next);
}

StepResult extended_step(const ControllerState& cs, double fz_threshold, double fz_fast, double fz_slow,
                         double stroke, double t, const Thresholds& th, const ExtendedOptions& opts) {
    ControllerState s = cs;
    const double prev = cs.has_prev ? cs.prev_stroke : stroke;
    s.prev_stroke = stroke;
    s.has_prev = true;

    const bool can = dwell_elapsed(cs, t, th);
    const double mag = std::abs(fz_threshold);

    switch (cs.node) {
    case Node::Soft:
        if (mag > th.t1 && can) {
            s.node = Node::Hard;
            s.stroke_at_close = stroke;
            s.load_sign = sign_of(fz_threshold);
            return finish(s, t, true, OpenReason::None);
        }
        break;

    case Node::Hard:
    case Node::ArmedOpen: {
        if (opts.inversion && can && estimator::inversion_detected(fz_fast, fz_slow, th.t3) &&
            sign_of(fz_fast) != s.load_sign) {
            s.node = Node::ReopenPulse;
            return finish(s, t, true, OpenReason::Pulse);
        }
        if (cs.node == Node::Hard) {
            if (mag <= th.t2) {
                if (!opts.kick_avoidance) {
                    if (can) {
                        s.node = Node::Soft;
                        return finish(s, t, true, OpenReason::Threshold);
                    }
                } else {
                    s.node = Node::ArmedOpen;
                    s.armed_since = t;
                }
            }
            break;
        }
        // ArmedOpen
        if (mag > th.t1) {
            s.node = Node::Hard;
        } else if (mag <= th.t2 && can) {
            if (stroke_recrossed(stroke, prev, s.stroke_at_close, th.stroke_tol)) {
                s.node = Node::Soft;
                return finish(s, t, true, OpenReason::Recross);
            }
            if (t - s.armed_since > th.backup_timeout) {
                s.node = Node::Soft;
                return finish(s, t, true, OpenReason::Backup);
            }
        }
        break;
    }

    case Node::ReopenPulse:
        if (can) {
            s.node = Node::Hard;
            s.stroke_at_close = stroke;
            s.load_sign = sign_of(fz_fast);
            return finish(s, t, true, OpenReason::None);
        }
        break;
    }
    return finish(s, t, false, OpenReason::None);
}

std::string_view node_name(Node n) {
    switch (n) {
    case Node::Soft: return "soft";
    case Node::Hard: return "hard";
    case Node::ArmedOpen: return "armed_open";
    case Node::ReopenPulse: return "reopen_pulse";
    }
    return "?";
}

std::string_view reason_name(OpenReason r) {
    switch (r) {
    case OpenReason::None: return "";
    case OpenReason::Threshold: return "threshold";
    case OpenReason::Recross: return "recross";
    case OpenReason::Backup: return "backup";
    case OpenReason::Pulse: return "pulse";
    }
    return "?";
}

}  // namespace mcsim::controller
