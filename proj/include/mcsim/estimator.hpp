#pragma once

// Quasi-static corner load transfer from COG accelerations, plus a fast and a
// slow first-order low-pass copy used for manoeuvre-inversion detection.

#include "mcsim/corner.hpp"

namespace mcsim::estimator {

struct GeometryParams {
    double mass = 2100.0;       // kg
    double wheelbase = 3.3;     // m
    double track = 1.6;         // m
    double cog_height = 0.56;   // m
};

struct FilterParams {
    double tau_fast = 0.02;  // s
    double tau_slow = 0.3;   // s
    void validate() const;
};

struct LoadTransferEstimate {
    CornerArray fz{};
    CornerArray fz_fast{};
    CornerArray fz_slow{};
};

/// Per-corner load variation, FL FR RL RR. Sums to zero exactly.
CornerArray load_transfer(double ax, double ay, const GeometryParams& g);

/// Replaces fz with `fz_raw` and advances both filters by one step of dt.
LoadTransferEstimate filter_update(const LoadTransferEstimate& est, const CornerArray& fz_raw, double dt,
                                   const FilterParams& fp);

bool inversion_detected(double fz_fast, double fz_slow, double t3);
bool inversion_detected(const LoadTransferEstimate& est, Corner c, double t3);

}  // namespace mcsim::estimator
