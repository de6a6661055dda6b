#include "mcsim/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "mcsim/errors.hpp"

namespace mcsim::estimator {

void FilterParams::validate() const {
    if (!(tau_fast > 0.0) || !(tau_slow > 0.0)) throw InvalidParameter("filter time constants must be positive");
}

CornerArray load_transfer(double ax, double ay, const GeometryParams& g) {
    double l = g.cog_height * g.mass / (2.0 * g.wheelbase) * ax;
    double t = g.cog_height * g.mass / (2.0 * g.track) * ay;
    // snap both terms to a common binary grid so every partial sum is exact
    const double m = std::abs(l) + std::abs(t);
    if (m > 0.0 && std::isfinite(m)) {
        int e = 0;
        std::frexp(m, &e);
        const int shift = 50 - e;
        l = std::ldexp(std::nearbyint(std::ldexp(l, shift)), -shift);
        t = std::ldexp(std::nearbyint(std::ldexp(t, shift)), -shift);
    }
    return {-(l + t), -(l - t), l - t, l + t};
}

LoadTransferEstimate filter_update(const LoadTransferEstimate& est, const CornerArray& fz_raw, double dt,
                                   const FilterParams& fp) {
    if (!(dt > 0.0)) throw InvalidParameter("filter step needs dt > 0");
    const double af = dt / (fp.tau_fast + dt);
    const double as = dt / (fp.tau_slow + dt);
    LoadTransferEstimate out;
    out.fz = fz_raw;
    for (std::size_t i = 0; i < 4; ++i) {
        out.fz_fast[i] = est.fz_fast[i] + af * (fz_raw[i] - est.fz_fast[i]);
        out.fz_slow[i] = est.fz_slow[i] + as * (fz_raw[i] - est.fz_slow[i]);
    }
    return out;
}

bool inversion_detected(double fz_fast, double fz_slow, double t3) {
    if (!(t3 > 0.0)) throw InvalidParameter("T3 must be positive");
    const bool opposite = (fz_fast > 0.0 && fz_slow < 0.0) || (fz_fast < 0.0 && fz_slow > 0.0);
    return opposite && std::min(std::abs(fz_fast), std::abs(fz_slow)) > t3;
}

bool inversion_detected(const LoadTransferEstimate& est, Corner c, double t3) {
    return inversion_detected(est.fz_fast[index(c)], est.fz_slow[index(c)], t3);
}

}  // namespace mcsim::estimator
