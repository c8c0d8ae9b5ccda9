#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "pfn/rational.hpp"

namespace pfn {

/// Closed interval with double endpoints and outward rounding. Elementary
/// operations widen each computed endpoint by one ulp, which encloses the
/// round-to-nearest error; transcendental endpoints come from MPFR with
/// directed rounding and need no widening.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {}

    static Interval point(double v) { return {v, v}; }
    static Interval whole() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }
    /// Tight outward enclosure of an exact rational.
    static Interval from_rational(const Rational& q);

    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_contains(const Interval& o) const { return lo < o.lo && o.hi < hi; }
    bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    /// Certified sign: -1, +1, or 0 when the enclosure straddles zero.
    int sign() const { return lo > 0.0 ? 1 : (hi < 0.0 ? -1 : 0); }

    std::string str() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator*(double k, const Interval& a);
Interval operator+(const Interval& a, double k);
Interval operator-(const Interval& a, double k);

Interval hull(const Interval& a, const Interval& b);
/// Intersection; empty result reported via `ok = false`.
Interval intersect(const Interval& a, const Interval& b, bool& ok);
Interval ipow(const Interval& a, unsigned e);

/// Monotone transcendental enclosures (MPFR directed rounding).
Interval iexp(const Interval& a);
Interval ilog(const Interval& a);
/// Requires a within a single branch (-pi/2, pi/2) + k*pi.
Interval itan(const Interval& a);
/// x^e for x > 0 and rational e.
Interval ipow_real(const Interval& a, const Rational& e);
Interval irecip(const Interval& a);

} // namespace pfn
