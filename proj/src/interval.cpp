#include "pfn/interval.hpp"

#include <algorithm>
#include <sstream>

#include "pfn/bigfloat.hpp"

namespace pfn {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

inline double down(double v) {
    if (std::isinf(v)) return v;
    return std::nextafter(v, -kInf);
}

inline double up(double v) {
    if (std::isinf(v)) return v;
    return std::nextafter(v, kInf);
}

// 0 * inf appears when multiplying unbounded enclosures by a zero endpoint;
// the correct limit for interval products is 0.
inline double mul_lo(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return down(a * b);
}
inline double mul_hi(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return up(a * b);
}

} // namespace

Interval Interval::from_rational(const Rational& q) {
    double d = mpq_get_d(q.get_mpq_t()); // rounds toward zero
    // exactly representable values (dyadic with a short mantissa) stay
    // degenerate; coefficient noise floors matter for heavily cancelling
    // polynomials
    if (Rational(rational_from_double(d)) == q) return point(d);
    return {down(d), up(d)};
}

std::string Interval::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo << ", " << hi << "]";
    return os.str();
}

Interval operator+(const Interval& a, const Interval& b) {
    return {down(a.lo + b.lo), up(a.hi + b.hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
    return {down(a.lo - b.hi), up(a.hi - b.lo)};
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
    double c[4] = {mul_lo(a.lo, b.lo), mul_lo(a.lo, b.hi), mul_lo(a.hi, b.lo), mul_lo(a.hi, b.hi)};
    double d[4] = {mul_hi(a.lo, b.lo), mul_hi(a.lo, b.hi), mul_hi(a.hi, b.lo), mul_hi(a.hi, b.hi)};
    return {std::min({c[0], c[1], c[2], c[3]}), std::max({d[0], d[1], d[2], d[3]})};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) return Interval::whole();
    return a * Interval(down(1.0 / b.hi), up(1.0 / b.lo));
}

Interval operator*(double k, const Interval& a) { return Interval::point(k) * a; }
Interval operator+(const Interval& a, double k) { return a + Interval::point(k); }
Interval operator-(const Interval& a, double k) { return a - Interval::point(k); }

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval intersect(const Interval& a, const Interval& b, bool& ok) {
    Interval out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    ok = out.lo <= out.hi;
    return out;
}

Interval ipow(const Interval& a, unsigned e) {
    if (e == 0) return Interval::point(1.0);
    if (e == 1) return a;
    // even powers are sign-symmetric; take the image of |a|
    if (e % 2 == 0) {
        double m = a.mag();
        double lo = a.contains_zero() ? 0.0 : std::min(std::fabs(a.lo), std::fabs(a.hi));
        Interval base{lo, m};
        Interval out = base;
        for (unsigned i = 1; i < e; ++i) out = out * base;
        return {std::max(out.lo, 0.0), out.hi};
    }
    Interval out = a;
    for (unsigned i = 1; i < e; ++i) out = out * a;
    return out;
}

Interval iexp(const Interval& a) {
    return {mpfr_exp_d(a.lo, MPFR_RNDD), mpfr_exp_d(a.hi, MPFR_RNDU)};
}

Interval ilog(const Interval& a) {
    if (a.lo <= 0.0) throw std::domain_error("log over nonpositive interval");
    return {mpfr_log_d(a.lo, MPFR_RNDD), mpfr_log_d(a.hi, MPFR_RNDU)};
}

Interval itan(const Interval& a) {
    return {mpfr_tan_d(a.lo, MPFR_RNDD), mpfr_tan_d(a.hi, MPFR_RNDU)};
}

Interval ipow_real(const Interval& a, const Rational& e) {
    if (a.lo <= 0.0) throw std::domain_error("real power over nonpositive interval");
    if (e >= 0) {
        return {mpfr_pow_d(a.lo, e, MPFR_RNDD), mpfr_pow_d(a.hi, e, MPFR_RNDU)};
    }
    return {mpfr_pow_d(a.hi, e, MPFR_RNDD), mpfr_pow_d(a.lo, e, MPFR_RNDU)};
}

Interval irecip(const Interval& a) {
    if (a.contains_zero()) throw std::domain_error("reciprocal over interval containing zero");
    return {down(1.0 / a.hi), up(1.0 / a.lo)};
}

} // namespace pfn
