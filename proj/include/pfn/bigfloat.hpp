#pragma once

#include <mpfr.h>

#include "pfn/rational.hpp"

namespace pfn {

/// Global evaluation precision in bits for the software-float paths.
/// Default is 53 (hardware double); callers may escalate per run.
int precision_bits();
void set_precision_bits(int bits);

/// Thin RAII wrapper over mpfr_t. Only the operations the library needs.
class BigFloat {
public:
    explicit BigFloat(int prec = precision_bits());
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from(double d, int prec = precision_bits());
    static BigFloat from(const Rational& q, int prec, mpfr_rnd_t rnd);

    int prec() const;
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
    /// Exact value as a dyadic rational (no rounding).
    Rational to_rational() const;
    int sgn() const;
    int cmp(const BigFloat& o) const;

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

private:
    mpfr_t x_;
};

BigFloat bf_add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, int prec);
BigFloat bf_sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, int prec);
BigFloat bf_mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, int prec);
BigFloat bf_div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, int prec);
BigFloat bf_exp(const BigFloat& a, mpfr_rnd_t rnd, int prec);
BigFloat bf_log(const BigFloat& a, mpfr_rnd_t rnd, int prec);
BigFloat bf_tan(const BigFloat& a, mpfr_rnd_t rnd, int prec);
BigFloat bf_pow(const BigFloat& a, const BigFloat& e, mpfr_rnd_t rnd, int prec);

/// Correctly rounded double-precision transcendentals with directed rounding,
/// the primitive under every certified interval enclosure of a chain value.
double mpfr_exp_d(double x, mpfr_rnd_t rnd);
double mpfr_log_d(double x, mpfr_rnd_t rnd);
double mpfr_tan_d(double x, mpfr_rnd_t rnd);
double mpfr_pow_d(double x, const Rational& e, mpfr_rnd_t rnd);

} // namespace pfn
