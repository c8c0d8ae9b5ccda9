#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pfn {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parse "p", "p/q", or a plain decimal like "-1.25" into an exact rational.
inline Rational rational_from_string(const std::string& s) {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        Integer num(digits, 10);
        Integer den(1);
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    Rational q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
    q.canonicalize();
    return q;
}

/// num/den in canonical form. mpq_class's two-argument constructor does not
/// reduce, and GMP comparisons assume canonical operands, so every fraction
/// whose parts may share a factor must come through here.
inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational frac(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// 2^k as an exact rational; k may be negative.
inline Rational rational_pow2(long k) {
    Rational q(1);
    if (k >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(k));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-k));
    }
    return q;
}

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double d) {
    Rational q;
    mpq_set_d(q.get_mpq_t(), d);
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational out;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num(). get_mpz_t(), a);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (sgn(base) == 0) throw std::domain_error("0 to a negative power");
        out = Rational(out.get_den(), out.get_num());
    }
    out.canonicalize();
    return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline Integer factorial(unsigned long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

} // namespace pfn
