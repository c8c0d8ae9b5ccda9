#include "pfn/bigfloat.hpp"

#include <atomic>

namespace pfn {

namespace {
std::atomic<int> g_precision_bits{53};
}

int precision_bits() { return g_precision_bits.load(); }

void set_precision_bits(int bits) {
    if (bits < 24 || bits > 16384) throw std::invalid_argument("precision out of range");
    g_precision_bits.store(bits);
}

BigFloat::BigFloat(int prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(x_, o.x_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(x_); }

BigFloat BigFloat::from(double d, int prec) {
    BigFloat out(prec);
    mpfr_set_d(out.x_, d, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::from(const Rational& q, int prec, mpfr_rnd_t rnd) {
    BigFloat out(prec);
    mpfr_set_q(out.x_, q.get_mpq_t(), rnd);
    return out;
}

int BigFloat::prec() const { return static_cast<int>(mpfr_get_prec(x_)); }

double BigFloat::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(x_, rnd); }

Rational BigFloat::to_rational() const {
    if (mpfr_zero_p(x_)) return Rational(0);
    if (!mpfr_number_p(x_)) throw std::domain_error("non-finite BigFloat to rational");
    Integer z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x_);
    Rational q(z);
    return q * rational_pow2(static_cast<long>(e));
}

int BigFloat::sgn() const { return mpfr_sgn(x_); }

int BigFloat::cmp(const BigFloat& o) const { return mpfr_cmp(x_, o.x_); }

#define PFN_BF_BINOP(name, fn)                                                     \
    BigFloat name(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, int prec) { \
        BigFloat out(prec);                                                        \
        fn(out.raw(), a.raw(), b.raw(), rnd);                                      \
        return out;                                                                \
    }

PFN_BF_BINOP(bf_add, mpfr_add)
PFN_BF_BINOP(bf_sub, mpfr_sub)
PFN_BF_BINOP(bf_mul, mpfr_mul)
PFN_BF_BINOP(bf_div, mpfr_div)
PFN_BF_BINOP(bf_pow, mpfr_pow)
#undef PFN_BF_BINOP

#define PFN_BF_UNOP(name, fn)                                   \
    BigFloat name(const BigFloat& a, mpfr_rnd_t rnd, int prec) { \
        BigFloat out(prec);                                     \
        fn(out.raw(), a.raw(), rnd);                            \
        return out;                                             \
    }

PFN_BF_UNOP(bf_exp, mpfr_exp)
PFN_BF_UNOP(bf_log, mpfr_log)
PFN_BF_UNOP(bf_tan, mpfr_tan)
#undef PFN_BF_UNOP

namespace {
struct ScratchMpfr {
    mpfr_t a, b;
    ScratchMpfr() { mpfr_init2(a, 53); mpfr_init2(b, 53); }
    ~ScratchMpfr() { mpfr_clear(a); mpfr_clear(b); }
};
thread_local ScratchMpfr g_scratch;
} // namespace

double mpfr_exp_d(double x, mpfr_rnd_t rnd) {
    mpfr_set_d(g_scratch.a, x, MPFR_RNDN);
    mpfr_exp(g_scratch.b, g_scratch.a, rnd);
    return mpfr_get_d(g_scratch.b, rnd);
}

double mpfr_log_d(double x, mpfr_rnd_t rnd) {
    mpfr_set_d(g_scratch.a, x, MPFR_RNDN);
    mpfr_log(g_scratch.b, g_scratch.a, rnd);
    return mpfr_get_d(g_scratch.b, rnd);
}

double mpfr_tan_d(double x, mpfr_rnd_t rnd) {
    mpfr_set_d(g_scratch.a, x, MPFR_RNDN);
    mpfr_tan(g_scratch.b, g_scratch.a, rnd);
    return mpfr_get_d(g_scratch.b, rnd);
}

double mpfr_pow_d(double x, const Rational& e, mpfr_rnd_t rnd) {
    // Round the exponent in whichever direction keeps the power bound outward
    // (x^e is increasing in e for x >= 1, decreasing for 0 < x < 1).
    mpfr_rnd_t ernd = MPFR_RNDN;
    if (rnd == MPFR_RNDD) ernd = (x >= 1.0) ? MPFR_RNDD : MPFR_RNDU;
    if (rnd == MPFR_RNDU) ernd = (x >= 1.0) ? MPFR_RNDU : MPFR_RNDD;
    mpfr_set_d(g_scratch.a, x, MPFR_RNDN);
    mpfr_t ef;
    mpfr_init2(ef, 256);
    mpfr_set_q(ef, e.get_mpq_t(), ernd);
    mpfr_pow(g_scratch.b, g_scratch.a, ef, rnd);
    mpfr_clear(ef);
    return mpfr_get_d(g_scratch.b, rnd);
}

} // namespace pfn
