#include "pfn/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "pfn/bigfloat.hpp"

namespace pfn {

namespace {

constexpr int kPowPrec = 256;

double approx_pow(const Rational& x, const Rational& e) {
    if (sgn(x) == 0) return sgn(e) == 0 ? 1.0 : 0.0;
    BigFloat b = BigFloat::from(x, kPowPrec, MPFR_RNDN);
    BigFloat ee = BigFloat::from(e, kPowPrec, MPFR_RNDN);
    return bf_pow(b, ee, MPFR_RNDN, kPowPrec).to_double();
}

std::optional<Rational> exact_pow(const Rational& x, const Rational& e) {
    if (sgn(e) == 0) return Rational(1);
    if (sgn(x) == 0) return Rational(0);
    if (sgn(x) < 0) return std::nullopt;
    if (!e.get_num().fits_slong_p() || !e.get_den().fits_slong_p()) return std::nullopt;
    long p = e.get_num().get_si();
    long q = e.get_den().get_si();
    Integer num = x.get_num(), den = x.get_den();
    if (p < 0) { std::swap(num, den); p = -p; }
    Integer num_p = int_pow(num, static_cast<unsigned long>(p));
    Integer den_p = int_pow(den, static_cast<unsigned long>(p));
    if (q == 1) {
        Rational out(num_p, den_p);
        out.canonicalize();
        return out;
    }
    Integer rn, rd;
    int en = mpz_root(rn.get_mpz_t(), num_p.get_mpz_t(), static_cast<unsigned long>(q));
    int ed = mpz_root(rd.get_mpz_t(), den_p.get_mpz_t(), static_cast<unsigned long>(q));
    if (!en || !ed) return std::nullopt;
    Rational out(rn, rd);
    out.canonicalize();
    return out;
}

// khovanskii base term: min(xi, r) alpha + sum(beta) - n + 1
Integer khovanskii_base(const BoundQuery& q) {
    Integer sum = 0;
    for (int b : q.betas) sum += b;
    return Integer(std::min(q.xi, q.r)) * q.alpha + sum - q.n + 1;
}

Integer khovanskii_core(const BoundQuery& q, const Integer& two_power, bool doubled) {
    Integer prod = two_power;
    Integer sum = 0;
    for (int b : q.betas) {
        long bb = doubled ? 2L * b : b;
        prod *= bb;
        sum += bb;
    }
    Integer base = Integer(std::min(q.xi, q.r)) * q.alpha + sum - q.n + 1;
    if (q.r > 0) {
        if (sgn(base) < 0) throw std::domain_error("negative power base");
        prod *= int_pow(base, static_cast<unsigned long>(q.r));
    }
    return prod;
}

} // namespace

void BoundQuery::validate() const {
    if (n < 1) throw std::invalid_argument("n >= 1 required");
    if (k < 0 || k > n) throw std::invalid_argument("0 <= k <= n required");
    if (r < 0) throw std::invalid_argument("r >= 0 required");
    if (D < 1) throw std::invalid_argument("D >= 1 required");
    for (const Rational& c : cardinalities) {
        if (sgn(c) < 0) throw std::invalid_argument("cardinalities must be nonnegative");
    }
}

BoundValue BoundValue::of(const Rational& q) {
    BoundValue v;
    v.exact = q;
    v.approx = q.get_d();
    return v;
}

BoundValue rational_power(const Rational& x, const Rational& e) {
    BoundValue v;
    if (auto ex = exact_pow(x, e)) {
        v.exact = *ex;
        v.approx = ex->get_d();
    } else {
        v.approx = approx_pow(x, e);
    }
    return v;
}

BoundValue khovanskii_bound(const BoundQuery& q) {
    q.validate();
    if (static_cast<int>(q.betas.size()) != q.n) {
        throw std::invalid_argument("need one degree per equation (n of them)");
    }
    for (int b : q.betas) {
        if (b < 1) throw std::invalid_argument("all degrees must be >= 1");
    }
    BoundValue v;
    if (q.r > 0 && sgn(khovanskii_base(q)) < 0) {
        v.invalid = true;
        return v;
    }
    Integer two = int_pow(2, static_cast<unsigned long>(q.r) * (q.r - 1) / 2);
    Rational out(khovanskii_core(q, two, false));
    return BoundValue::of(out);
}

BoundValue khovanskii_degenerate_bound(const BoundQuery& q, DegenerateVariant variant) {
    q.validate();
    if (static_cast<int>(q.betas.size()) != q.n) {
        throw std::invalid_argument("need one degree per equation (n of them)");
    }
    BoundValue v;
    if (variant == DegenerateVariant::stated) {
        if (q.r > 0 && sgn(khovanskii_base(q)) < 0) {
            v.invalid = true;
            return v;
        }
        unsigned long e = static_cast<unsigned long>(q.n) +
                          static_cast<unsigned long>(q.r + 1) * q.r / 2;
        return BoundValue::of(Rational(khovanskii_core(q, int_pow(2, e), false)));
    }
    // the proof's final step: degrees of f_i^2 - eps_i are 2 beta_i
    Integer two = int_pow(2, static_cast<unsigned long>(q.r) * (q.r - 1) / 2);
    return BoundValue::of(Rational(khovanskii_core(q, two, true)));
}

BoundValue khovanskii_degenerate_max(const BoundQuery& q) {
    BoundValue a = khovanskii_degenerate_bound(q, DegenerateVariant::stated);
    BoundValue b = khovanskii_degenerate_bound(q, DegenerateVariant::substituted);
    if (a.invalid || b.invalid) {
        BoundValue v;
        v.invalid = true;
        return v;
    }
    return (*a.exact >= *b.exact) ? a : b;
}

BoundValue component_bound(const BoundQuery& q) {
    q.validate();
    Rational out = q.C * rat_pow(Rational(q.D), q.k + q.r);
    return BoundValue::of(out);
}

BoundValue partition_guarantee(const BoundQuery& q, PartitionKind kind) {
    q.validate();
    if (q.cardinalities.empty()) throw std::invalid_argument("needs |Gamma|");
    if (kind == PartitionKind::pfaffian && !q.chain_independent) {
        throw std::invalid_argument("pfaffian partitioning requires an independent chain");
    }
    int e;
    if (kind == PartitionKind::poly) {
        e = (q.k > 0) ? (q.n - q.k - q.r) : q.n;
    } else {
        e = (q.k > 0) ? (q.n - q.k) : (q.n + q.r);
    }
    BoundValue v = BoundValue::of(q.C * q.m * q.cardinalities[0] / rat_pow(Rational(q.D), e));
    if (kind == PartitionKind::poly && q.k > 0 && q.n - q.k - q.r <= 0) {
        v.trivial_guarantee = true;
    }
    v.exponents.emplace_back("D", Rational(-e));
    return v;
}

BoundValue kst_bound(const BoundQuery& q) {
    q.validate();
    if (q.s < 2 || q.t < 2) throw std::invalid_argument("s, t >= 2 required");
    if (q.cardinalities.size() < 2) throw std::invalid_argument("needs |P| and |Gamma|");
    const Rational& P = q.cardinalities[0];
    const Rational& G = q.cardinalities[1];
    Rational es = frac(q.s - 1, q.s), et = frac(q.t - 1, q.t);
    // one empty side zeroes the matching branch of the minimum exactly
    if (sgn(P) == 0 || sgn(G) == 0) return BoundValue::of(Rational(0));
    BoundValue g_pow = rational_power(G, es);
    BoundValue p_pow = rational_power(P, et);
    BoundValue v;
    v.exponents.emplace_back("|Gamma| in first branch", es);
    v.exponents.emplace_back("|P| in second branch", et);
    if (g_pow.exact && p_pow.exact) {
        Rational b1 = P * *g_pow.exact + G;
        Rational b2 = *p_pow.exact * G + P;
        v.exact = q.C * std::min(b1, b2);
        v.approx = v.exact->get_d();
        return v;
    }
    double b1 = P.get_d() * g_pow.approx + G.get_d();
    double b2 = p_pow.approx * G.get_d() + P.get_d();
    v.approx = q.C.get_d() * std::min(b1, b2);
    return v;
}

BoundValue st_bound(const BoundQuery& q, bool plane) {
    q.validate();
    if (q.s < 2) throw std::invalid_argument("s >= 2 required");
    if (q.cardinalities.size() < 2) throw std::invalid_argument("needs |P| and |Gamma|");
    if (plane) {
        if (!q.thetas.empty()) throw std::invalid_argument("plane case has no theta terms");
    } else if (q.n < 3) {
        throw std::invalid_argument("n >= 3 required outside the plane case");
    }
    const int n_eff = plane ? 2 : q.n;
    const Rational& P = q.cardinalities[0];
    const Rational& G = q.cardinalities[1];
    // s(r+1)/(s(n+r)-n+1) and (s-1)(n+r)/(s(n+r)-n+1); for n = 2 these read
    // s(r+1)/(s(r+2)-1) and (s-1)(r+2)/(s(r+2)-1)
    long denom = static_cast<long>(q.s) * (n_eff + q.r) - n_eff + 1;
    Rational ep = frac(static_cast<long>(q.s) * (q.r + 1), denom);
    Rational eg = frac(static_cast<long>(q.s - 1) * (n_eff + q.r), denom);
    BoundValue v;
    v.exponents.emplace_back("|P|", ep + q.eps);
    v.exponents.emplace_back("|Gamma|", eg);
    Rational theta_sum(0);
    for (const Rational& th : q.thetas) theta_sum += th;
    // an empty side kills the power product exactly
    if (sgn(P) == 0 || sgn(G) == 0) {
        BoundValue z = BoundValue::of(P * theta_sum + q.C2 * (G + P));
        z.exponents = v.exponents;
        return z;
    }
    BoundValue p_pow = rational_power(P, ep + q.eps);
    BoundValue g_pow = rational_power(G, eg);
    if (p_pow.exact && g_pow.exact) {
        v.exact = q.C1 * *p_pow.exact * *g_pow.exact + P * theta_sum + q.C2 * (G + P);
        v.approx = v.exact->get_d();
        return v;
    }
    v.approx = q.C1.get_d() * p_pow.approx * g_pow.approx + P.get_d() * theta_sum.get_d() +
               q.C2.get_d() * (G.get_d() + P.get_d());
    return v;
}

BoundValue joints_bound(const BoundQuery& q) {
    q.validate();
    if (q.n < 3) throw std::invalid_argument("n >= 3 required");
    if (static_cast<int>(q.cardinalities.size()) != q.n) {
        throw std::invalid_argument("needs one family size per dimension");
    }
    Rational mu = std::max(frac(q.n + q.r, static_cast<long>(q.n) * (q.n - 1)),
                           frac(2, q.n + 1));
    BoundValue v;
    v.exponents.emplace_back("mu", mu);
    Rational min_card = q.cardinalities[0];
    for (const Rational& c : q.cardinalities) min_card = std::min(min_card, c);
    // empty factor: the product vanishes
    if (sgn(min_card) == 0) return BoundValue::of(Rational(0));
    BoundValue eps_factor = rational_power(min_card, q.eps);
    bool all_exact = eps_factor.exact.has_value();
    Rational exact_prod = q.C * (all_exact ? *eps_factor.exact : Rational(0));
    double approx_prod = q.C.get_d() * eps_factor.approx;
    for (const Rational& c : q.cardinalities) {
        BoundValue f = rational_power(c, mu);
        approx_prod *= f.approx;
        if (all_exact && f.exact) exact_prod *= *f.exact;
        else all_exact = false;
    }
    if (all_exact) {
        v.exact = exact_prod;
        v.approx = exact_prod.get_d();
    } else {
        v.approx = approx_prod;
    }
    return v;
}

BoundValue irreducible_component_bound(const BoundQuery& q) {
    q.validate();
    if (q.betas.empty()) throw std::invalid_argument("needs beta");
    BoundValue p = rational_power(Rational(q.betas[0]), q.C2);
    BoundValue v;
    v.exponents.emplace_back("beta", q.C2);
    if (p.exact) {
        v.exact = q.C1 * *p.exact;
        v.approx = v.exact->get_d();
    } else {
        v.approx = q.C1.get_d() * p.approx;
    }
    return v;
}

} // namespace pfn
