#pragma once

#include "pfn/pfaffian.hpp"
#include "pfn/rng.hpp"

namespace pfn::test {

/// Random sparse polynomial with small rational coefficients; at least one
/// term of positive degree unless max_degree is 0.
inline MultiPoly random_poly(Rng& rng, int nvars, int max_degree, int terms = 6) {
    MultiPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
        MultiPoly::Exponents e(nvars, 0);
        int budget = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
        for (int i = 0; i < nvars && budget > 0; ++i) {
            int take = static_cast<int>(rng.below(static_cast<std::uint64_t>(budget + 1)));
            e[i] = static_cast<unsigned>(take);
            budget -= take;
        }
        long num = rng.uniform_int(-9, 9);
        if (num == 0) num = 1;
        p.add_term(e, frac(num, 1 + static_cast<long>(rng.below(4))));
    }
    if (p.is_zero()) p.add_term(MultiPoly::Exponents(nvars, 0), Rational(1));
    return p;
}

/// Dense random polynomial in `nvars` variables of exactly this degree
/// support (every monomial present).
inline MultiPoly random_dense_poly(Rng& rng, int nvars, int degree) {
    MultiPoly p(nvars);
    for (const auto& e : grlex_monomials(nvars, degree)) {
        long num = rng.uniform_int(-20, 20);
        if (num == 0) num = 1;
        p.add_term(e, frac(num, 16));
    }
    return p;
}

/// High-precision point evaluation of f (256 bits), rounded to double.
inline double reference_eval(const PfaffianFunction& f, double x) {
    Rational xq = rational_from_double(x);
    auto [lo, hi] = f.eval_hp(std::span<const Rational>(&xq, 1), 256);
    return 0.5 * (lo.to_double() + hi.to_double());
}

/// All builtin chains suitable for 1-d sampling, with a safe sample range.
struct ChainCase {
    ChainPtr chain;
    double lo, hi;
    const char* name;
};

inline std::vector<ChainCase> builtin_chain_cases() {
    return {
        {make_chain(ChainKind::empty), -2.0, 2.0, "empty"},
        {make_chain(ChainKind::exp, {Rational(1)}), -1.5, 1.5, "exp"},
        {make_chain(ChainKind::iterated_exp, {Rational(1), Rational(2)}), -1.0, 1.0, "iterated_exp"},
        {make_chain(ChainKind::tan), -1.2, 1.2, "tan"},
        {make_chain(ChainKind::recip_log), 0.25, 3.0, "recip_log"},
        {make_chain(ChainKind::recip_power, {Rational(3, 2)}), 0.25, 3.0, "recip_power"},
    };
}

} // namespace pfn::test
