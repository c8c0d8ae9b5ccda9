#pragma once

#include <optional>
#include <vector>

#include "pfn/bounds.hpp"
#include "pfn/pfaffian.hpp"

namespace pfn {

enum class Certificate { sign_change, interval_newton_contraction };

const char* certificate_name(Certificate c);

/// A certified root enclosure: contains exactly one root of the function
/// under its certificate; certified intervals are pairwise disjoint.
struct IsolatingInterval {
    Rational lo, hi;
    Certificate certificate = Certificate::sign_change;
};

struct SolveConfig {
    Rational min_width = Rational(1, Integer("1000000000000")); // 1e-12
    int max_depth = 60;
    long budget = 400000; // node limit
    std::optional<std::vector<Rational>> eps_cascade;
    /// Default cascade start when eps_cascade is unset but a cascade is
    /// requested: eps_l = eps1 * 10^(-3(l-1)).
    Rational eps1 = Rational(1, 1000);
    std::uint64_t seed = 0xC0FFEE;

    std::vector<Rational> cascade(int levels) const;
};

struct RootResult {
    std::vector<IsolatingInterval> roots;
    std::vector<std::pair<Rational, Rational>> suspect; // unresolved, reported
    bool complete = true;  // false when the budget ran out
    long nodes = 0;
    Rational khovanskii;   // Khovanskii bound for the function's format
};

/// Certified isolation of the roots of a one-variable Pfaffian function on a
/// closed interval. Subintervals whose enclosure excludes zero are discarded;
/// boxes that reach width/depth limits without a certificate are reported as
/// suspects, never dropped.
RootResult isolate_roots_1d(const PfaffianFunction& f, const Rational& lo, const Rational& hi,
                            const SolveConfig& cfg = {});

struct ComponentCount {
    long components = 0;
    bool complete = true;
    RootResult detail;
};

/// Connected components of {t in (lo, hi) : P(gamma(t)) != 0}: one more than
/// the number of certified distinct parameter roots. Requires certified
/// nonzero values at both endpoints. Roots without a sign change are
/// recovered through the derivative's sign-change certificate plus an exact
/// rational zero test.
ComponentCount components_along_curve(const MultiPoly& P, const ParametricCurve& gamma,
                                      const SolveConfig& cfg = {});

/// Isolating intervals for the roots of d/dt P(gamma(t)).
RootResult critical_values_on_curve(const MultiPoly& P, const ParametricCurve& gamma,
                                    const SolveConfig& cfg = {});

/// Khovanskii bound instantiated for a one-variable function of this format.
Rational khovanskii_for_format(const Format& f);

/// The fraction with smallest denominator inside [lo, hi] (Stern-Brocot).
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

} // namespace pfn
