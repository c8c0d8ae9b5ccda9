#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfn/rational.hpp"

namespace pfn {

/// Inputs for the closed-form bound evaluators. Field meaning follows the
/// role each parameter plays in the corresponding statement; unused fields
/// are ignored by each evaluator. Unspecified constants default to 1 and are
/// always caller-supplied.
struct BoundQuery {
    int n = 1;            // ambient dimension
    int k = 0;            // set dimension
    int r = 0;            // chain order
    int alpha = 1;        // chain-degree
    int xi = 0;           // variables the chain reads
    std::vector<int> betas;
    int D = 1;            // partition degree
    long m = 1;           // collection / defining-function count
    int s = 2, t = 2;     // bipartite exclusion parameters
    Rational eps = 0;     // exponent slack
    std::vector<Rational> cardinalities; // |P|, |Gamma|, or per-family sizes
    std::vector<Rational> thetas;        // theta_2..theta_{n-1}
    Rational C = 1, C1 = 1, C2 = 1;
    bool chain_independent = false;

    void validate() const;
};

/// Result of a bound evaluation. `exact` is set whenever the value is a
/// rational number computed without rounding; `approx` is always set
/// (256-bit evaluation rounded to double).
struct BoundValue {
    std::optional<Rational> exact;
    double approx = 0.0;
    bool invalid = false;           // flagged, never clamped
    bool trivial_guarantee = false; // partition guarantee no better than |Gamma|
    std::vector<std::pair<std::string, Rational>> exponents;

    static BoundValue of(const Rational& q);
};

enum class DegenerateVariant { stated, substituted };
enum class PartitionKind { poly, pfaffian };

/// 2^C(r,2) b_1..b_n (min(xi,r) alpha + sum b - n + 1)^r; exact integer.
BoundValue khovanskii_bound(const BoundQuery& q);

/// stated: 2^(n + C(r+1,2)) b_1..b_n (min(xi,r) alpha + sum b - n + 1)^r.
/// substituted: khovanskii_bound with every beta doubled.
BoundValue khovanskii_degenerate_bound(const BoundQuery& q, DegenerateVariant variant);

/// Larger of the two variants above; the checker used to audit solver output.
BoundValue khovanskii_degenerate_max(const BoundQuery& q);

/// C D^(k+r).
BoundValue component_bound(const BoundQuery& q);

/// Per-cell guarantee of the partitioning theorems:
///   poly:     C m |Gamma| / D^(n-k-r)   (k > 0),  C m |Gamma| / D^n     (k = 0)
///   pfaffian: C m |Gamma| / D^(n-k)     (k > 0),  C m |Gamma| / D^(n+r) (k = 0)
BoundValue partition_guarantee(const BoundQuery& q, PartitionKind kind);

/// C min(|P||Gamma|^((s-1)/s) + |Gamma|, |P|^((t-1)/t)|Gamma| + |P|).
BoundValue kst_bound(const BoundQuery& q);

/// Incidence bound between points and curves; plane=true is the n=2
/// instantiation with empty theta list.
BoundValue st_bound(const BoundQuery& q, bool plane);

/// C min_j(|Gamma_j|^eps) prod |Gamma_i|^mu, mu = max((n+r)/(n(n-1)), 2/(n+1)).
BoundValue joints_bound(const BoundQuery& q);

/// C1 beta^C2 with caller-supplied constants (beta = betas[0]).
BoundValue irreducible_component_bound(const BoundQuery& q);

/// x^e for x >= 0 rational and e rational: exact when x is a perfect power,
/// otherwise 256-bit approximation.
BoundValue rational_power(const Rational& x, const Rational& e);

} // namespace pfn
