#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfn/bigfloat.hpp"
#include "pfn/interval.hpp"
#include "pfn/multipoly.hpp"

namespace pfn {

/// Format (alpha, beta, r) of a Pfaffian function, plus the ambient variable
/// count n and the number xi of variables the chain actually reads.
struct Format {
    int alpha = 1;
    int beta = 1;
    int r = 0;
    int n = 0;
    int xi = 0;
};

enum class ChainKind {
    empty,
    exp,            // q = e^{a x}
    iterated_exp,   // q_1 = e^{a x}, q_{i+1} = e^{q_i}
    tan,            // q = tan x on (-pi/2, pi/2)
    recip_log,      // (1/x, ln x) on x > 0
    recip_power,    // (1/x, x^m) on x > 0
    fewnomial_monomial, // (1/x_1, .., 1/x_k, a x^e) on the positive orthant
};

const char* chain_kind_name(ChainKind k);
ChainKind chain_kind_from_name(const std::string& name);

/// Ordered tuple q_1..q_r of smooth functions whose differentials are
/// polynomial in x and the earlier entries:
///   dq_j = sum_i P_{i,j}(x, q_1..q_j) dx_i,  deg P_{i,j} <= alpha.
/// Chains are built from the builtin catalogue, optionally embedded into a
/// larger ambient space, and optionally stacked over disjoint variables.
class PfaffianChain {
public:
    /// One builtin block; `vars` are the ambient variable indices it reads.
    struct Unit {
        ChainKind kind = ChainKind::empty;
        std::vector<Rational> params;
        std::vector<unsigned> mono_exponents; // fewnomial only
        std::vector<int> vars;
        int entries = 0;
    };

    int n() const { return n_; }
    int r() const { return r_; }
    int alpha() const { return alpha_; }
    int xi() const { return xi_; }
    bool independent() const { return independent_; }
    const std::string& independence_note() const { return independence_note_; }
    const std::vector<Unit>& units() const { return units_; }

    /// P_{i,j} with i in [1..n], j in [1..r]; stored in n + j variables
    /// (X_1..X_n, Y_1..Y_j), which encodes triangularity structurally.
    const MultiPoly& deriv(int i, int j) const;

    /// Ambient variables the entry q_j reads (1-based j).
    const std::vector<int>& entry_vars(int j) const;

    /// Per-variable closed enclosure of the open domain.
    const std::vector<Interval>& domain() const { return domain_; }
    bool domain_contains(std::span<const double> x) const;
    bool domain_contains(std::span<const Interval> box) const;

    /// Chain values q_1(x)..q_r(x).
    std::vector<double> values(std::span<const double> x) const;
    std::vector<Interval> values(std::span<const Interval> box) const;
    /// Certified enclosures at `prec` bits (used for graph lifts).
    std::vector<std::pair<BigFloat, BigFloat>> values_hp(std::span<const Rational> x, int prec) const;
    /// Exact chain values at a rational point, when they happen to be
    /// rational (e.g. 1/x everywhere, e^{ax} at x = 0). Entry j is set only
    /// if q_j(x) is known exactly.
    std::vector<std::optional<Rational>> values_exact(std::span<const Rational> x) const;

    /// Same chain read inside a larger ambient space (extra variables are
    /// never read; xi is unchanged).
    PfaffianChain embedded(int new_n) const;

    bool operator==(const PfaffianChain& o) const;

    /// Finite-difference consistency of Eq-style derivative data: checks
    /// dq_j/dx_i against P_{i,j}(x, q_1..q_j) at `x` within `tol` (relative,
    /// floored at 1). Exposed as a testable invariant.
    bool consistent_at(std::span<const double> x, double step, double tol) const;

    friend PfaffianChain chain_builtin(ChainKind kind, const std::vector<Rational>& params,
                                       const std::vector<unsigned>& mono_exponents);
    friend PfaffianChain chain_stack(const PfaffianChain& a, const PfaffianChain& b);

private:
    PfaffianChain() = default;
    void rebuild_derivs();

    int n_ = 0;
    int r_ = 0;
    int alpha_ = 1;
    int xi_ = 0;
    std::vector<Unit> units_;
    std::vector<std::vector<MultiPoly>> derivs_; // [j-1][i-1]
    std::vector<Interval> domain_;
    bool independent_ = true;
    std::string independence_note_;
};

using ChainPtr = std::shared_ptr<const PfaffianChain>;

/// Builtin catalogue.
///   empty                      params: {}            (ambient given by embedded())
///   exp                        params: {a}
///   iterated_exp               params: {a, r}
///   tan                        params: {}
///   recip_log                  params: {}
///   recip_power                params: {m}
///   fewnomial_monomial         params: {a}, mono_exponents: (i_1..i_k)
PfaffianChain chain_builtin(ChainKind kind, const std::vector<Rational>& params = {},
                            const std::vector<unsigned>& mono_exponents = {});

ChainPtr make_chain(ChainKind kind, const std::vector<Rational>& params = {},
                    int ambient = -1, const std::vector<unsigned>& mono_exponents = {});

/// Side-by-side product over disjoint variable blocks: ambient is the
/// concatenation of the two ambients, entries of `a` first.
PfaffianChain chain_stack(const PfaffianChain& a, const PfaffianChain& b);

} // namespace pfn
