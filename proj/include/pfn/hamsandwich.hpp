#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pfn/multipoly.hpp"

namespace pfn {

struct HamSandwichResult {
    MultiPoly cut;                 // degree <= d, unit coefficient vector
    std::vector<long> imbalance;   // exact |pos - neg| per input set
    std::vector<long> on_zero;     // points landing exactly on the cut
    long worst = 0;
    bool met_tolerance = false;
    long iterations = 0;
};

/// Searches the coefficient sphere of a monomial subspace for a polynomial
/// that simultaneously near-bisects every input set:
///   |#{x in S : P(x) > 0} - #{x in S : P(x) < 0}| <= tol |S| + 1.
/// The subspace is spanned by the first `basis_dim` monomials of degree <= d
/// in graded-lex order (basis_dim = #sets + 1 when unset). The search works
/// on the Veronese lift of the points (soft-sign descent with restarts);
/// imbalances of the returned cut are certified by exact rational signs.
/// When the budget runs out the best cut found is returned with its achieved
/// imbalance recorded.
HamSandwichResult approx_ham_sandwich(const std::vector<std::vector<Point>>& sets, int nvars,
                                      int degree, double tol, long budget, std::uint64_t seed,
                                      int basis_dim = -1);

/// Exact sign counts (pos, neg, zero) of P over a point set.
std::array<long, 3> sign_counts(const MultiPoly& P, const std::vector<Point>& pts);

} // namespace pfn
