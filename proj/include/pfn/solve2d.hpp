#pragma once

#include <array>

#include "pfn/roots1d.hpp"

namespace pfn {

using Box2 = std::array<Interval, 2>;

struct SolutionBox {
    Box2 box;
    Certificate certificate = Certificate::interval_newton_contraction;
};

struct Solve2dResult {
    std::vector<SolutionBox> solutions;
    std::vector<Box2> suspect;
    bool complete = true;
    bool degenerate = false; // a positive-measure region resisted contraction
    long nodes = 0;
    Rational bound; // max of the two degenerate-system Khovanskii variants

    /// Set when the eps-cascade witness run was requested.
    std::optional<long> perturbed_count;
    std::vector<Rational> eps_used;
};

/// Certified solving of {f1 = f2 = 0} on a box by bisection plus the
/// Krawczyk operator; each returned box contains exactly one solution.
/// With `with_eps_cascade`, also replaces f_i = 0 by f_i^2 = eps_i and
/// reports the perturbed solution count as an upper-bound witness.
Solve2dResult solve_system_2d(const PfaffianFunction& f1, const PfaffianFunction& f2,
                              const Box2& box, const SolveConfig& cfg = {},
                              bool with_eps_cascade = false);

} // namespace pfn
