#pragma once

#include <map>
#include <string>

#include "pfn/hamsandwich.hpp"
#include "pfn/pfaffian.hpp"
#include "pfn/schedule.hpp"

namespace pfn {

/// Sign vector over the partition factors, e.g. "+-+". Cells refine left to
/// right: the level-l cell is the length-l prefix.
using SignKey = std::string;

struct Partition {
    DegreeSchedule schedule;
    std::vector<MultiPoly> factors; // deg(factors[l]) <= schedule.d[l]
    int product_degree = 0;

    /// cell -> per-collection input indices
    std::map<SignKey, std::vector<std::vector<std::size_t>>> cells;
    /// per-collection indices that landed exactly on some factor's zero set
    std::vector<std::vector<std::size_t>> boundary;

    std::vector<long> collection_sizes;
    std::vector<long> max_load;           // per collection
    std::vector<double> target_load;      // (1+tol)^s m|G_i|/2^s + s
    std::vector<double> guarantee_load;   // Theorem-style m|G_i|/2^s reference
    std::vector<long> achieved_imbalance; // worst per level over the run
    bool met_tolerance = true;            // every cut met its per-level target
    bool degenerate_input = false;

    /// Sign vector of x, or "boundary" when some factor vanishes at x.
    SignKey locate(const Point& x) const;
};

/// Level-by-level construction: at level l the current cells of every
/// collection are near-bisected simultaneously by one polynomial of degree
/// d_l found by approx_ham_sandwich; points landing exactly on a factor are
/// quarantined in `boundary`.
Partition build_partition(const std::vector<std::vector<Point>>& collections, int n, int D,
                          double tol, long budget, std::uint64_t seed);

struct PfaffianPartition {
    ChainPtr chain;
    Partition lifted;                       // partition of the lifted points in R^(n+r)
    std::vector<PfaffianFunction> pullback; // P_l(x, q_1(x)..q_r(x))
    /// per-collection lifted points (rounded rationals)
    std::vector<std::vector<Point>> lifted_points;
    Rational lift_error; // max rounding halfwidth across lifted coordinates
    /// per-collection indices whose cell could not be certified against the
    /// lift rounding error (quarantined with the boundary)
    std::vector<std::vector<std::size_t>> ambiguous;

    /// Certified sign vector of the pullback at x, or "boundary".
    SignKey locate(const Point& x) const;
};

/// Lifts points along the chain graph x -> (x, q_1(x)..q_r(x)), partitions in
/// R^(n+r) with the (n+r)-dimensional schedule, and pulls cells back through
/// the sign of P_l(x, q(x)). Requires an algebraically independent chain.
/// With r = 0 the lift is the identity and the result wraps build_partition
/// bit-for-bit.
PfaffianPartition pfaffian_partition(const std::vector<std::vector<Point>>& collections,
                                     const ChainPtr& chain, int D, double tol, long budget,
                                     std::uint64_t seed);

} // namespace pfn
