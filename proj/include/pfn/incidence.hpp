#pragma once

#include <optional>

#include "pfn/roots1d.hpp"

namespace pfn {

/// A curve in the plane (implicit rational polynomial) or a parametric
/// Pfaffian curve in R^n.
struct Curve {
    enum class Kind { implicit2d, parametric };
    Kind kind = Kind::implicit2d;
    MultiPoly implicit{2};
    std::optional<ParametricCurve> param;
    std::string label;
};

struct IncidenceInstance {
    int n = 2;
    std::vector<Point> points;
    std::vector<Curve> curves;
    /// planted (point index, curve index) pairs, all genuine by construction
    std::vector<std::pair<std::size_t, std::size_t>> ground_truth;
    /// the bipartite exclusion the family is designed to satisfy
    int s_designed = 2, t_designed = 2;
    std::string generator;
    std::uint64_t seed = 0;
};

struct IncidenceGraph {
    std::size_t npoints = 0, ncurves = 0;
    std::vector<std::vector<std::size_t>> curves_of_point; // sorted adjacency
    long edges = 0;

    std::size_t degree(std::size_t p) const { return curves_of_point[p].size(); }
};

enum class Membership { certified_in, certified_out, uncertain };

/// Certified point-curve membership. Implicit rational curves are decided
/// exactly. Parametric curves go through coordinate matching: the parameter
/// is pinned exactly when some coordinate is affine in t, remaining
/// coordinates are compared exactly where the chain value is exactly known
/// and by interval enclosure otherwise; pairs that cannot be settled either
/// way are reported uncertain, never guessed.
Membership certify_membership(const Point& p, const Curve& c, const SolveConfig& cfg = {});

/// Membership plus the matching parameter for certified parametric hits.
struct MembershipDetail {
    Membership verdict = Membership::certified_out;
    std::optional<Rational> parameter;
};
MembershipDetail certify_membership_detail(const Point& p, const Curve& c,
                                           const SolveConfig& cfg = {});

struct IncidenceCount {
    long count = 0;
    IncidenceGraph graph;
    std::vector<std::pair<std::size_t, std::size_t>> uncertain;
};

IncidenceCount count_incidences(const IncidenceInstance& inst, const SolveConfig& cfg = {});

/// True iff no s points and t curves are mutually incident. Exhaustive over
/// s-subsets of points of degree >= t; refuses instances larger than
/// `point_limit` to keep the blow-up bounded.
bool kst_free(const IncidenceGraph& g, int s, int t, std::size_t point_limit = 2000);

struct IncidenceGenParams {
    long k = 2;            // line_grid scale
    long curve_count = 3;  // circles / exp_curves
    long point_count = 10; // planted points / decoys
    Rational rate = 1;     // exp rate b
    bool concentric = false;
    long centers = 2;      // circles: centers per axis
    std::string planted_kind = "parabola"; // parabola | exp_poly | exp_anchor
};

/// Instance generators: line_grid (the extremal N^(4/3) grid), circles
/// (unit or concentric circles with rational points), exp_curves (curves
/// y = a e^(bx) + c with exactly certifiable anchor points and certified-out
/// decoys), planted (points planted on one curve, ground truth recorded).
IncidenceInstance gen_incidence(const std::string& kind, const IncidenceGenParams& params,
                                std::uint64_t seed);

} // namespace pfn
