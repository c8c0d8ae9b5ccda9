#pragma once

#include "pfn/incidence.hpp"
#include "pfn/solve2d.hpp"

namespace pfn {

struct JointsInstance {
    int n = 3;
    std::vector<std::vector<ParametricCurve>> families; // one list per dimension
    std::vector<Point> ground_truth;                    // planted joints
    std::string generator;
    std::uint64_t seed = 0;
};

struct JointDetection {
    Point location;                       // exact when certification was exact
    std::vector<std::size_t> curve_of_family;
    double tangent_det = 0.0;             // after row normalization
};

struct JointsResult {
    std::vector<JointDetection> joints;
    std::vector<Point> uncertain; // candidates that resisted certification
    long candidate_count = 0;
};

/// Joint detection: candidate points come from certified pairwise
/// intersections of the first two families (every joint lies on one curve of
/// each); a candidate is a joint when a certified curve of every family
/// passes through it and some choice of one curve per family has normalized
/// tangent determinant at least tol_span.
JointsResult find_joints(const JointsInstance& inst, double tol_span = 1e-9,
                         const SolveConfig& cfg = {});

/// 3 families of k^2 axis-parallel lines through the integer grid [1..k]^3;
/// exactly k^3 joints.
JointsInstance gen_joints_axis_grid(long k);

/// Certified intersection parameters of two parametric curves in R^n.
/// Exact 2x2 elimination when two matching equations are affine with
/// rational coefficients, Krawczyk subdivision otherwise; `exact` marks
/// which route produced each pair.
struct CurveIntersection {
    Rational t, u;     // parameters on the two curves
    bool exact = true; // false when only an interval certificate exists
    Box2 box;          // enclosure when not exact
};
std::vector<CurveIntersection> intersect_curves(const ParametricCurve& a,
                                                const ParametricCurve& b,
                                                const SolveConfig& cfg = {});

} // namespace pfn
