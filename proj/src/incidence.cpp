#include "pfn/incidence.hpp"

#include <algorithm>
#include <stdexcept>

#include "pfn/rng.hpp"

namespace pfn {

namespace {

// affine coordinate a*t + b with a != 0, ignoring chain variables
std::optional<std::pair<Rational, Rational>> affine_in_t(const MultiPoly& q) {
    Rational a(0), b(0);
    for (const auto& [e, c] : q.terms()) {
        unsigned deg_t = e[0];
        for (std::size_t i = 1; i < e.size(); ++i) {
            if (e[i] != 0) return std::nullopt; // reads a chain value
        }
        if (deg_t == 0) b = c;
        else if (deg_t == 1) a = c;
        else return std::nullopt;
    }
    if (sgn(a) == 0) return std::nullopt;
    return std::make_pair(a, b);
}

bool param_in_domain(const ParametricCurve& curve, const Rational& t) {
    double td = t.get_d();
    return td > curve.domain.lo && td < curve.domain.hi;
}

MembershipDetail match_at_parameter(const ParametricCurve& curve, const Point& p,
                                    const Rational& t) {
    MembershipDetail out;
    bool all_exact = true;
    for (int j = 0; j < curve.ambient_dim(); ++j) {
        PfaffianFunction cj = curve.coordinate(j);
        auto exact = cj.eval_exact(std::span<const Rational>(&t, 1));
        if (exact) {
            if (*exact != p[j]) {
                out.verdict = Membership::certified_out;
                return out;
            }
            continue;
        }
        all_exact = false;
        Interval ti = Interval::from_rational(t);
        Interval v = cj.eval(std::span<const Interval>(&ti, 1)) - Interval::from_rational(p[j]);
        if (!v.contains_zero()) {
            out.verdict = Membership::certified_out;
            return out;
        }
    }
    if (all_exact) {
        out.verdict = Membership::certified_in;
        out.parameter = t;
    } else {
        out.verdict = Membership::uncertain;
    }
    return out;
}

} // namespace

MembershipDetail certify_membership_detail(const Point& p, const Curve& c,
                                           const SolveConfig& cfg) {
    MembershipDetail out;
    if (c.kind == Curve::Kind::implicit2d) {
        if (p.size() != 2) throw std::invalid_argument("implicit curves live in the plane");
        out.verdict = sgn(c.implicit.eval(std::span<const Rational>(p))) == 0
                          ? Membership::certified_in
                          : Membership::certified_out;
        return out;
    }
    const ParametricCurve& curve = *c.param;
    if (static_cast<int>(p.size()) != curve.ambient_dim()) {
        throw std::invalid_argument("point dimension mismatch");
    }
    // pin the parameter through a coordinate that is affine in t
    for (int i = 0; i < curve.ambient_dim(); ++i) {
        if (auto ab = affine_in_t(curve.coords[i])) {
            Rational t = (p[i] - ab->second) / ab->first;
            if (!param_in_domain(curve, t)) {
                out.verdict = Membership::certified_out;
                return out;
            }
            return match_at_parameter(curve, p, t);
        }
    }
    // fall back to certified root isolation on the first usable coordinate
    for (int i = 0; i < curve.ambient_dim(); ++i) {
        PfaffianFunction ci = curve.coordinate(i);
        MultiPoly shifted = ci.Q() - MultiPoly::constant(ci.Q().nvars(), p[i]);
        if (shifted.is_zero()) continue; // coordinate identically equals p_i
        PfaffianFunction f(curve.chain1d, shifted);
        RootResult roots = isolate_roots_1d(f, rational_from_double(curve.domain.lo),
                                            rational_from_double(curve.domain.hi), cfg);
        bool any_uncertain = !roots.suspect.empty() || !roots.complete;
        for (const IsolatingInterval& iv : roots.roots) {
            Rational cand = simplest_rational_between(iv.lo, iv.hi);
            MembershipDetail md = match_at_parameter(curve, p, cand);
            if (md.verdict == Membership::certified_in) return md;
            if (md.verdict == Membership::uncertain) {
                // compare remaining coordinates over the whole root box
                Interval box = Interval(Interval::from_rational(iv.lo).lo,
                                        Interval::from_rational(iv.hi).hi);
                bool excluded = false;
                for (int j = 0; j < curve.ambient_dim(); ++j) {
                    Interval v = curve.coordinate(j).eval(std::span<const Interval>(&box, 1)) -
                                 Interval::from_rational(p[j]);
                    if (!v.contains_zero()) {
                        excluded = true;
                        break;
                    }
                }
                if (!excluded) any_uncertain = true;
            }
        }
        out.verdict = any_uncertain ? Membership::uncertain : Membership::certified_out;
        return out;
    }
    out.verdict = Membership::uncertain;
    return out;
}

Membership certify_membership(const Point& p, const Curve& c, const SolveConfig& cfg) {
    return certify_membership_detail(p, c, cfg).verdict;
}

IncidenceCount count_incidences(const IncidenceInstance& inst, const SolveConfig& cfg) {
    IncidenceCount out;
    out.graph.npoints = inst.points.size();
    out.graph.ncurves = inst.curves.size();
    out.graph.curves_of_point.assign(inst.points.size(), {});
    for (std::size_t pi = 0; pi < inst.points.size(); ++pi) {
        for (std::size_t ci = 0; ci < inst.curves.size(); ++ci) {
            Membership m = certify_membership(inst.points[pi], inst.curves[ci], cfg);
            if (m == Membership::certified_in) {
                out.graph.curves_of_point[pi].push_back(ci);
                ++out.graph.edges;
                ++out.count;
            } else if (m == Membership::uncertain) {
                out.uncertain.emplace_back(pi, ci);
            }
        }
    }
    return out;
}

bool kst_free(const IncidenceGraph& g, int s, int t, std::size_t point_limit) {
    if (s < 1 || t < 1) throw std::invalid_argument("s, t >= 1 required");
    if (g.npoints > point_limit) {
        throw std::length_error("instance too large for exhaustive K_{s,t} check");
    }
    std::vector<std::size_t> cand;
    for (std::size_t p = 0; p < g.npoints; ++p) {
        if (g.degree(p) >= static_cast<std::size_t>(t)) cand.push_back(p);
    }
    if (cand.size() < static_cast<std::size_t>(s)) return true;
    // depth-first over s-subsets, carrying the running curve intersection;
    // branches whose intersection drops below t are cut immediately
    auto subsets = [&](auto&& self, std::size_t start, int depth,
                       const std::vector<std::size_t>& inter) -> bool {
        if (depth == s) return inter.size() >= static_cast<std::size_t>(t);
        for (std::size_t i = start; i < cand.size(); ++i) {
            std::vector<std::size_t> next;
            if (depth == 0) {
                next = g.curves_of_point[cand[i]];
            } else {
                std::set_intersection(inter.begin(), inter.end(),
                                      g.curves_of_point[cand[i]].begin(),
                                      g.curves_of_point[cand[i]].end(),
                                      std::back_inserter(next));
            }
            if (next.size() >= static_cast<std::size_t>(t)) {
                if (self(self, i + 1, depth + 1, next)) return true;
            }
        }
        return false;
    };
    return !subsets(subsets, 0, 0, {});
}

IncidenceInstance gen_incidence(const std::string& kind, const IncidenceGenParams& params,
                                std::uint64_t seed) {
    IncidenceInstance inst;
    inst.generator = kind;
    inst.seed = seed;
    Rng rng(seed);

    if (kind == "line_grid") {
        const long k = params.k;
        if (k < 1) throw std::invalid_argument("line_grid needs k >= 1");
        inst.s_designed = 2;
        inst.t_designed = 2;
        // points [1..k] x [1..2k^2], lines y = m x + b with m in [1..k],
        // b in [1..k^2]; each line carries exactly k grid points
        for (long x = 1; x <= k; ++x) {
            for (long y = 1; y <= 2 * k * k; ++y) {
                inst.points.push_back({Rational(x), Rational(y)});
            }
        }
        auto point_index = [&](long x, long y) {
            return static_cast<std::size_t>((x - 1) * 2 * k * k + (y - 1));
        };
        for (long mm = 1; mm <= k; ++mm) {
            for (long b = 1; b <= k * k; ++b) {
                Curve c;
                c.kind = Curve::Kind::implicit2d;
                MultiPoly line(2);
                line.add_term({1, 0}, Rational(mm));
                line.add_term({0, 1}, Rational(-1));
                line.add_term({0, 0}, Rational(b));
                c.implicit = line;
                c.label = "line m=" + std::to_string(mm) + " b=" + std::to_string(b);
                std::size_t ci = inst.curves.size();
                inst.curves.push_back(std::move(c));
                for (long x = 1; x <= k; ++x) {
                    inst.ground_truth.emplace_back(point_index(x, mm * x + b), ci);
                }
            }
        }
        return inst;
    }

    if (kind == "circles") {
        inst.s_designed = 2;
        inst.t_designed = params.concentric ? 2 : 3;
        if (params.concentric) {
            for (long rr = 1; rr <= params.curve_count; ++rr) {
                Curve c;
                MultiPoly circ(2);
                circ.add_term({2, 0}, Rational(1));
                circ.add_term({0, 2}, Rational(1));
                circ.add_term({0, 0}, Rational(-rr * rr));
                c.implicit = circ;
                c.label = "circle r=" + std::to_string(rr);
                inst.curves.push_back(std::move(c));
            }
            for (long i = 0; i < params.point_count; ++i) {
                inst.points.push_back({Rational(0), Rational(0)}); // center, off every circle
            }
            return inst;
        }
        // unit circles on a centers x centers grid, rational points planted
        // via the Pythagorean parametrization
        for (long a = 0; a < params.centers; ++a) {
            for (long b = 0; b < params.centers; ++b) {
                Curve c;
                MultiPoly circ(2);
                circ.add_term({2, 0}, Rational(1));
                circ.add_term({1, 0}, Rational(-2 * a));
                circ.add_term({0, 2}, Rational(1));
                circ.add_term({0, 1}, Rational(-2 * b));
                circ.add_term({0, 0}, Rational(a * a + b * b - 1));
                c.implicit = circ;
                c.label = "unit circle at (" + std::to_string(a) + "," + std::to_string(b) + ")";
                std::size_t ci = inst.curves.size();
                inst.curves.push_back(std::move(c));
                for (long i = 0; i < params.point_count; ++i) {
                    // distinct u per point keeps the planted points distinct
                    Rational u = frac(41 * (i + 1) + static_cast<long>(rng.below(40)), 37);
                    Rational den = 1 + u * u;
                    Point p{Rational(a) + (1 - u * u) / den, Rational(b) + 2 * u / den};
                    inst.ground_truth.emplace_back(inst.points.size(), ci);
                    inst.points.push_back(std::move(p));
                }
            }
        }
        return inst;
    }

    if (kind == "exp_curves") {
        inst.s_designed = 2;
        inst.t_designed = 2;
        ChainPtr chain = make_chain(ChainKind::exp, {params.rate});
        for (long i = 0; i < params.curve_count; ++i) {
            Rational a = Rational(1) + frac(1 + static_cast<long>(rng.below(12)), 7);
            Rational c0 = frac(static_cast<long>(rng.below(9)), 3);
            MultiPoly x_of_t(2), y_of_t(2);
            x_of_t.add_term({1, 0}, Rational(1));
            y_of_t.add_term({0, 1}, a);
            y_of_t.add_term({0, 0}, c0);
            Curve c;
            c.kind = Curve::Kind::parametric;
            c.param = ParametricCurve(chain, {x_of_t, y_of_t}, Interval(-10.0, 10.0));
            c.label = "y = " + a.get_str() + " e^(" + params.rate.get_str() + " x) + " + c0.get_str();
            std::size_t ci = inst.curves.size();
            inst.curves.push_back(std::move(c));
            // one exactly certifiable anchor per curve, at x = 0
            inst.ground_truth.emplace_back(inst.points.size(), ci);
            inst.points.push_back({Rational(0), a + c0});
        }
        // certified-out decoys strictly below every curve (a > 0, c >= 0)
        for (long i = 0; i < params.point_count; ++i) {
            inst.points.push_back(
                {Rational(static_cast<long>(rng.below(9)) - 4), Rational(-1 - i)});
        }
        return inst;
    }

    if (kind == "planted") {
        inst.s_designed = 2;
        inst.t_designed = 2;
        const long N = params.point_count;
        if (params.planted_kind == "exp_anchor") {
            IncidenceGenParams sub = params;
            sub.curve_count = N;
            sub.point_count = 0;
            IncidenceInstance e = gen_incidence("exp_curves", sub, seed);
            e.generator = "planted";
            return e;
        }
        // one curve through N rational points: (t, t^2); with planted_kind
        // exp_poly the same coordinates are carried by the exp(1) chain, so
        // certification exercises the Pfaffian path while staying exact
        ChainPtr chain = params.planted_kind == "exp_poly"
                             ? make_chain(ChainKind::exp, {Rational(1)})
                             : make_chain(ChainKind::empty);
        int nv = 1 + chain->r();
        MultiPoly x_of_t(nv), y_of_t(nv);
        MultiPoly::Exponents e1(nv, 0), e2(nv, 0);
        e1[0] = 1;
        e2[0] = 2;
        x_of_t.add_term(e1, Rational(1));
        y_of_t.add_term(e2, Rational(1));
        Curve c;
        c.kind = Curve::Kind::parametric;
        c.param = ParametricCurve(chain, {x_of_t, y_of_t},
                                  Interval(-1.0, static_cast<double>(N) + 1.0));
        c.label = "parabola (t, t^2)";
        inst.curves.push_back(std::move(c));
        for (long i = 1; i <= N; ++i) {
            inst.ground_truth.emplace_back(inst.points.size(), 0);
            inst.points.push_back({Rational(i), Rational(i * i)});
        }
        return inst;
    }

    throw std::invalid_argument("unknown incidence generator: " + kind);
}

} // namespace pfn
