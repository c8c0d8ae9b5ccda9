#include "pfn/joints.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pfn {

namespace {

// affine form alpha*t + gamma of a coordinate that reads no chain value
std::optional<std::pair<Rational, Rational>> affine_coord(const MultiPoly& q) {
    Rational a(0), g(0);
    for (const auto& [e, c] : q.terms()) {
        for (std::size_t i = 1; i < e.size(); ++i) {
            if (e[i] != 0) return std::nullopt;
        }
        if (e[0] == 0) g = c;
        else if (e[0] == 1) a = c;
        else return std::nullopt;
    }
    return std::make_pair(a, g);
}

double det_normalized(std::vector<std::vector<double>> rows) {
    const std::size_t n = rows.size();
    for (auto& r : rows) {
        double norm = 0.0;
        for (double v : r) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 1e-300) return 0.0;
        for (double& v : r) v /= norm;
    }
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::fabs(rows[r][c]) > std::fabs(rows[piv][c])) piv = r;
        }
        if (std::fabs(rows[piv][c]) < 1e-300) return 0.0;
        if (piv != c) {
            std::swap(rows[piv], rows[c]);
            det = -det;
        }
        det *= rows[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = rows[r][c] / rows[c][c];
            for (std::size_t k = c; k < n; ++k) rows[r][k] -= f * rows[c][k];
        }
    }
    return det;
}

} // namespace

std::vector<CurveIntersection> intersect_curves(const ParametricCurve& a,
                                                const ParametricCurve& b,
                                                const SolveConfig& cfg) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw std::invalid_argument("curves live in different dimensions");
    }
    const int n = a.ambient_dim();
    std::vector<CurveIntersection> out;

    // exact route: every matching equation affine in (t, u)
    bool all_affine = true;
    std::vector<std::array<Rational, 3>> eqs; // alpha t - beta u + gamma = 0
    for (int i = 0; i < n && all_affine; ++i) {
        auto fa = affine_coord(a.coords[i]);
        auto fb = affine_coord(b.coords[i]);
        if (!fa || !fb) {
            all_affine = false;
            break;
        }
        eqs.push_back({fa->first, -fb->first, fa->second - fb->second});
    }
    if (all_affine) {
        // pick two equations of rank 2
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                Rational det = eqs[i][0] * eqs[j][1] - eqs[j][0] * eqs[i][1];
                if (sgn(det) == 0) continue;
                Rational t = (-eqs[i][2] * eqs[j][1] + eqs[j][2] * eqs[i][1]) / det;
                Rational u = (-eqs[i][0] * eqs[j][2] + eqs[j][0] * eqs[i][2]) / det;
                bool consistent = true;
                for (int l = 0; l < n; ++l) {
                    if (sgn(eqs[l][0] * t + eqs[l][1] * u + eqs[l][2]) != 0) {
                        consistent = false;
                        break;
                    }
                }
                double td = t.get_d(), ud = u.get_d();
                if (consistent && td > a.domain.lo && td < a.domain.hi && ud > b.domain.lo &&
                    ud < b.domain.hi) {
                    CurveIntersection ci;
                    ci.t = t;
                    ci.u = u;
                    ci.exact = true;
                    out.push_back(std::move(ci));
                }
                return out; // rank-2 system has at most this one solution
            }
        }
        return out; // parallel or coincident affine curves: no isolated point
    }

    // certified route over the stacked (t, u) chain
    ChainPtr stacked = std::make_shared<const PfaffianChain>(chain_stack(*a.chain1d, *b.chain1d));
    const int ra = a.chain1d->r(), rb = b.chain1d->r();
    const int nv = 2 + ra + rb;
    std::vector<int> map_a(1 + ra), map_b(1 + rb);
    map_a[0] = 0;
    for (int j = 0; j < ra; ++j) map_a[1 + j] = 2 + j;
    map_b[0] = 1;
    for (int j = 0; j < rb; ++j) map_b[1 + j] = 2 + ra + j;

    std::vector<PfaffianFunction> eq;
    for (int i = 0; i < n; ++i) {
        MultiPoly g = a.coords[i].remapped(map_a, nv) - b.coords[i].remapped(map_b, nv);
        eq.emplace_back(stacked, std::move(g));
    }
    // any equation pair that jointly involves both parameters (possibly
    // through chain entries) makes a square system; the rest are checked at
    // the solutions
    int i1 = -1, i2 = -1;
    for (int i = 0; i < n && i1 < 0; ++i) {
        for (int j = i + 1; j < n && i1 < 0; ++j) {
            bool reads_t = eq[i].reads_variable(0) || eq[j].reads_variable(0);
            bool reads_u = eq[i].reads_variable(1) || eq[j].reads_variable(1);
            if (reads_t && reads_u) {
                i1 = i;
                i2 = j;
            }
        }
    }
    if (i1 < 0) return out;
    Box2 box{Interval(a.domain.lo, a.domain.hi), Interval(b.domain.lo, b.domain.hi)};
    Solve2dResult sol = solve_system_2d(eq[i1], eq[i2], box, cfg);
    for (const SolutionBox& sb : sol.solutions) {
        bool consistent = true;
        for (int l = 0; l < n; ++l) {
            if (l == i1 || l == i2) continue;
            if (!eq[l].eval(std::span<const Interval>(sb.box.data(), 2)).contains_zero()) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        CurveIntersection ci;
        ci.exact = false;
        ci.box = sb.box;
        ci.t = rational_from_double(sb.box[0].mid());
        ci.u = rational_from_double(sb.box[1].mid());
        out.push_back(std::move(ci));
    }
    return out;
}

JointsResult find_joints(const JointsInstance& inst, double tol_span, const SolveConfig& cfg) {
    const int n = inst.n;
    if (static_cast<int>(inst.families.size()) != n) {
        throw std::invalid_argument("need one curve family per dimension");
    }
    for (const auto& fam : inst.families) {
        for (const ParametricCurve& c : fam) {
            if (c.ambient_dim() != n) throw std::invalid_argument("curve dimension mismatch");
        }
    }
    JointsResult out;
    if (n < 2 || inst.families[0].empty() || inst.families[1].empty()) return out;

    // candidates: certified intersections of family-0 and family-1 curves
    // (every joint lies on one curve from each)
    std::map<std::vector<std::string>, Point> candidates; // exact-coordinate key
    for (const ParametricCurve& c0 : inst.families[0]) {
        for (const ParametricCurve& c1 : inst.families[1]) {
            for (const CurveIntersection& ci : intersect_curves(c0, c1, cfg)) {
                Point p;
                bool exact = ci.exact;
                if (exact) {
                    for (int i = 0; i < n; ++i) {
                        auto v = PfaffianFunction(c0.chain1d, c0.coords[i])
                                     .eval_exact(std::span<const Rational>(&ci.t, 1));
                        if (!v) {
                            exact = false;
                            break;
                        }
                        p.push_back(*v);
                    }
                }
                if (!exact) {
                    // location known only approximately: report, don't guess
                    std::vector<double> loc = c0.eval(ci.t.get_d());
                    Point approx;
                    for (double v : loc) approx.push_back(rational_from_double(v));
                    out.uncertain.push_back(std::move(approx));
                    continue;
                }
                std::vector<std::string> key;
                for (const Rational& v : p) key.push_back(v.get_str());
                candidates.emplace(std::move(key), std::move(p));
            }
        }
    }
    out.candidate_count = static_cast<long>(candidates.size());

    for (auto& [key, p] : candidates) {
        // one certified curve per family through p, with its parameter
        std::vector<std::vector<std::pair<std::size_t, Rational>>> through(n);
        bool family_uncertain = false;
        for (int f = 0; f < n && !family_uncertain; ++f) {
            for (std::size_t cix = 0; cix < inst.families[f].size(); ++cix) {
                Curve wrapper;
                wrapper.kind = Curve::Kind::parametric;
                wrapper.param = inst.families[f][cix];
                MembershipDetail md = certify_membership_detail(p, wrapper, cfg);
                if (md.verdict == Membership::certified_in && md.parameter) {
                    through[f].emplace_back(cix, *md.parameter);
                    if (through[f].size() >= 8) break; // span check cap
                } else if (md.verdict == Membership::uncertain) {
                    family_uncertain = true;
                }
            }
        }
        bool missing = false;
        for (int f = 0; f < n; ++f) {
            if (through[f].empty()) missing = true;
        }
        if (missing) {
            if (family_uncertain) out.uncertain.push_back(p);
            continue;
        }

        // search combinations for a spanning tangent frame
        double best_det = 0.0;
        std::vector<std::size_t> best_pick;
        std::vector<std::size_t> pick(n, 0);
        auto combos = [&](auto&& self, int f) -> bool {
            if (f == n) {
                std::vector<std::vector<double>> rows;
                for (int i = 0; i < n; ++i) {
                    const auto& [cix, t] = through[i][pick[i]];
                    const ParametricCurve& c = inst.families[i][cix];
                    double td = t.get_d();
                    std::vector<double> row;
                    for (const PfaffianFunction& dt : c.tangent()) {
                        row.push_back(dt.eval(std::span<const double>(&td, 1)));
                    }
                    rows.push_back(std::move(row));
                }
                double det = std::fabs(det_normalized(rows));
                if (det > best_det) {
                    best_det = det;
                    best_pick.assign(pick.begin(), pick.end());
                }
                return det >= tol_span;
            }
            for (std::size_t i = 0; i < through[f].size(); ++i) {
                pick[f] = i;
                if (self(self, f + 1)) return true;
            }
            return false;
        };
        bool spanned = combos(combos, 0);
        if (spanned) {
            JointDetection jd;
            jd.location = p;
            jd.tangent_det = best_det;
            for (int f = 0; f < n; ++f) jd.curve_of_family.push_back(through[f][best_pick[f]].first);
            out.joints.push_back(std::move(jd));
        } else if (best_det > 0.1 * tol_span) {
            out.uncertain.push_back(p); // near-tangency, not certifiable either way
        }
    }
    return out;
}

JointsInstance gen_joints_axis_grid(long k) {
    if (k < 1) throw std::invalid_argument("grid scale k >= 1 required");
    JointsInstance inst;
    inst.n = 3;
    inst.generator = "axis_grid";
    ChainPtr chain = make_chain(ChainKind::empty);
    Interval dom(0.0, static_cast<double>(k) + 1.0);
    auto var_t = MultiPoly::variable(1, 0);
    auto cst = [&](long v) { return MultiPoly::constant(1, Rational(v)); };
    inst.families.resize(3);
    for (long a = 1; a <= k; ++a) {
        for (long b = 1; b <= k; ++b) {
            inst.families[0].emplace_back(chain, std::vector<MultiPoly>{var_t, cst(a), cst(b)}, dom);
            inst.families[1].emplace_back(chain, std::vector<MultiPoly>{cst(a), var_t, cst(b)}, dom);
            inst.families[2].emplace_back(chain, std::vector<MultiPoly>{cst(a), cst(b), var_t}, dom);
        }
    }
    for (long x = 1; x <= k; ++x) {
        for (long y = 1; y <= k; ++y) {
            for (long z = 1; z <= k; ++z) {
                inst.ground_truth.push_back({Rational(x), Rational(y), Rational(z)});
            }
        }
    }
    return inst;
}

} // namespace pfn
