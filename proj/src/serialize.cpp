#include "pfn/serialize.hpp"

#include <stdexcept>

namespace pfn {

Json rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw std::invalid_argument("expected a rational (string or number)");
}

Json poly_to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exp"] = e;
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        terms.push_back(std::move(t));
    }
    return Json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const Json& j) {
    MultiPoly p(j.at("nvars").get<int>());
    for (const Json& t : j.at("terms")) {
        MultiPoly::Exponents e = t.at("exp").get<MultiPoly::Exponents>();
        Rational c(Integer(t.at("num").get<std::string>(), 10),
                   Integer(t.at("den").get<std::string>(), 10));
        c.canonicalize();
        p.add_term(e, c);
    }
    return p;
}

Json chain_to_json(const PfaffianChain& c) {
    if (c.units().size() != 1) throw std::invalid_argument("only builtin chains serialize");
    const auto& u = c.units()[0];
    Json out;
    out["name"] = chain_kind_name(u.kind);
    Json params = Json::array();
    for (const Rational& p : u.params) params.push_back(rational_to_json(p));
    out["params"] = std::move(params);
    if (c.n() != chain_builtin(u.kind, u.params, u.mono_exponents).n()) out["ambient"] = c.n();
    if (!u.mono_exponents.empty()) out["monomial_exponents"] = u.mono_exponents;
    return out;
}

ChainPtr chain_from_json(const Json& j) {
    ChainKind kind = chain_kind_from_name(j.at("name").get<std::string>());
    std::vector<Rational> params;
    if (j.contains("params")) {
        for (const Json& p : j.at("params")) params.push_back(rational_from_json(p));
    }
    std::vector<unsigned> mono;
    if (j.contains("monomial_exponents")) mono = j.at("monomial_exponents").get<std::vector<unsigned>>();
    int ambient = j.value("ambient", -1);
    return make_chain(kind, params, ambient, mono);
}

Json function_to_json(const PfaffianFunction& f) {
    return Json{{"chain", chain_to_json(*f.chain())}, {"Q", poly_to_json(f.Q())}};
}

PfaffianFunction function_from_json(const Json& j) {
    return PfaffianFunction(chain_from_json(j.at("chain")), poly_from_json(j.at("Q")));
}

Json curve_to_json(const ParametricCurve& c) {
    Json coords = Json::array();
    for (const MultiPoly& x : c.coords) coords.push_back(poly_to_json(x));
    return Json{{"chain", chain_to_json(*c.chain1d)},
                {"coords", std::move(coords)},
                {"domain", Json::array({c.domain.lo, c.domain.hi})}};
}

ParametricCurve curve_from_json(const Json& j) {
    std::vector<MultiPoly> coords;
    for (const Json& c : j.at("coords")) coords.push_back(poly_from_json(c));
    const Json& d = j.at("domain");
    return ParametricCurve(chain_from_json(j.at("chain")), std::move(coords),
                           Interval(d.at(0).get<double>(), d.at(1).get<double>()));
}

Json point_to_json(const Point& p) {
    Json out = Json::array();
    for (const Rational& c : p) out.push_back(rational_to_json(c));
    return out;
}

Point point_from_json(const Json& j) {
    Point p;
    for (const Json& c : j) p.push_back(rational_from_json(c));
    return p;
}

BoundQuery bound_query_from_json(const Json& j) {
    BoundQuery q;
    q.n = j.value("n", 1);
    q.k = j.value("k", 0);
    q.r = j.value("r", 0);
    q.alpha = j.value("alpha", 1);
    q.xi = j.value("xi", 0);
    if (j.contains("betas")) q.betas = j.at("betas").get<std::vector<int>>();
    q.D = j.value("D", 1);
    q.m = j.value("m", 1L);
    q.s = j.value("s", 2);
    q.t = j.value("t", 2);
    if (j.contains("eps")) q.eps = rational_from_json(j.at("eps"));
    if (j.contains("cardinalities")) {
        for (const Json& c : j.at("cardinalities")) q.cardinalities.push_back(rational_from_json(c));
    }
    if (j.contains("thetas")) {
        for (const Json& c : j.at("thetas")) q.thetas.push_back(rational_from_json(c));
    }
    if (j.contains("C")) q.C = rational_from_json(j.at("C"));
    if (j.contains("C1")) q.C1 = rational_from_json(j.at("C1"));
    if (j.contains("C2")) q.C2 = rational_from_json(j.at("C2"));
    q.chain_independent = j.value("chain_independent", false);
    return q;
}

Json bound_query_to_json(const BoundQuery& q) {
    Json out;
    out["n"] = q.n;
    out["k"] = q.k;
    out["r"] = q.r;
    out["alpha"] = q.alpha;
    out["xi"] = q.xi;
    out["betas"] = q.betas;
    out["D"] = q.D;
    out["m"] = q.m;
    out["s"] = q.s;
    out["t"] = q.t;
    out["eps"] = rational_to_json(q.eps);
    Json cards = Json::array();
    for (const Rational& c : q.cardinalities) cards.push_back(rational_to_json(c));
    out["cardinalities"] = std::move(cards);
    Json thetas = Json::array();
    for (const Rational& c : q.thetas) thetas.push_back(rational_to_json(c));
    out["thetas"] = std::move(thetas);
    out["C"] = rational_to_json(q.C);
    out["C1"] = rational_to_json(q.C1);
    out["C2"] = rational_to_json(q.C2);
    out["chain_independent"] = q.chain_independent;
    return out;
}

Json bound_value_to_json(const BoundValue& v) {
    Json out;
    if (v.exact) out["exact"] = rational_to_json(*v.exact);
    out["approx"] = v.approx;
    if (v.invalid) out["invalid"] = true;
    if (v.trivial_guarantee) out["trivial_guarantee"] = true;
    if (!v.exponents.empty()) {
        Json e = Json::array();
        for (const auto& [name, q] : v.exponents) {
            e.push_back(Json{{"name", name}, {"value", rational_to_json(q)}});
        }
        out["exponents"] = std::move(e);
    }
    return out;
}

SolveConfig solve_config_from_json(const Json& j) {
    SolveConfig cfg;
    if (j.contains("min_width")) cfg.min_width = rational_from_json(j.at("min_width"));
    cfg.max_depth = j.value("max_depth", cfg.max_depth);
    cfg.budget = j.value("budget", cfg.budget);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("eps_cascade")) {
        std::vector<Rational> eps;
        for (const Json& e : j.at("eps_cascade")) eps.push_back(rational_from_json(e));
        cfg.eps_cascade = std::move(eps);
    }
    if (j.contains("eps1")) cfg.eps1 = rational_from_json(j.at("eps1"));
    return cfg;
}

Json root_result_to_json(const RootResult& r) {
    Json roots = Json::array();
    for (const IsolatingInterval& iv : r.roots) {
        roots.push_back(Json{{"lo", rational_to_json(iv.lo)},
                             {"hi", rational_to_json(iv.hi)},
                             {"certificate", certificate_name(iv.certificate)}});
    }
    Json suspect = Json::array();
    for (const auto& [lo, hi] : r.suspect) {
        suspect.push_back(Json{{"lo", rational_to_json(lo)}, {"hi", rational_to_json(hi)}});
    }
    return Json{{"count", r.roots.size()},
                {"roots", std::move(roots)},
                {"suspect", std::move(suspect)},
                {"complete", r.complete},
                {"nodes", r.nodes},
                {"khovanskii_bound", rational_to_json(r.khovanskii)}};
}

Json component_count_to_json(const ComponentCount& c) {
    return Json{{"components", c.components},
                {"complete", c.complete},
                {"roots", root_result_to_json(c.detail)}};
}

Json solve2d_result_to_json(const Solve2dResult& r) {
    Json sols = Json::array();
    for (const SolutionBox& s : r.solutions) {
        sols.push_back(Json{{"x", Json::array({s.box[0].lo, s.box[0].hi})},
                            {"y", Json::array({s.box[1].lo, s.box[1].hi})},
                            {"certificate", certificate_name(s.certificate)}});
    }
    Json suspect = Json::array();
    for (const Box2& b : r.suspect) {
        suspect.push_back(Json{{"x", Json::array({b[0].lo, b[0].hi})},
                               {"y", Json::array({b[1].lo, b[1].hi})}});
    }
    Json out{{"count", r.solutions.size()},
             {"solutions", std::move(sols)},
             {"suspect", std::move(suspect)},
             {"complete", r.complete},
             {"degenerate", r.degenerate},
             {"nodes", r.nodes},
             {"khovanskii_degenerate_bound", rational_to_json(r.bound)}};
    if (r.perturbed_count) {
        out["perturbed_count"] = *r.perturbed_count;
        Json eps = Json::array();
        for (const Rational& e : r.eps_used) eps.push_back(rational_to_json(e));
        out["eps_cascade"] = std::move(eps);
    }
    return out;
}

Json partition_to_json(const Partition& p, bool include_points) {
    Json out;
    out["schedule"] = Json{{"D", p.schedule.D}, {"m", p.schedule.m},
                           {"n", p.schedule.n}, {"s", p.schedule.s}, {"d", p.schedule.d}};
    Json factors = Json::array();
    for (const MultiPoly& f : p.factors) factors.push_back(poly_to_json(f));
    out["factors"] = std::move(factors);
    out["product_degree"] = p.product_degree;
    Json cells = Json::array();
    for (const auto& [key, per_col] : p.cells) {
        Json cell;
        cell["sigma"] = key;
        Json loads = Json::array();
        for (const auto& idxs : per_col) loads.push_back(idxs.size());
        cell["loads"] = std::move(loads);
        if (include_points) {
            Json pts = Json::array();
            for (const auto& idxs : per_col) pts.push_back(idxs);
            cell["points"] = std::move(pts);
        }
        cells.push_back(std::move(cell));
    }
    out["cells"] = std::move(cells);
    Json boundary = Json::array();
    for (const auto& idxs : p.boundary) boundary.push_back(idxs);
    out["boundary"] = std::move(boundary);
    out["collection_sizes"] = p.collection_sizes;
    out["max_load"] = p.max_load;
    out["target_load"] = p.target_load;
    out["guarantee_load"] = p.guarantee_load;
    out["achieved_imbalance"] = p.achieved_imbalance;
    out["met_tolerance"] = p.met_tolerance;
    if (p.degenerate_input) out["degenerate_input"] = true;
    return out;
}

Json pfaffian_partition_to_json(const PfaffianPartition& p) {
    Json out;
    out["chain"] = chain_to_json(*p.chain);
    out["lifted"] = partition_to_json(p.lifted);
    out["lift_error"] = rational_to_json(p.lift_error);
    Json pull = Json::array();
    for (const PfaffianFunction& f : p.pullback) pull.push_back(poly_to_json(f.Q()));
    out["pullback_factors"] = std::move(pull);
    Json amb = Json::array();
    for (const auto& idxs : p.ambiguous) amb.push_back(idxs);
    out["ambiguous"] = std::move(amb);
    return out;
}

Json incidence_instance_to_json(const IncidenceInstance& inst) {
    Json pts = Json::array();
    for (const Point& p : inst.points) pts.push_back(point_to_json(p));
    Json curves = Json::array();
    for (const Curve& c : inst.curves) {
        Json jc;
        jc["label"] = c.label;
        if (c.kind == Curve::Kind::implicit2d) {
            jc["implicit"] = poly_to_json(c.implicit);
        } else {
            jc["parametric"] = curve_to_json(*c.param);
        }
        curves.push_back(std::move(jc));
    }
    Json gt = Json::array();
    for (const auto& [p, c] : inst.ground_truth) gt.push_back(Json::array({p, c}));
    return Json{{"n", inst.n},
                {"generator", inst.generator},
                {"seed", inst.seed},
                {"designed_exclusion", Json::array({inst.s_designed, inst.t_designed})},
                {"points", std::move(pts)},
                {"curves", std::move(curves)},
                {"ground_truth", std::move(gt)}};
}

IncidenceInstance incidence_instance_from_json(const Json& j) {
    IncidenceInstance inst;
    inst.n = j.value("n", 2);
    inst.generator = j.value("generator", std::string("custom"));
    inst.seed = j.value("seed", 0ULL);
    if (j.contains("designed_exclusion")) {
        inst.s_designed = j.at("designed_exclusion").at(0).get<int>();
        inst.t_designed = j.at("designed_exclusion").at(1).get<int>();
    }
    for (const Json& p : j.at("points")) inst.points.push_back(point_from_json(p));
    for (const Json& c : j.at("curves")) {
        Curve curve;
        curve.label = c.value("label", std::string());
        if (c.contains("implicit")) {
            curve.kind = Curve::Kind::implicit2d;
            curve.implicit = poly_from_json(c.at("implicit"));
        } else {
            curve.kind = Curve::Kind::parametric;
            curve.param = curve_from_json(c.at("parametric"));
        }
        inst.curves.push_back(std::move(curve));
    }
    if (j.contains("ground_truth")) {
        for (const Json& g : j.at("ground_truth")) {
            inst.ground_truth.emplace_back(g.at(0).get<std::size_t>(), g.at(1).get<std::size_t>());
        }
    }
    return inst;
}

Json incidence_count_to_json(const IncidenceCount& c) {
    Json unc = Json::array();
    for (const auto& [p, cu] : c.uncertain) unc.push_back(Json::array({p, cu}));
    Json adj = Json::array();
    for (const auto& curves : c.graph.curves_of_point) adj.push_back(curves);
    return Json{{"count", c.count}, {"uncertain", std::move(unc)}, {"adjacency", std::move(adj)}};
}

Json joints_result_to_json(const JointsResult& r) {
    Json joints = Json::array();
    for (const JointDetection& j : r.joints) {
        joints.push_back(Json{{"location", point_to_json(j.location)},
                              {"curves", j.curve_of_family},
                              {"tangent_det", j.tangent_det}});
    }
    Json unc = Json::array();
    for (const Point& p : r.uncertain) unc.push_back(point_to_json(p));
    return Json{{"count", r.joints.size()},
                {"joints", std::move(joints)},
                {"uncertain", std::move(unc)},
                {"candidates", r.candidate_count}};
}

Json experiment_report_to_json(const ExperimentReport& r, bool include_wall_time) {
    Json rows = Json::array();
    for (const ExperimentRow& row : r.rows) {
        rows.push_back(Json{{"size_param", row.size_param},
                            {"points", row.points},
                            {"curves", row.curves},
                            {"measured", row.measured},
                            {"uncertain", row.uncertain},
                            {"bound_at_c1", row.bound_at_c1},
                            {"ratio", row.ratio}});
    }
    Json out{{"family", r.spec.family},
             {"bound", r.spec.bound},
             {"seed", r.spec.seed},
             {"ladder", r.spec.ladder},
             {"s", r.spec.s},
             {"t", r.spec.t},
             {"r", r.spec.r},
             {"rows", std::move(rows)},
             {"fitted_exponent", r.fitted_exponent},
             {"fitted_constant", r.fitted_constant},
             {"max_ratio", r.max_ratio},
             {"version", r.version}};
    if (include_wall_time) out["wall_ms"] = r.wall_ms;
    return out;
}

ExperimentSpec experiment_spec_from_json(const Json& j) {
    ExperimentSpec spec;
    spec.family = j.value("family", spec.family);
    spec.bound = j.value("bound", spec.bound);
    if (j.contains("ladder")) spec.ladder = j.at("ladder").get<std::vector<long>>();
    spec.seed = j.value("seed", spec.seed);
    spec.s = j.value("s", spec.s);
    spec.t = j.value("t", spec.t);
    spec.r = j.value("r", spec.r);
    if (j.contains("eps")) spec.eps = rational_from_json(j.at("eps"));
    return spec;
}

} // namespace pfn
