#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pfn/serialize.hpp"

using namespace pfn;

TEST_CASE("rational wire format is a decimal string") {
    CHECK(rational_to_json(Rational(-7, 3)) == "-7/3");
    CHECK(rational_from_json(Json("5/4")) == Rational(5, 4));
    CHECK(rational_from_json(Json(3)) == 3);
    CHECK(rational_from_json(Json("-1.25")) == Rational(-5, 4));
}

TEST_CASE("polynomial round-trip with exact coefficients") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        MultiPoly p = test::random_poly(rng, 3, 4);
        Json j = poly_to_json(p);
        CHECK(poly_from_json(j) == p);
        // schema shape
        CHECK(j.contains("nvars"));
        for (const Json& t : j.at("terms")) {
            CHECK(t.contains("exp"));
            CHECK(t.at("num").is_string());
            CHECK(t.at("den").is_string());
        }
    }
}

TEST_CASE("chain and function round-trip") {
    for (const auto& cc : test::builtin_chain_cases()) {
        Json j = chain_to_json(*cc.chain);
        ChainPtr back = chain_from_json(j);
        CHECK(*back == *cc.chain);
    }
    Json few = chain_to_json(*make_chain(ChainKind::fewnomial_monomial, {Rational(2)}, -1, {1, 2}));
    CHECK(few.at("monomial_exponents") == Json::array({1, 2}));
    CHECK(*chain_from_json(few) == *make_chain(ChainKind::fewnomial_monomial, {Rational(2)}, -1, {1, 2}));

    // embedded ambient survives
    ChainPtr emb = make_chain(ChainKind::exp, {Rational(1)}, 3);
    CHECK(chain_from_json(chain_to_json(*emb))->n() == 3);

    ChainPtr chain = make_chain(ChainKind::exp, {Rational(1)});
    MultiPoly q(2);
    q.add_term({1, 1}, Rational(3, 7));
    PfaffianFunction f(chain, q);
    Json j = function_to_json(f);
    PfaffianFunction back = function_from_json(j);
    CHECK(back.Q() == f.Q());
    CHECK(*back.chain() == *f.chain());
}

TEST_CASE("curve round-trip") {
    ChainPtr chain = make_chain(ChainKind::exp, {Rational(1)});
    ParametricCurve c(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                      Interval(-3.0, 3.0));
    ParametricCurve back = curve_from_json(curve_to_json(c));
    CHECK(back.coords[0] == c.coords[0]);
    CHECK(back.coords[1] == c.coords[1]);
    CHECK(back.domain.lo == c.domain.lo);
}

TEST_CASE("bound query round-trip and value rendering") {
    BoundQuery q;
    q.n = 3;
    q.r = 2;
    q.betas = {2, 3, 4};
    q.cardinalities = {Rational(10), Rational(20)};
    q.C = Rational(7, 2);
    Json j = bound_query_to_json(q);
    BoundQuery back = bound_query_from_json(j);
    CHECK(back.n == 3);
    CHECK(back.betas == q.betas);
    CHECK(back.C == q.C);

    BoundValue v = khovanskii_bound([] {
        BoundQuery k;
        k.n = 2;
        k.betas = {2, 3};
        return k;
    }());
    Json jv = bound_value_to_json(v);
    CHECK(jv.at("exact") == "6");
    CHECK(jv.at("approx") == 6.0);
}

TEST_CASE("incidence instance round-trip") {
    IncidenceGenParams p;
    p.curve_count = 2;
    p.point_count = 2;
    IncidenceInstance inst = gen_incidence("exp_curves", p, 77);
    Json j = incidence_instance_to_json(inst);
    IncidenceInstance back = incidence_instance_from_json(j);
    CHECK(back.points.size() == inst.points.size());
    CHECK(back.curves.size() == inst.curves.size());
    CHECK(back.ground_truth == inst.ground_truth);
    CHECK(count_incidences(back).count == count_incidences(inst).count);
}

TEST_CASE("serialization is deterministic") {
    IncidenceGenParams p;
    p.k = 2;
    IncidenceInstance inst = gen_incidence("line_grid", p, 5);
    CHECK(incidence_instance_to_json(inst).dump() == incidence_instance_to_json(inst).dump());
    ExperimentSpec spec;
    spec.ladder = {2, 3};
    ExperimentReport r1 = run_experiment(spec);
    ExperimentReport r2 = run_experiment(spec);
    CHECK(experiment_report_to_json(r1, false).dump() ==
          experiment_report_to_json(r2, false).dump());
}
