#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pfn/roots1d.hpp"

using namespace pfn;

namespace {

ChainPtr exp_chain() {
    static ChainPtr c = make_chain(ChainKind::exp, {Rational(1)});
    return c;
}

bool some_root_contains(const RootResult& r, double v) {
    for (const IsolatingInterval& iv : r.roots) {
        if (iv.lo.get_d() <= v && v <= iv.hi.get_d()) return true;
    }
    return false;
}

} // namespace

TEST_CASE("quadratic roots on the empty chain") {
    ChainPtr empty = make_chain(ChainKind::empty);
    MultiPoly q(1);
    q.add_term({2}, Rational(1));
    q.add_term({0}, Rational(-1));
    RootResult r = isolate_roots_1d(PfaffianFunction(empty, q), Rational(-2), Rational(2));
    CHECK(r.roots.size() == 2);
    CHECK(r.suspect.empty());
    CHECK(some_root_contains(r, -1.0));
    CHECK(some_root_contains(r, 1.0));
}

TEST_CASE("e^t = 2 has one root at ln 2") {
    MultiPoly q(2);
    q.add_term({0, 1}, Rational(1));
    q.add_term({0, 0}, Rational(-2));
    RootResult r = isolate_roots_1d(PfaffianFunction(exp_chain(), q), Rational(-2), Rational(2));
    REQUIRE(r.roots.size() == 1);
    CHECK(r.suspect.empty());
    CHECK(some_root_contains(r, std::log(2.0)));
}

TEST_CASE("e^t never vanishes") {
    MultiPoly q(2);
    q.add_term({0, 1}, Rational(1));
    RootResult r = isolate_roots_1d(PfaffianFunction(exp_chain(), q), Rational(-5), Rational(5));
    CHECK(r.roots.empty());
    CHECK(r.suspect.empty());
}

TEST_CASE("planted rational roots are recovered exactly") {
    // (t - 1/2)(t + 3/4)(e^t + 2): two roots, positive transcendental factor
    MultiPoly lin1(2), lin2(2), pos(2);
    lin1.add_term({1, 0}, Rational(1));
    lin1.add_term({0, 0}, Rational(-1, 2));
    lin2.add_term({1, 0}, Rational(1));
    lin2.add_term({0, 0}, Rational(3, 4));
    pos.add_term({0, 1}, Rational(1));
    pos.add_term({0, 0}, Rational(2));
    PfaffianFunction f(exp_chain(), lin1 * lin2 * pos);
    RootResult r = isolate_roots_1d(f, Rational(-2), Rational(2));
    REQUIRE(r.roots.size() == 2);
    CHECK(r.suspect.empty());
    CHECK(some_root_contains(r, 0.5));
    CHECK(some_root_contains(r, -0.75));
    // soundness: certified intervals are disjoint and endpoint signs differ
    for (const IsolatingInterval& iv : r.roots) {
        Interval a = Interval::from_rational(iv.lo), b = Interval::from_rational(iv.hi);
        int sa = f.eval(std::span<const Interval>(&a, 1)).sign();
        int sb = f.eval(std::span<const Interval>(&b, 1)).sign();
        CHECK(sa * sb == -1);
    }
    for (std::size_t i = 1; i < r.roots.size(); ++i) {
        CHECK(r.roots[i - 1].hi <= r.roots[i].lo);
    }
}

TEST_CASE("certified count never exceeds the Khovanskii bound") {
    Rng rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        MultiPoly q = test::random_poly(rng, 2, 4);
        PfaffianFunction f(exp_chain(), q);
        if (f.is_zero()) continue;
        RootResult r = isolate_roots_1d(f, Rational(-3), Rational(3));
        CHECK(Rational(static_cast<long>(r.roots.size())) <= r.khovanskii);
    }
}

TEST_CASE("identically zero input is rejected") {
    CHECK_THROWS_AS(
        isolate_roots_1d(PfaffianFunction(exp_chain(), MultiPoly(2)), Rational(0), Rational(1)),
        std::invalid_argument);
}

TEST_CASE("components along the exponential curve") {
    ChainPtr chain = exp_chain();
    ParametricCurve gamma(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                          Interval(-1.0, 1.0));
    // P = X_1: single root at t = 0 -> 2 components
    CHECK(components_along_curve(MultiPoly::variable(2, 0), gamma).components == 2);

    ParametricCurve gamma2(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                           Interval(-2.0, 2.0));
    MultiPoly p2(2);
    p2.add_term({2, 0}, Rational(1));
    p2.add_term({0, 0}, Rational(-1));
    CHECK(components_along_curve(p2, gamma2).components == 3);
}

TEST_CASE("even-multiplicity roots still split components") {
    ChainPtr chain = exp_chain();
    ParametricCurve gamma(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                          Interval(-2.0, 2.0));
    MultiPoly sq(2); // (x - 1)^2
    sq.add_term({2, 0}, Rational(1));
    sq.add_term({1, 0}, Rational(-2));
    sq.add_term({0, 0}, Rational(1));
    ComponentCount c = components_along_curve(sq, gamma);
    CHECK(c.complete);
    CHECK(c.components == 2);
}

TEST_CASE("curve inside the zero set is an error") {
    ChainPtr chain = exp_chain();
    ParametricCurve gamma(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                          Interval(-1.0, 1.0));
    MultiPoly zero(2);
    CHECK_THROWS_AS(components_along_curve(zero, gamma), std::domain_error);
}

TEST_CASE("component formula: roots + 1 when endpoints certify") {
    Rng rng(808);
    ChainPtr chain = exp_chain();
    ParametricCurve gamma(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                          Interval(-3.0, 3.0));
    int tested = 0;
    for (int trial = 0; trial < 40 && tested < 25; ++trial) {
        MultiPoly P = test::random_poly(rng, 2, 3);
        PfaffianFunction f = compose_on_curve(P, gamma);
        if (f.is_zero()) continue;
        ComponentCount c;
        try {
            c = components_along_curve(P, gamma);
        } catch (const std::domain_error&) {
            continue; // endpoint sign not certifiable for this draw
        }
        if (!c.complete) continue;
        ++tested;
        CHECK(c.components == static_cast<long>(c.detail.roots.size()) + 1);
    }
    CHECK(tested >= 10);
}

TEST_CASE("critical parameters on the curve") {
    ChainPtr chain = exp_chain();
    ParametricCurve gamma(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                          Interval(-1.0, 1.0));
    // P = X_2: restriction e^t is monotone
    CHECK(critical_values_on_curve(MultiPoly::variable(2, 1), gamma).roots.empty());
    // P = X_1^2: derivative 2t vanishes at 0
    MultiPoly x2(2);
    x2.add_term({2, 0}, Rational(1));
    RootResult r1 = critical_values_on_curve(x2, gamma);
    REQUIRE(r1.roots.size() == 1);
    CHECK(some_root_contains(r1, 0.0));
    // P = X_1^3 - 3 X_1: derivative 3t^2 - 3 vanishes at +-1
    ParametricCurve wide(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                         Interval(-2.0, 2.0));
    MultiPoly cubic(2);
    cubic.add_term({3, 0}, Rational(1));
    cubic.add_term({1, 0}, Rational(-3));
    RootResult r2 = critical_values_on_curve(cubic, wide);
    CHECK(r2.roots.size() == 2);
}

TEST_CASE("critical points cross-check the component count") {
    // on each bounded component the restriction has a critical parameter or
    // the component touches the domain boundary; here: P = X_1^2 - 1 on
    // (-2, 2) has 3 components and the middle one holds the critical point
    ChainPtr chain = exp_chain();
    ParametricCurve gamma(chain, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                          Interval(-2.0, 2.0));
    MultiPoly p(2);
    p.add_term({2, 0}, Rational(1));
    p.add_term({0, 0}, Rational(-1));
    ComponentCount c = components_along_curve(p, gamma);
    RootResult crit = critical_values_on_curve(p, gamma);
    CHECK(c.components == 3);
    CHECK(crit.roots.size() == 1);
    CHECK(c.components <= static_cast<long>(crit.roots.size()) + 2);
}

TEST_CASE("budget exhaustion reports incomplete, never silently drops") {
    MultiPoly q(2);
    q.add_term({2, 0}, Rational(1));
    q.add_term({0, 0}, Rational(-1));
    SolveConfig cfg;
    cfg.budget = 3;
    RootResult r = isolate_roots_1d(PfaffianFunction(exp_chain(), q), Rational(-2), Rational(2), cfg);
    CHECK(!r.complete);
    CHECK(!r.suspect.empty());
}

TEST_CASE("simplest rational in an interval") {
    CHECK(simplest_rational_between(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
    CHECK(simplest_rational_between(Rational(-1, 4), Rational(1, 8)) == 0);
    CHECK(simplest_rational_between(Rational(7, 5), Rational(3, 2)) == Rational(3, 2));
    CHECK(simplest_rational_between(Rational(31, 10), Rational(16, 5)) == Rational(16, 5));
    CHECK(simplest_rational_between(Rational(5), Rational(7)) == 5);
    CHECK(simplest_rational_between(Rational(-7, 2), Rational(-10, 3)) == Rational(-7, 2));
}
