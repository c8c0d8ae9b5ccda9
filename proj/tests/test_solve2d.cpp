#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pfn/solve2d.hpp"

using namespace pfn;

namespace {

bool some_box_contains(const Solve2dResult& r, double x, double y) {
    for (const SolutionBox& s : r.solutions) {
        if (s.box[0].contains(x) && s.box[1].contains(y)) return true;
    }
    return false;
}

} // namespace

TEST_CASE("circle and line") {
    ChainPtr empty2 = make_chain(ChainKind::empty, {}, 2);
    MultiPoly circle(2), line(2);
    circle.add_term({2, 0}, Rational(1));
    circle.add_term({0, 2}, Rational(1));
    circle.add_term({0, 0}, Rational(-1));
    line.add_term({0, 1}, Rational(1));
    line.add_term({1, 0}, Rational(-1));
    Solve2dResult r = solve_system_2d(PfaffianFunction(empty2, circle),
                                      PfaffianFunction(empty2, line),
                                      {Interval(-1.0, 1.0), Interval(-1.0, 1.0)});
    REQUIRE(r.solutions.size() == 2);
    CHECK(r.suspect.empty());
    const double s = std::sqrt(0.5);
    CHECK(some_box_contains(r, s, s));
    CHECK(some_box_contains(r, -s, -s));
}

TEST_CASE("coordinate axes meet only at the origin") {
    ChainPtr empty2 = make_chain(ChainKind::empty, {}, 2);
    Solve2dResult r = solve_system_2d(PfaffianFunction(empty2, MultiPoly::variable(2, 0)),
                                      PfaffianFunction(empty2, MultiPoly::variable(2, 1)),
                                      {Interval(-1.0, 1.0), Interval(-1.0, 1.0)});
    REQUIRE(r.solutions.size() == 1);
    CHECK(some_box_contains(r, 0.0, 0.0));
}

TEST_CASE("y = e^x meets y = 1 at (0, 1)") {
    ChainPtr exp2 = make_chain(ChainKind::exp, {Rational(1)}, 2); // q = e^{x_1}
    MultiPoly f1(3), f2(3);
    f1.add_term({0, 1, 0}, Rational(1));  // y
    f1.add_term({0, 0, 1}, Rational(-1)); // - e^x
    f2.add_term({0, 1, 0}, Rational(1));
    f2.add_term({0, 0, 0}, Rational(-1));
    Solve2dResult r = solve_system_2d(PfaffianFunction(exp2, f1), PfaffianFunction(exp2, f2),
                                      {Interval(-1.0, 1.0), Interval(0.0, 2.0)});
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.suspect.empty());
    CHECK(some_box_contains(r, 0.0, 1.0));
    CHECK(Rational(static_cast<long>(r.solutions.size())) <= r.bound);
}

TEST_CASE("certified counts respect the degenerate-system bound") {
    Rng rng(515);
    ChainPtr exp2 = make_chain(ChainKind::exp, {Rational(1)}, 2);
    int solved = 0;
    for (int trial = 0; trial < 30; ++trial) {
        MultiPoly q1 = test::random_poly(rng, 3, 2, 4);
        MultiPoly q2 = test::random_poly(rng, 3, 2, 4);
        PfaffianFunction f1(exp2, q1), f2(exp2, q2);
        if (f1.is_zero() || f2.is_zero()) continue;
        SolveConfig cfg;
        cfg.budget = 20000;
        Solve2dResult r =
            solve_system_2d(f1, f2, {Interval(-2.0, 2.0), Interval(-2.0, 2.0)}, cfg);
        if (!r.complete) continue;
        ++solved;
        CHECK(Rational(static_cast<long>(r.solutions.size())) <= r.bound);
    }
    CHECK(solved >= 15);
}

TEST_CASE("eps-cascade witness run") {
    ChainPtr empty2 = make_chain(ChainKind::empty, {}, 2);
    MultiPoly circle(2), line(2);
    circle.add_term({2, 0}, Rational(1));
    circle.add_term({0, 2}, Rational(1));
    circle.add_term({0, 0}, Rational(-1));
    line.add_term({0, 1}, Rational(1));
    line.add_term({1, 0}, Rational(-1));
    SolveConfig cfg;
    Solve2dResult r = solve_system_2d(PfaffianFunction(empty2, circle),
                                      PfaffianFunction(empty2, line),
                                      {Interval(-1.0, 1.0), Interval(-1.0, 1.0)}, cfg, true);
    REQUIRE(r.perturbed_count.has_value());
    REQUIRE(r.eps_used.size() == 2);
    CHECK(r.eps_used[0] == Rational(1, 1000));
    CHECK(r.eps_used[1] == Rational(1, 1000000));
    // each transversal root splits into up to four perturbed solutions
    CHECK(*r.perturbed_count >= 2);
    BoundQuery q;
    q.n = 2;
    q.r = 0;
    q.betas = {2, 1};
    CHECK(Rational(*r.perturbed_count) <= *khovanskii_degenerate_max(q).exact);
}

TEST_CASE("strictly decreasing cascade is enforced") {
    SolveConfig cfg;
    cfg.eps_cascade = std::vector<Rational>{Rational(1, 10), Rational(1, 10)};
    CHECK_THROWS_AS(cfg.cascade(2), std::invalid_argument);
}

TEST_CASE("chain mismatch is rejected") {
    ChainPtr a = make_chain(ChainKind::empty, {}, 2);
    ChainPtr b = make_chain(ChainKind::exp, {Rational(1)}, 2);
    CHECK_THROWS_AS(solve_system_2d(PfaffianFunction(a, MultiPoly::variable(2, 0)),
                                    PfaffianFunction(b, MultiPoly::variable(3, 1)),
                                    {Interval(-1.0, 1.0), Interval(-1.0, 1.0)}),
                    std::invalid_argument);
}
