#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pfn/hamsandwich.hpp"
#include "pfn/rng.hpp"

using namespace pfn;

TEST_CASE("two distinct points split by a line") {
    std::vector<std::vector<Point>> sets{{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}};
    HamSandwichResult r = approx_ham_sandwich(sets, 2, 1, 0.0, 20000, 42);
    CHECK(r.met_tolerance);
    CHECK(r.worst <= 1);
    auto [pos, neg, zero] = sign_counts(r.cut, sets[0]);
    CHECK(std::labs(pos - neg) <= 1);
}

TEST_CASE("four corners of the unit square") {
    std::vector<std::vector<Point>> sets{{{Rational(0), Rational(0)},
                                          {Rational(1), Rational(0)},
                                          {Rational(0), Rational(1)},
                                          {Rational(1), Rational(1)}}};
    HamSandwichResult r = approx_ham_sandwich(sets, 2, 1, 0.0, 20000, 7);
    CHECK(r.met_tolerance);
    CHECK(r.imbalance[0] <= 1);
}

TEST_CASE("two random hundred-point sets, degree 2") {
    Rng rng(1234);
    std::vector<std::vector<Point>> sets(2);
    for (int s = 0; s < 2; ++s) {
        for (int i = 0; i < 100; ++i) {
            sets[s].push_back({frac(rng.uniform_int(-400, 400), 100 + s * 13),
                               frac(rng.uniform_int(-400, 400), 101)});
        }
    }
    HamSandwichResult r = approx_ham_sandwich(sets, 2, 2, 0.05, 60000, 99);
    CHECK(r.met_tolerance);
    CHECK(r.imbalance[0] <= 6); // 0.05 * 100 + 1
    CHECK(r.imbalance[1] <= 6);
}

TEST_CASE("cut degree and coefficient normalization") {
    Rng rng(55);
    std::vector<std::vector<Point>> sets(3);
    for (int s = 0; s < 3; ++s) {
        for (int i = 0; i < 40; ++i) {
            sets[s].push_back({frac(rng.uniform_int(-50, 50), 10),
                               frac(rng.uniform_int(-50, 50), 10)});
        }
    }
    HamSandwichResult r = approx_ham_sandwich(sets, 2, 2, 0.05, 60000, 3);
    CHECK(r.cut.degree_or(0) <= 2);
    double norm2 = 0.0;
    for (const auto& [e, c] : r.cut.terms()) norm2 += c.get_d() * c.get_d();
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("monomial space too small is refused") {
    std::vector<std::vector<Point>> sets(5);
    for (int s = 0; s < 5; ++s) sets[s].push_back({Rational(s), Rational(0)});
    // degree 1 in the plane spans 3 monomials < 6 requested
    CHECK_THROWS_AS(approx_ham_sandwich(sets, 2, 1, 0.0, 1000, 1), std::invalid_argument);
}

TEST_CASE("budget exhaustion returns the best found, flagged") {
    // an impossible request: all points identical, zero tolerance
    std::vector<std::vector<Point>> sets{{
        {Rational(1), Rational(1)},
        {Rational(1), Rational(1)},
        {Rational(1), Rational(1)},
        {Rational(1), Rational(1)},
    }};
    HamSandwichResult r = approx_ham_sandwich(sets, 2, 1, 0.0, 500, 11);
    CHECK(!r.imbalance.empty());
    // either every point fell on the cut or the imbalance was recorded
    CHECK((r.met_tolerance || r.imbalance[0] + r.on_zero[0] == 4));
}

TEST_CASE("empty sets are trivially balanced") {
    std::vector<std::vector<Point>> sets(2);
    sets[0].push_back({Rational(0), Rational(0)});
    sets[0].push_back({Rational(2), Rational(1)});
    // sets[1] empty
    HamSandwichResult r = approx_ham_sandwich(sets, 2, 1, 0.0, 20000, 13);
    CHECK(r.met_tolerance);
    CHECK(r.imbalance[1] == 0);
}
