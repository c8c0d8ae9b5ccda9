#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pfn/chain.hpp"

using namespace pfn;

TEST_CASE("builtin catalogue formats") {
    auto empty = chain_builtin(ChainKind::empty);
    CHECK(empty.r() == 0);
    CHECK(empty.alpha() >= 1);

    auto exp1 = chain_builtin(ChainKind::exp, {Rational(1)});
    CHECK(exp1.r() == 1);
    CHECK(exp1.alpha() == 1);
    MultiPoly expect(2);
    expect.add_term({0, 1}, Rational(1));
    CHECK(exp1.deriv(1, 1) == expect); // P_{1,1} = a Y_1

    auto tanc = chain_builtin(ChainKind::tan);
    CHECK(tanc.r() == 1);
    CHECK(tanc.alpha() == 2);
    MultiPoly texp(2);
    texp.add_term({0, 2}, Rational(1));
    texp.add_term({0, 0}, Rational(1));
    CHECK(tanc.deriv(1, 1) == texp); // 1 + Y_1^2

    auto iter = chain_builtin(ChainKind::iterated_exp, {Rational(1), Rational(3)});
    CHECK(iter.r() == 3);
    CHECK(iter.alpha() == 3); // P_{1,3} = Y_1 Y_2 Y_3

    auto rl = chain_builtin(ChainKind::recip_log);
    CHECK(rl.r() == 2);
    CHECK(rl.alpha() == 2);
    MultiPoly d2(3);
    d2.add_term({0, 1, 0}, Rational(1));
    CHECK(rl.deriv(1, 2) == d2); // d ln x = (1/x) dx

    auto rp = chain_builtin(ChainKind::recip_power, {Rational(5, 2)});
    CHECK(rp.r() == 2);
    MultiPoly drp(3);
    drp.add_term({0, 1, 1}, Rational(5, 2));
    CHECK(rp.deriv(1, 2) == drp); // d x^m = m (1/x) x^m dx

    auto few = chain_builtin(ChainKind::fewnomial_monomial, {Rational(2)}, {1, 3});
    CHECK(few.n() == 2);
    CHECK(few.r() == 3);
    CHECK(few.alpha() == 2);
    CHECK(few.xi() == 2);
}

TEST_CASE("triangularity: P_{i,j} reads only Y_1..Y_j") {
    for (const auto& cc : test::builtin_chain_cases()) {
        const PfaffianChain& c = *cc.chain;
        for (int j = 1; j <= c.r(); ++j) {
            for (int i = 1; i <= c.n(); ++i) {
                CHECK(c.deriv(i, j).nvars() == c.n() + j);
            }
        }
    }
}

TEST_CASE("independence flags follow the catalogue") {
    CHECK(chain_builtin(ChainKind::exp, {Rational(2)}).independent());
    CHECK(chain_builtin(ChainKind::tan).independent());
    CHECK(chain_builtin(ChainKind::recip_log).independent());
    CHECK(chain_builtin(ChainKind::iterated_exp, {Rational(1), Rational(2)}).independent());
    auto rp = chain_builtin(ChainKind::recip_power, {Rational(1, 2)});
    CHECK(!rp.independent());
    CHECK(!rp.independence_note().empty());
    CHECK(!chain_builtin(ChainKind::fewnomial_monomial, {Rational(1)}, {2, 1}).independent());
}

TEST_CASE("derivative data is consistent with finite differences") {
    Rng rng(7);
    for (const auto& cc : test::builtin_chain_cases()) {
        for (int k = 0; k < 12; ++k) {
            double x = rng.uniform(cc.lo, cc.hi);
            CAPTURE(cc.name);
            CHECK(cc.chain->consistent_at(std::span<const double>(&x, 1), 1e-6, 1e-5));
        }
    }
    // the multivariate fewnomial chain
    auto few = make_chain(ChainKind::fewnomial_monomial, {Rational(3, 2)}, -1, {2, 1, 1});
    for (int k = 0; k < 12; ++k) {
        std::vector<double> x{rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0)};
        CHECK(few->consistent_at(std::span<const double>(x), 1e-6, 1e-5));
    }
}

TEST_CASE("interval chain values enclose point values") {
    Rng rng(13);
    for (const auto& cc : test::builtin_chain_cases()) {
        for (int k = 0; k < 20; ++k) {
            double x = rng.uniform(cc.lo, cc.hi);
            std::vector<double> pt{x};
            auto vals = cc.chain->values(std::span<const double>(pt));
            Interval xi = Interval::point(x);
            auto enc = cc.chain->values(std::span<const Interval>(&xi, 1));
            for (std::size_t j = 0; j < vals.size(); ++j) {
                CHECK(enc[j].lo <= vals[j]);
                CHECK(vals[j] <= enc[j].hi);
            }
        }
    }
}

TEST_CASE("exact chain values where defined") {
    auto exp1 = make_chain(ChainKind::exp, {Rational(1)});
    std::vector<Rational> zero{Rational(0)};
    auto v = exp1->values_exact(std::span<const Rational>(zero));
    REQUIRE(v.size() == 1);
    CHECK(*v[0] == 1);

    auto rp = make_chain(ChainKind::recip_power, {Rational(1, 2)});
    std::vector<Rational> four{Rational(4)};
    auto w = rp->values_exact(std::span<const Rational>(four));
    CHECK(*w[0] == Rational(1, 4));
    CHECK(*w[1] == 2); // 4^(1/2)
    std::vector<Rational> three{Rational(3)};
    auto u = rp->values_exact(std::span<const Rational>(three));
    CHECK(!u[1].has_value()); // sqrt(3) is not rational
}

TEST_CASE("embedding keeps xi and extends the ambient space") {
    auto c = make_chain(ChainKind::exp, {Rational(1)}, 3);
    CHECK(c->n() == 3);
    CHECK(c->xi() == 1);
    CHECK(c->r() == 1);
    std::vector<double> x{0.5, 7.0, -3.0};
    auto vals = c->values(std::span<const double>(x));
    CHECK(vals[0] == doctest::Approx(std::exp(0.5)));
}

TEST_CASE("stacked chains read disjoint variables") {
    auto a = chain_builtin(ChainKind::exp, {Rational(1)});
    auto b = chain_builtin(ChainKind::exp, {Rational(2)});
    auto s = chain_stack(a, b);
    CHECK(s.n() == 2);
    CHECK(s.r() == 2);
    CHECK(s.independent());
    std::vector<double> x{1.0, 0.5};
    auto vals = s.values(std::span<const double>(x));
    CHECK(vals[0] == doctest::Approx(std::exp(1.0)));
    CHECK(vals[1] == doctest::Approx(std::exp(1.0))); // e^{2 * 0.5}
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(chain_builtin(ChainKind::exp, {Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(chain_builtin(ChainKind::exp, {}), std::invalid_argument);
    CHECK_THROWS_AS(chain_builtin(ChainKind::tan, {Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(chain_builtin(ChainKind::fewnomial_monomial, {Rational(1)}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(chain_kind_from_name("sin"), std::invalid_argument);
    // outside the tan branch
    auto tanc = make_chain(ChainKind::tan);
    std::vector<double> far{3.0};
    CHECK_THROWS_AS(tanc->values(std::span<const double>(far)), std::domain_error);
}
