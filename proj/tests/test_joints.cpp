#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "pfn/joints.hpp"

using namespace pfn;

namespace {

ParametricCurve line3(ChainPtr chain, std::array<Rational, 3> base, std::array<Rational, 3> dir,
                      Interval dom = Interval(-10.0, 10.0)) {
    std::vector<MultiPoly> coords;
    for (int i = 0; i < 3; ++i) {
        MultiPoly c(1);
        c.add_term({1}, dir[i]);
        c.add_term({0}, base[i]);
        coords.push_back(std::move(c));
    }
    return ParametricCurve(std::move(chain), std::move(coords), dom);
}

std::set<std::string> joint_keys(const JointsResult& r) {
    std::set<std::string> keys;
    for (const JointDetection& j : r.joints) {
        std::string k;
        for (const Rational& c : j.location) k += c.get_str() + ",";
        keys.insert(k);
    }
    return keys;
}

} // namespace

TEST_CASE("three coordinate axes form one joint at the origin") {
    ChainPtr chain = make_chain(ChainKind::empty);
    JointsInstance inst;
    inst.n = 3;
    inst.families = {
        {line3(chain, {Rational(0), Rational(0), Rational(0)}, {Rational(1), Rational(0), Rational(0)})},
        {line3(chain, {Rational(0), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)})},
        {line3(chain, {Rational(0), Rational(0), Rational(0)}, {Rational(0), Rational(0), Rational(1)})},
    };
    JointsResult r = find_joints(inst);
    REQUIRE(r.joints.size() == 1);
    CHECK(r.joints[0].location == Point{Rational(0), Rational(0), Rational(0)});
    CHECK(r.joints[0].tangent_det == doctest::Approx(1.0));
}

TEST_CASE("axis grid has exactly k^3 joints") {
    for (long k : {2L, 3L}) {
        JointsInstance inst = gen_joints_axis_grid(k);
        JointsResult r = find_joints(inst);
        CHECK(static_cast<long>(r.joints.size()) == k * k * k);
        CHECK(r.uncertain.empty());
        // detected set matches the planted ground truth
        std::set<std::string> expect;
        for (const Point& p : inst.ground_truth) {
            std::string key;
            for (const Rational& c : p) key += c.get_str() + ",";
            expect.insert(key);
        }
        CHECK(joint_keys(r) == expect);
    }
}

TEST_CASE("coplanar concurrent lines do not span") {
    ChainPtr chain = make_chain(ChainKind::empty);
    JointsInstance inst;
    inst.n = 3;
    // three lines in the z = 0 plane through the origin
    inst.families = {
        {line3(chain, {Rational(0), Rational(0), Rational(0)}, {Rational(1), Rational(0), Rational(0)})},
        {line3(chain, {Rational(0), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)})},
        {line3(chain, {Rational(0), Rational(0), Rational(0)}, {Rational(1), Rational(1), Rational(0)})},
    };
    JointsResult r = find_joints(inst);
    CHECK(r.joints.empty());
    CHECK(r.candidate_count == 1); // the common point was found, then rejected
}

TEST_CASE("joints are invariant under family permutation and rational rotation") {
    JointsInstance inst = gen_joints_axis_grid(2);
    JointsResult base = find_joints(inst);

    JointsInstance permuted = inst;
    std::swap(permuted.families[0], permuted.families[2]);
    JointsResult perm = find_joints(permuted);
    CHECK(joint_keys(perm) == joint_keys(base));

    // rigid motion with the 3-4-5 rotation in the xy-plane
    auto rotate = [](const ParametricCurve& c) {
        MultiPoly x = c.coords[0], y = c.coords[1], z = c.coords[2];
        std::vector<MultiPoly> rot{x.scaled(Rational(3, 5)) - y.scaled(Rational(4, 5)),
                                   x.scaled(Rational(4, 5)) + y.scaled(Rational(3, 5)), z};
        return ParametricCurve(c.chain1d, std::move(rot), c.domain);
    };
    JointsInstance rotated = inst;
    for (auto& fam : rotated.families) {
        for (auto& c : fam) c = rotate(c);
    }
    JointsResult rot = find_joints(rotated);
    CHECK(rot.joints.size() == base.joints.size());
    // rotated joints are the rotated ground truth, exactly
    std::set<std::string> expect;
    for (const Point& p : inst.ground_truth) {
        Point q{p[0] * Rational(3, 5) - p[1] * Rational(4, 5),
                p[0] * Rational(4, 5) + p[1] * Rational(3, 5), p[2]};
        std::string key;
        for (const Rational& c : q) key += c.get_str() + ",";
        expect.insert(key);
    }
    CHECK(joint_keys(rot) == expect);
}

TEST_CASE("pairwise Bezout: grid lines meet within the Khovanskii bound") {
    JointsInstance inst = gen_joints_axis_grid(2);
    BoundQuery q;
    q.n = 2;
    q.r = 0;
    q.betas = {1, 1};
    Rational cap = *khovanskii_bound(q).exact;
    for (const ParametricCurve& a : inst.families[0]) {
        for (const ParametricCurve& b : inst.families[1]) {
            auto pts = intersect_curves(a, b);
            CHECK(Rational(static_cast<long>(pts.size())) <= cap);
        }
    }
}

TEST_CASE("transcendental curve intersection through the stacked chain") {
    // (t, e^t) meets the horizontal line (u, 1) exactly at t = 0, u = 0
    ChainPtr expc = make_chain(ChainKind::exp, {Rational(1)});
    ParametricCurve a(expc, {MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)},
                      Interval(-2.0, 2.0));
    ChainPtr empty = make_chain(ChainKind::empty);
    MultiPoly u_coord = MultiPoly::variable(1, 0);
    ParametricCurve b(empty, {u_coord, MultiPoly::constant(1, Rational(1))}, Interval(-2.0, 2.0));
    auto pts = intersect_curves(a, b);
    REQUIRE(pts.size() == 1);
    CHECK(!pts[0].exact);
    CHECK(pts[0].box[0].contains(0.0));
    CHECK(pts[0].box[1].contains(0.0));
}
