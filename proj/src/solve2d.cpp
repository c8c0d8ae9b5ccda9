#include "pfn/solve2d.hpp"

#include <deque>

#include "pfn/rng.hpp"

namespace pfn {

namespace {

struct Node {
    Box2 box;
    int depth = 0;
};

Interval eval2(const PfaffianFunction& f, const Box2& b) {
    return f.eval(std::span<const Interval>(b.data(), 2));
}

// 2x2 double inverse; false when the midpoint Jacobian is numerically singular
bool invert2(const double a[2][2], double inv[2][2]) {
    double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (!std::isfinite(det) || std::fabs(det) < 1e-300) return false;
    inv[0][0] = a[1][1] / det;
    inv[0][1] = -a[0][1] / det;
    inv[1][0] = -a[1][0] / det;
    inv[1][1] = a[0][0] / det;
    return true;
}

} // namespace

Solve2dResult solve_system_2d(const PfaffianFunction& f1, const PfaffianFunction& f2,
                              const Box2& box, const SolveConfig& cfg, bool with_eps_cascade) {
    require_shared_chain(f1, f2);
    if (f1.chain()->n() != 2) throw std::invalid_argument("system must be two-variable");
    if (f1.is_zero() || f2.is_zero()) throw std::invalid_argument("identically zero equation");

    Solve2dResult out;
    {
        Format a = f1.format(), b = f2.format();
        BoundQuery q;
        q.n = 2;
        q.r = a.r;
        q.alpha = a.alpha;
        q.xi = a.xi;
        q.betas = {a.beta, b.beta};
        out.bound = *khovanskii_degenerate_max(q).exact;
    }

    // symbolic Jacobian over the shared chain
    const PfaffianFunction J[2][2] = {
        {f1.derivative(1), f1.derivative(2)},
        {f2.derivative(1), f2.derivative(2)},
    };
    const PfaffianFunction* F[2] = {&f1, &f2};

    const double min_w = Rational(cfg.min_width).get_d();
    Rng rng(cfg.seed);
    std::deque<Node> work;
    work.push_back({box, 0});

    while (!work.empty()) {
        if (++out.nodes > cfg.budget) {
            out.complete = false;
            for (const Node& n : work) out.suspect.push_back(n.box);
            break;
        }
        Node node = work.front();
        work.pop_front();
        const Box2& B = node.box;

        Interval v1 = eval2(f1, B);
        if (!v1.contains_zero()) continue;
        Interval v2 = eval2(f2, B);
        if (!v2.contains_zero()) continue;

        // Krawczyk: K = m - Y F(m) + (I - Y J(B))(B - m)
        Interval jb[2][2];
        double jm[2][2];
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                jb[i][j] = eval2(J[i][j], B);
                jm[i][j] = jb[i][j].mid();
            }
        }
        double Y[2][2];
        if (invert2(jm, Y)) {
            Box2 m = {Interval::point(B[0].mid()), Interval::point(B[1].mid())};
            Interval fm[2] = {eval2(f1, m), eval2(f2, m)};
            Interval K[2];
            for (int i = 0; i < 2; ++i) {
                Interval acc = m[i] - (Y[i][0] * fm[0] + Y[i][1] * fm[1]);
                for (int j = 0; j < 2; ++j) {
                    Interval coef = Interval::point(i == j ? 1.0 : 0.0) -
                                    (Y[i][0] * jb[0][j] + Y[i][1] * jb[1][j]);
                    acc = acc + coef * (B[j] - m[j]);
                }
                K[i] = acc;
            }
            if (K[0].disjoint(B[0]) || K[1].disjoint(B[1])) continue;
            if (B[0].strictly_contains(K[0]) && B[1].strictly_contains(K[1])) {
                bool ok0 = false, ok1 = false;
                Box2 root = {intersect(K[0], B[0], ok0), intersect(K[1], B[1], ok1)};
                // tighten by a few extra Krawczyk passes
                for (int it = 0; it < 8; ++it) {
                    Box2 m2 = {Interval::point(root[0].mid()), Interval::point(root[1].mid())};
                    Interval f2m[2] = {eval2(f1, m2), eval2(f2, m2)};
                    Interval jr[2][2];
                    double jm2[2][2];
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            jr[i][j] = eval2(J[i][j], root);
                            jm2[i][j] = jr[i][j].mid();
                        }
                    double Y2[2][2];
                    if (!invert2(jm2, Y2)) break;
                    Box2 next = root;
                    bool shrunk = false;
                    for (int i = 0; i < 2; ++i) {
                        Interval acc = m2[i] - (Y2[i][0] * f2m[0] + Y2[i][1] * f2m[1]);
                        for (int j = 0; j < 2; ++j) {
                            Interval coef = Interval::point(i == j ? 1.0 : 0.0) -
                                            (Y2[i][0] * jr[0][j] + Y2[i][1] * jr[1][j]);
                            acc = acc + coef * (root[j] - m2[j]);
                        }
                        bool ok = false;
                        Interval cap = intersect(acc, root[i], ok);
                        if (!ok) { shrunk = false; break; }
                        if (cap.width() < next[i].width()) shrunk = true;
                        next[i] = cap;
                    }
                    if (!shrunk) break;
                    root = next;
                }
                out.solutions.push_back({root, Certificate::interval_newton_contraction});
                continue;
            }
            // contract when the operator made progress
            bool ok0 = false, ok1 = false;
            Box2 cap = {intersect(K[0], B[0], ok0), intersect(K[1], B[1], ok1)};
            if (ok0 && ok1 &&
                cap[0].width() + cap[1].width() < 0.8 * (B[0].width() + B[1].width())) {
                work.push_back({cap, node.depth + 1});
                continue;
            }
        }

        if ((B[0].width() < min_w && B[1].width() < min_w) || node.depth >= cfg.max_depth) {
            out.suspect.push_back(B);
            continue;
        }
        // split the wider side at a pseudo-random offset; exact midpoints
        // tend to land on planted roots
        int d = B[0].width() >= B[1].width() ? 0 : 1;
        double frac = 0.45 + 0.1 * rng.next_double();
        double cut = B[d].lo + frac * B[d].width();
        Node a = node, b = node;
        a.depth = b.depth = node.depth + 1;
        a.box[d] = Interval(B[d].lo, cut);
        b.box[d] = Interval(cut, B[d].hi);
        work.push_back(a);
        work.push_back(b);
    }

    out.degenerate = out.suspect.size() > 32;

    if (with_eps_cascade) {
        std::vector<Rational> eps = cfg.cascade(2);
        out.eps_used = eps;
        const int nv = f1.Q().nvars();
        PfaffianFunction g1 = f1 * f1 - PfaffianFunction(f1.chain(), MultiPoly::constant(nv, eps[0]));
        PfaffianFunction g2 = f2 * f2 - PfaffianFunction(f2.chain(), MultiPoly::constant(nv, eps[1]));
        SolveConfig sub = cfg;
        sub.budget = cfg.budget;
        Solve2dResult pert = solve_system_2d(g1, g2, box, sub, false);
        out.perturbed_count = static_cast<long>(pert.solutions.size());
    }
    return out;
}

} // namespace pfn
