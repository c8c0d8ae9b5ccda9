#include "pfn/roots1d.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "pfn/rng.hpp"

namespace pfn {

namespace {

Interval to_interval(const Rational& lo, const Rational& hi) {
    return {Interval::from_rational(lo).lo, Interval::from_rational(hi).hi};
}

Interval point_eval(const PfaffianFunction& f, const Rational& t) {
    Interval ti = Interval::from_rational(t);
    return f.eval(std::span<const Interval>(&ti, 1));
}

Interval range_eval(const PfaffianFunction& f, const Rational& lo, const Rational& hi) {
    Interval ti = to_interval(lo, hi);
    return f.eval(std::span<const Interval>(&ti, 1));
}

// one-variable evaluator with coefficients pre-converted to intervals and
// power tables reused across the (many) nodes of one isolation run
class Compiled1d {
public:
    explicit Compiled1d(const PfaffianFunction& f) : chain_(f.chain()) {
        nv_ = f.Q().nvars();
        max_exp_.assign(nv_, 0);
        for (const auto& [e, c] : f.Q().terms()) {
            terms_.emplace_back(e, Interval::from_rational(c));
            for (int i = 0; i < nv_; ++i) max_exp_[i] = std::max(max_exp_[i], e[i]);
        }
        pows_.resize(nv_);
        for (int i = 0; i < nv_; ++i) pows_[i].resize(max_exp_[i] + 1, Interval::point(1.0));
        zero_ = terms_.empty();
    }

    bool zero() const { return zero_; }

    Interval eval(const Interval& t) const {
        if (zero_) return Interval::point(0.0);
        Interval args0 = t;
        std::vector<Interval> q = chain_->values(std::span<const Interval>(&args0, 1));
        for (int i = 0; i < nv_; ++i) {
            const Interval& base = i == 0 ? t : q[i - 1];
            for (unsigned k = 1; k <= max_exp_[i]; ++k) pows_[i][k] = ipow(base, k);
        }
        Interval acc = Interval::point(0.0);
        for (const auto& [e, c] : terms_) {
            Interval v = c;
            for (int i = 0; i < nv_; ++i) {
                if (e[i] != 0) v = v * pows_[i][e[i]];
            }
            acc = acc + v;
        }
        return acc;
    }

    Interval eval(const Rational& lo, const Rational& hi) const { return eval(to_interval(lo, hi)); }
    Interval eval(const Rational& t) const { return eval(Interval::from_rational(t)); }

private:
    ChainPtr chain_;
    int nv_ = 0;
    bool zero_ = true;
    std::vector<std::pair<MultiPoly::Exponents, Interval>> terms_;
    std::vector<unsigned> max_exp_;
    mutable std::vector<std::vector<Interval>> pows_;
};

struct Node {
    Rational lo, hi;
    int depth = 0;
};

// Split point with a certified nonzero value when one can be found nearby;
// planted rational roots tend to sit exactly on dyadic midpoints, so a few
// offsets around the midpoint are probed first.
Rational pick_split(const Compiled1d& f, const Rational& lo, const Rational& hi, Rng& rng) {
    Rational w = hi - lo;
    Rational mid = (lo + hi) / 2;
    const long offsets[] = {0, 1, -1, 3, -3, 5, -5, 7};
    for (long o : offsets) {
        Rational cand = mid + w * frac(o, 64);
        if (f.eval(cand).sign() != 0) return cand;
    }
    for (int tries = 0; tries < 4; ++tries) {
        long num = 24 + static_cast<long>(rng.below(17)); // in [24/64, 40/64]
        Rational cand = lo + w * frac(num, 64);
        if (f.eval(cand).sign() != 0) return cand;
    }
    return mid;
}

} // namespace

const char* certificate_name(Certificate c) {
    return c == Certificate::sign_change ? "sign_change" : "interval_newton_contraction";
}

std::vector<Rational> SolveConfig::cascade(int levels) const {
    if (eps_cascade) {
        if (static_cast<int>(eps_cascade->size()) < levels) {
            throw std::invalid_argument("eps cascade shorter than system");
        }
        for (int i = 1; i < levels; ++i) {
            if (!((*eps_cascade)[i] < (*eps_cascade)[i - 1]) || sgn((*eps_cascade)[i]) <= 0) {
                throw std::invalid_argument("eps cascade must be strictly decreasing positive");
            }
        }
        return *eps_cascade;
    }
    std::vector<Rational> out;
    Rational e = eps1;
    for (int i = 0; i < levels; ++i) {
        out.push_back(e);
        e /= 1000;
    }
    return out;
}

Rational khovanskii_for_format(const Format& f) {
    BoundQuery q;
    q.n = 1;
    q.r = f.r;
    q.alpha = f.alpha;
    q.xi = f.xi;
    q.betas = {f.beta};
    return *khovanskii_bound(q).exact;
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("empty interval");
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
    if (sgn(hi) < 0) return -simplest_rational_between(-hi, -lo);
    // 0 < lo <= hi: continued-fraction descent
    Integer fl = lo.get_num() / lo.get_den(); // floor for positive values
    Rational fa = lo - Rational(fl);
    if (sgn(fa) == 0) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational fb = hi - Rational(fl); // 0 < fa <= fb < 1
    Rational inner = simplest_rational_between(Rational(1) / fb, Rational(1) / fa);
    return Rational(fl) + Rational(1) / inner;
}

RootResult isolate_roots_1d(const PfaffianFunction& f, const Rational& lo, const Rational& hi,
                            const SolveConfig& cfg) {
    if (f.chain()->n() != 1) throw std::invalid_argument("function is not one-variable");
    if (f.is_zero()) throw std::invalid_argument("identically zero on its chain");
    if (!(lo < hi)) throw std::invalid_argument("empty domain");

    RootResult out;
    out.khovanskii = khovanskii_for_format(f.format());
    PfaffianFunction fd = f.derivative(1);
    PfaffianFunction fd2 = fd.is_zero() ? fd : fd.derivative(1);
    Compiled1d cf(f), cfd(fd), cfd2(fd2);
    Rng rng(cfg.seed);

    std::deque<Node> work;
    work.push_back({lo, hi, 0});
    while (!work.empty()) {
        if (++out.nodes > cfg.budget) {
            out.complete = false;
            for (const Node& n : work) out.suspect.emplace_back(n.lo, n.hi);
            break;
        }
        Node node = work.front();
        work.pop_front();

        Interval F = cf.eval(node.lo, node.hi);
        if (!F.contains_zero()) continue;

        Interval D = cfd.zero() ? Interval::point(0.0) : cfd.eval(node.lo, node.hi);
        // Taylor sharpening around the midpoint, far tighter than the
        // term-wise sum when the coefficients cancel heavily; the same
        // mean-value trick also sharpens the derivative enclosure used by
        // the monotonicity and Newton certificates
        if (!cfd.zero()) {
            Rational m = (node.lo + node.hi) / 2;
            Interval off = to_interval(node.lo, node.hi) - Interval::from_rational(m);
            Interval fm = cf.eval(m);
            bool live = false;
            F = intersect(F, fm + D * off, live);
            if (!live || !F.contains_zero()) continue;
            if (!cfd2.zero()) {
                Interval d2 = cfd2.eval(node.lo, node.hi);
                Interval fdm = cfd.eval(m);
                Interval t2 = fm + fdm * off + Interval(0.5, 0.5) * d2 * ipow(off, 2);
                F = intersect(F, t2, live);
                if (!live || !F.contains_zero()) continue;
                Interval d_mv = fdm + d2 * off;
                Interval d_cap = intersect(D, d_mv, live);
                if (live) D = d_cap;
            }
        }
        if (D.sign() != 0) {
            // strictly monotone here: endpoint signs settle everything
            int sa = cf.eval(node.lo).sign();
            int sb = cf.eval(node.hi).sign();
            if (sa != 0 && sb != 0) {
                if (sa == sb) continue;
                // refine the bracket a few times before emitting
                Rational a = node.lo, b = node.hi;
                for (int it = 0; it < 80 && (b - a) > cfg.min_width; ++it) {
                    Rational m = (a + b) / 2;
                    int sm = cf.eval(m).sign();
                    if (sm == 0) break;
                    if (sm == sa) a = m;
                    else b = m;
                }
                out.roots.push_back({a, b, Certificate::sign_change});
                continue;
            }
            // interval Newton step: N = m - f(m)/D
            Rational m = (node.lo + node.hi) / 2;
            Interval Nm = Interval::from_rational(m) - cf.eval(m) / D;
            Interval I = to_interval(node.lo, node.hi);
            bool ok = false;
            Interval cap = intersect(Nm, I, ok);
            if (!ok) continue;
            if (Nm.lo > I.lo && Nm.hi < I.hi) {
                out.roots.push_back({rational_from_double(cap.lo), rational_from_double(cap.hi),
                                     Certificate::interval_newton_contraction});
                continue;
            }
        }
        if (node.hi - node.lo < cfg.min_width || node.depth >= cfg.max_depth) {
            out.suspect.emplace_back(node.lo, node.hi);
            continue;
        }
        Rational s = pick_split(cf, node.lo, node.hi, rng);
        work.push_back({node.lo, s, node.depth + 1});
        work.push_back({s, node.hi, node.depth + 1});
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const IsolatingInterval& a, const IsolatingInterval& b) { return a.lo < b.lo; });
    std::sort(out.suspect.begin(), out.suspect.end());
    return out;
}

ComponentCount components_along_curve(const MultiPoly& P, const ParametricCurve& gamma,
                                      const SolveConfig& cfg) {
    PfaffianFunction f = compose_on_curve(P, gamma);
    if (f.is_zero()) throw std::domain_error("curve contained in Z(P)");
    Rational lo = rational_from_double(gamma.domain.lo);
    Rational hi = rational_from_double(gamma.domain.hi);
    if (point_eval(f, lo).sign() == 0 || point_eval(f, hi).sign() == 0) {
        throw std::domain_error("endpoint sign not certifiable; shrink the domain");
    }

    ComponentCount out;
    out.detail = isolate_roots_1d(f, lo, hi, cfg);
    long roots = static_cast<long>(out.detail.roots.size());

    // Suspects that resisted certification are either tangential roots (no
    // sign change) or artifacts. A tangential root often sits on the shared
    // boundary of two width-limit boxes, so touching suspects are merged
    // into clusters first; a sign-change root of the derivative inside the
    // cluster plus an exact zero of f at a rational candidate certifies it.
    std::vector<std::pair<Rational, Rational>> clusters;
    for (const auto& box : out.detail.suspect) {
        if (!clusters.empty() && box.first <= clusters.back().second + cfg.min_width) {
            clusters.back().second = std::max(clusters.back().second, box.second);
        } else {
            clusters.push_back(box);
        }
    }
    std::vector<std::pair<Rational, Rational>> still_suspect;
    std::optional<PfaffianFunction> fd;
    if (!clusters.empty()) fd = f.derivative(1);
    for (const auto& [clo0, chi0] : clusters) {
        // inflate a touch so boundary roots of f' become interior
        Rational clo = std::max(lo, Rational(clo0 - cfg.min_width));
        Rational chi = std::min(hi, Rational(chi0 + cfg.min_width));
        bool resolved = false;
        if (!fd->is_zero()) {
            SolveConfig inner = cfg;
            inner.budget = std::min<long>(cfg.budget, 4000);
            RootResult dr = isolate_roots_1d(*fd, clo, chi, inner);
            for (const IsolatingInterval& iv : dr.roots) {
                Rational cand = simplest_rational_between(iv.lo, iv.hi);
                auto exact = f.eval_exact(std::span<const Rational>(&cand, 1));
                if (exact && sgn(*exact) == 0) {
                    out.detail.roots.push_back({iv.lo, iv.hi, Certificate::sign_change});
                    ++roots;
                    resolved = true;
                    break; // one root per cluster
                }
            }
        }
        if (!resolved) {
            // no root certificate and no exclusion: report, stay incomplete
            Interval F = range_eval(f, clo, chi);
            if (F.contains_zero()) {
                still_suspect.emplace_back(clo, chi);
            }
        }
    }
    out.detail.suspect = std::move(still_suspect);
    std::sort(out.detail.roots.begin(), out.detail.roots.end(),
              [](const IsolatingInterval& a, const IsolatingInterval& b) { return a.lo < b.lo; });
    out.complete = out.detail.complete && out.detail.suspect.empty();
    out.components = roots + 1;
    return out;
}

RootResult critical_values_on_curve(const MultiPoly& P, const ParametricCurve& gamma,
                                    const SolveConfig& cfg) {
    PfaffianFunction f = compose_on_curve(P, gamma);
    PfaffianFunction fd = f.derivative(1);
    if (fd.is_zero()) throw std::domain_error("restriction has identically zero derivative");
    return isolate_roots_1d(fd, rational_from_double(gamma.domain.lo),
                            rational_from_double(gamma.domain.hi), cfg);
}

} // namespace pfn
