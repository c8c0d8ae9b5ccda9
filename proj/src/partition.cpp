#include "pfn/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfn/rng.hpp"

namespace pfn {

namespace {

constexpr int kLiftPrec = 128;
constexpr long kLiftGridBits = 80;

std::vector<SignKey> prefixes_at_level(int level) {
    // all sign vectors of length level-1, '+' before '-'
    std::vector<SignKey> out{""};
    for (int l = 1; l < level; ++l) {
        std::vector<SignKey> next;
        next.reserve(out.size() * 2);
        for (const SignKey& k : out) {
            next.push_back(k + "+");
            next.push_back(k + "-");
        }
        out = std::move(next);
    }
    return out;
}

Rational round_to_grid(const Rational& v, long bits) {
    Rational scaled = v * rational_pow2(bits);
    Integer num = scaled.get_num(), den = scaled.get_den();
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Rational(q) * rational_pow2(-bits);
}

} // namespace

SignKey Partition::locate(const Point& x) const {
    SignKey key;
    for (const MultiPoly& f : factors) {
        int s = sgn(f.eval(std::span<const Rational>(x)));
        if (s == 0) return "boundary";
        key.push_back(s > 0 ? '+' : '-');
    }
    return key;
}

Partition build_partition(const std::vector<std::vector<Point>>& collections, int n, int D,
                          double tol, long budget, std::uint64_t seed) {
    const int m = static_cast<int>(collections.size());
    if (m < 1) throw std::invalid_argument("at least one collection required");
    for (const auto& col : collections) {
        for (const Point& p : col) {
            if (static_cast<int>(p.size()) != n) {
                throw std::invalid_argument("point dimension mismatch");
            }
        }
    }

    Partition out;
    out.schedule = degree_schedule(D, m, n);
    out.boundary.assign(m, {});
    out.collection_sizes.assign(m, 0);
    for (int i = 0; i < m; ++i) out.collection_sizes[i] = static_cast<long>(collections[i].size());

    // degenerate input: every point identical
    {
        const Point* first = nullptr;
        bool all_equal = true;
        long total = 0;
        for (const auto& col : collections) {
            for (const Point& p : col) {
                ++total;
                if (!first) first = &p;
                else if (!(p == *first)) all_equal = false;
            }
        }
        out.degenerate_input = (total >= 2 && all_equal);
    }

    struct Slot {
        int col;
        std::size_t idx;
        SignKey key;
        bool alive = true;
    };
    std::vector<Slot> slots;
    for (int i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < collections[i].size(); ++j) slots.push_back({i, j, "", true});
    }

    Rng rng(seed);
    const int s = out.schedule.s;
    for (int level = 1; level <= s; ++level) {
        auto prefixes = prefixes_at_level(level);
        // groups in deterministic order: (prefix, collection)
        std::vector<std::vector<Point>> groups;
        groups.reserve(prefixes.size() * m);
        for (const SignKey& pre : prefixes) {
            for (int i = 0; i < m; ++i) {
                std::vector<Point> g;
                for (const Slot& sl : slots) {
                    if (sl.alive && sl.col == i && sl.key == pre) {
                        g.push_back(collections[i][sl.idx]);
                    }
                }
                groups.push_back(std::move(g));
            }
        }
        int basis_dim = m * (1 << (level - 1)) + 1;
        HamSandwichResult cut =
            approx_ham_sandwich(groups, n, out.schedule.d[level - 1], tol, budget,
                                rng.split(static_cast<std::uint64_t>(level)).next_u64(), basis_dim);
        out.met_tolerance = out.met_tolerance && cut.met_tolerance;
        out.achieved_imbalance.push_back(cut.worst);
        out.factors.push_back(cut.cut);
        for (Slot& sl : slots) {
            if (!sl.alive) continue;
            int sg = sgn(cut.cut.eval(std::span<const Rational>(collections[sl.col][sl.idx])));
            if (sg == 0) {
                sl.alive = false;
                out.boundary[sl.col].push_back(sl.idx);
            } else {
                sl.key.push_back(sg > 0 ? '+' : '-');
            }
        }
    }

    // final cells over full-length keys (only nonempty cells are stored)
    for (const Slot& sl : slots) {
        if (!sl.alive) continue;
        auto& cell = out.cells[sl.key];
        if (cell.empty()) cell.assign(m, {});
        cell[sl.col].push_back(sl.idx);
    }

    out.product_degree = 0;
    for (const MultiPoly& f : out.factors) out.product_degree += f.degree_or(0);
    if (out.product_degree > D) throw std::logic_error("degree budget exceeded");

    out.max_load.assign(m, 0);
    for (const auto& [key, per_col] : out.cells) {
        for (int i = 0; i < m; ++i) {
            out.max_load[i] = std::max(out.max_load[i], static_cast<long>(per_col[i].size()));
        }
    }
    double pow2s = std::pow(2.0, s);
    for (int i = 0; i < m; ++i) {
        double gi = static_cast<double>(out.collection_sizes[i]);
        out.target_load.push_back(std::pow(1.0 + tol, s) * m * gi / pow2s + s);
        out.guarantee_load.push_back(m * gi / pow2s);
    }
    return out;
}

SignKey PfaffianPartition::locate(const Point& x) const {
    std::vector<Interval> xi;
    xi.reserve(x.size());
    for (const Rational& c : x) xi.push_back(Interval::from_rational(c));
    SignKey key;
    for (const PfaffianFunction& f : pullback) {
        int s = f.eval(std::span<const Interval>(xi)).sign();
        if (s == 0) return "boundary";
        key.push_back(s > 0 ? '+' : '-');
    }
    return key;
}

PfaffianPartition pfaffian_partition(const std::vector<std::vector<Point>>& collections,
                                     const ChainPtr& chain, int D, double tol, long budget,
                                     std::uint64_t seed) {
    if (!chain) throw std::invalid_argument("null chain");
    if (!chain->independent()) {
        throw std::invalid_argument(
            "pfaffian partitioning refused: chain not flagged algebraically independent "
            "(pullback could vanish identically); note: " + chain->independence_note());
    }
    const int n = chain->n();
    const int r = chain->r();
    const int m = static_cast<int>(collections.size());

    PfaffianPartition out;
    out.chain = chain;
    out.ambiguous.assign(m, {});

    if (r == 0) {
        out.lifted = build_partition(collections, n, D, tol, budget, seed);
        out.lifted_points = collections;
        out.lift_error = 0;
        for (const MultiPoly& f : out.lifted.factors) {
            out.pullback.emplace_back(chain, f);
        }
        return out;
    }

    // lift x -> (x, q_1(x)..q_r(x)); chain values enclosed at kLiftPrec bits,
    // midpoints snapped to the dyadic grid so rational arithmetic downstream
    // stays small; the recorded error covers both rounding steps
    out.lifted_points.assign(m, {});
    Rational max_err(0);
    for (int i = 0; i < m; ++i) {
        for (const Point& p : collections[i]) {
            if (static_cast<int>(p.size()) != n) {
                throw std::invalid_argument("point dimension mismatch");
            }
            std::vector<double> pd(p.size());
            for (std::size_t k = 0; k < p.size(); ++k) pd[k] = p[k].get_d();
            if (!chain->domain_contains(std::span<const double>(pd))) {
                throw std::domain_error("point outside chain domain");
            }
            auto enc = chain->values_hp(std::span<const Rational>(p), kLiftPrec);
            Point lifted = p;
            for (const auto& [lo, hi] : enc) {
                Rational rl = lo.to_rational(), rh = hi.to_rational();
                Rational mid = round_to_grid((rl + rh) / 2, kLiftGridBits);
                Rational err = (rh - rl) / 2 + rational_pow2(-kLiftGridBits);
                max_err = std::max(max_err, err);
                lifted.push_back(mid);
            }
            out.lifted_points[i].push_back(std::move(lifted));
        }
    }
    out.lift_error = max_err;

    out.lifted = build_partition(out.lifted_points, n + r, D, tol, budget, seed);
    for (const MultiPoly& f : out.lifted.factors) out.pullback.emplace_back(chain, f);

    // certify each cell assignment against the lift error: the factor sign
    // over the error box around the lifted point must match the exact sign
    // at the rounded point, else the point is quarantined
    const double err_d = Interval::from_rational(max_err).hi;
    std::map<SignKey, std::vector<std::vector<std::size_t>>> certified;
    for (const auto& [key, per_col] : out.lifted.cells) {
        for (int i = 0; i < m; ++i) {
            for (std::size_t idx : per_col[i]) {
                const Point& lp = out.lifted_points[i][idx];
                std::vector<Interval> box;
                box.reserve(n + r);
                for (int k = 0; k < n; ++k) box.push_back(Interval::from_rational(lp[k]));
                for (int k = n; k < n + r; ++k) {
                    Interval c = Interval::from_rational(lp[k]);
                    box.push_back(Interval(c.lo - err_d, c.hi + err_d));
                }
                bool ok = true;
                for (std::size_t l = 0; l < out.lifted.factors.size(); ++l) {
                    int si = out.lifted.factors[l].eval(std::span<const Interval>(box)).sign();
                    if (si == 0 || (si > 0) != (key[l] == '+')) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    auto& cell = certified[key];
                    if (cell.empty()) cell.assign(m, {});
                    cell[i].push_back(idx);
                } else {
                    out.ambiguous[i].push_back(idx);
                }
            }
        }
    }
    // lifted boundary points (exact zero at the rounded lift) are ambiguous too
    for (int i = 0; i < m; ++i) {
        for (std::size_t idx : out.lifted.boundary[i]) out.ambiguous[i].push_back(idx);
    }
    out.lifted.cells = std::move(certified);
    // refresh loads after quarantine
    for (int i = 0; i < m; ++i) out.lifted.max_load[i] = 0;
    for (const auto& [key, per_col] : out.lifted.cells) {
        for (int i = 0; i < m; ++i) {
            out.lifted.max_load[i] =
                std::max(out.lifted.max_load[i], static_cast<long>(per_col[i].size()));
        }
    }
    return out;
}

} // namespace pfn
