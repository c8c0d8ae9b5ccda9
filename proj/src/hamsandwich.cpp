#include "pfn/hamsandwich.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pfn/rng.hpp"

namespace pfn {

namespace {

struct Lift {
    std::vector<std::vector<double>> rows; // one Veronese row per point
    std::vector<double> scale;             // row 2-norms
    std::vector<int> set_of;               // owning set
};

MultiPoly cut_from_coeffs(const std::vector<MultiPoly::Exponents>& basis,
                          const std::vector<double>& w, int nvars) {
    MultiPoly out(nvars);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        out.add_term(basis[b], rational_from_double(w[b]));
    }
    return out;
}

void normalize(std::vector<double>& w) {
    double n2 = 0.0;
    for (double v : w) n2 += v * v;
    n2 = std::sqrt(n2);
    if (n2 < 1e-300) {
        w.assign(w.size(), 0.0);
        w[0] = 1.0;
        return;
    }
    for (double& v : w) v /= n2;
}

} // namespace

std::array<long, 3> sign_counts(const MultiPoly& P, const std::vector<Point>& pts) {
    std::array<long, 3> out{0, 0, 0};
    for (const Point& p : pts) {
        int s = sgn(P.eval(std::span<const Rational>(p)));
        if (s > 0) ++out[0];
        else if (s < 0) ++out[1];
        else ++out[2];
    }
    return out;
}

HamSandwichResult approx_ham_sandwich(const std::vector<std::vector<Point>>& sets, int nvars,
                                      int degree, double tol, long budget, std::uint64_t seed,
                                      int basis_dim) {
    const int nsets = static_cast<int>(sets.size());
    if (basis_dim < 0) basis_dim = nsets + 1;
    if (basis_dim < 2) basis_dim = 2;
    auto basis = grlex_prefix(nvars, degree, static_cast<std::size_t>(basis_dim));
    const int dim = static_cast<int>(basis.size());

    // Veronese lift in doubles for the search
    Lift lift;
    std::vector<long> set_sizes(nsets, 0);
    for (int i = 0; i < nsets; ++i) {
        set_sizes[i] = static_cast<long>(sets[i].size());
        for (const Point& p : sets[i]) {
            if (static_cast<int>(p.size()) != nvars) {
                throw std::invalid_argument("point dimension mismatch");
            }
            std::vector<double> pd(p.size());
            for (std::size_t k = 0; k < p.size(); ++k) pd[k] = p[k].get_d();
            std::vector<double> row(dim);
            for (int b = 0; b < dim; ++b) {
                double v = 1.0;
                for (int k = 0; k < nvars; ++k) {
                    for (unsigned e = 0; e < basis[b][k]; ++e) v *= pd[k];
                }
                row[b] = v;
            }
            double n2 = 0.0;
            for (double v : row) n2 += v * v;
            lift.scale.push_back(std::max(std::sqrt(n2), 1e-12));
            lift.rows.push_back(std::move(row));
            lift.set_of.push_back(i);
        }
    }
    const long npts = static_cast<long>(lift.rows.size());

    std::vector<long> target(nsets);
    for (int i = 0; i < nsets; ++i) {
        target[i] = static_cast<long>(std::floor(tol * static_cast<double>(set_sizes[i]))) + 1;
    }

    HamSandwichResult best;
    best.worst = std::numeric_limits<long>::max();
    Rng rng(seed);

    auto discrete_imbalance = [&](const std::vector<double>& w, std::vector<long>& imb) {
        imb.assign(nsets, 0);
        std::vector<long> pos(nsets, 0), neg(nsets, 0);
        for (long p = 0; p < npts; ++p) {
            double v = 0.0;
            const auto& row = lift.rows[p];
            for (int b = 0; b < dim; ++b) v += w[b] * row[b];
            if (v > 1e-12 * lift.scale[p]) ++pos[lift.set_of[p]];
            else if (v < -1e-12 * lift.scale[p]) ++neg[lift.set_of[p]];
        }
        long worst = 0;
        for (int i = 0; i < nsets; ++i) {
            imb[i] = std::labs(pos[i] - neg[i]);
            worst = std::max(worst, imb[i] - target[i]);
        }
        return worst; // <= 0 means every set is within tolerance
    };

    auto exact_check = [&](const std::vector<double>& w, HamSandwichResult& res) {
        MultiPoly cut = cut_from_coeffs(basis, w, nvars);
        res.cut = cut;
        res.imbalance.assign(nsets, 0);
        res.on_zero.assign(nsets, 0);
        res.worst = 0;
        bool ok = true;
        for (int i = 0; i < nsets; ++i) {
            auto [pos, neg, zero] = sign_counts(cut, sets[i]);
            res.imbalance[i] = std::labs(pos - neg);
            res.on_zero[i] = zero;
            res.worst = std::max(res.worst, res.imbalance[i]);
            if (res.imbalance[i] > target[i]) ok = false;
        }
        res.met_tolerance = ok;
        return ok;
    };

    std::vector<double> w(dim), grad(dim), cand;
    std::vector<long> imb;
    long iters = 0;
    long best_discrete = std::numeric_limits<long>::max();
    const double stages[] = {0.5, 0.2, 0.08, 0.03, 0.012, 0.005, 0.002, 0.0008};

    while (iters < budget) {
        for (int b = 0; b < dim; ++b) w[b] = rng.next_gaussian();
        normalize(w);
        for (double h : stages) {
            for (int step = 0; step < 12 && iters < budget; ++step, ++iters) {
                // soft imbalances and their gradient
                std::vector<double> soft(nsets, 0.0);
                std::vector<std::vector<double>> rowsum(nsets, std::vector<double>(dim, 0.0));
                for (long p = 0; p < npts; ++p) {
                    const auto& row = lift.rows[p];
                    double v = 0.0;
                    for (int b = 0; b < dim; ++b) v += w[b] * row[b];
                    double a = v / (h * lift.scale[p]);
                    double th = std::tanh(a);
                    soft[lift.set_of[p]] += th;
                    double sech2 = (1.0 - th * th) / (h * lift.scale[p]);
                    auto& rs = rowsum[lift.set_of[p]];
                    for (int b = 0; b < dim; ++b) rs[b] += sech2 * row[b];
                }
                std::fill(grad.begin(), grad.end(), 0.0);
                for (int i = 0; i < nsets; ++i) {
                    for (int b = 0; b < dim; ++b) grad[b] += 2.0 * soft[i] * rowsum[i][b];
                }
                double gn = 0.0;
                for (double g : grad) gn += g * g;
                gn = std::sqrt(gn);
                if (gn < 1e-14) break;
                double eta = 0.15 / gn;
                for (int b = 0; b < dim; ++b) w[b] -= eta * grad[b];
                normalize(w);
            }
            long worst = discrete_imbalance(w, imb);
            if (worst < best_discrete) {
                best_discrete = worst;
                cand = w;
            }
            if (worst <= 0) {
                HamSandwichResult res;
                if (exact_check(w, res)) {
                    res.iterations = iters;
                    return res;
                }
            }
            if (iters >= budget) break;
        }
    }

    // budget exhausted: certify and return the best candidate found
    if (cand.empty()) cand = w;
    exact_check(cand, best);
    best.iterations = iters;
    return best;
}

} // namespace pfn
