#include "pfn/pfaffian.hpp"

#include <stdexcept>

namespace pfn {

PfaffianFunction::PfaffianFunction(ChainPtr chain, MultiPoly q)
    : chain_(std::move(chain)), Q_(std::move(q)) {
    if (!chain_) throw std::invalid_argument("null chain");
    if (Q_.nvars() != chain_->n() + chain_->r()) {
        throw std::invalid_argument("Q must live in n + r variables");
    }
}

Format PfaffianFunction::format() const {
    auto deg = Q_.degree();
    if (!deg) throw std::domain_error("zero function has no format (degree sentinel)");
    Format f;
    f.alpha = chain_->alpha();
    f.beta = std::max(1, *deg);
    f.r = chain_->r();
    f.n = chain_->n();
    f.xi = chain_->xi();
    return f;
}

double PfaffianFunction::eval(std::span<const double> x) const {
    std::vector<double> args(x.begin(), x.end());
    std::vector<double> q = chain_->values(x);
    args.insert(args.end(), q.begin(), q.end());
    return Q_.eval(std::span<const double>(args));
}

Interval PfaffianFunction::eval(std::span<const Interval> box) const {
    std::vector<Interval> args(box.begin(), box.end());
    std::vector<Interval> q = chain_->values(box);
    args.insert(args.end(), q.begin(), q.end());
    return Q_.eval(std::span<const Interval>(args));
}

std::optional<Rational> PfaffianFunction::eval_exact(std::span<const Rational> x) const {
    auto q = chain_->values_exact(x);
    int n = chain_->n();
    for (int j = 0; j < chain_->r(); ++j) {
        if (!q[j] && Q_.depends_on(n + j)) return std::nullopt;
    }
    std::vector<Rational> args(x.begin(), x.end());
    for (int j = 0; j < chain_->r(); ++j) args.push_back(q[j] ? *q[j] : Rational(0));
    return Q_.eval(std::span<const Rational>(args));
}

std::pair<BigFloat, BigFloat> PfaffianFunction::eval_hp(std::span<const Rational> x,
                                                        int prec) const {
    // interval evaluation with BigFloat endpoints; exact rational point input
    auto q = chain_->values_hp(x, prec);
    const int n = chain_->n();
    const int r = chain_->r();
    std::vector<std::pair<BigFloat, BigFloat>> args;
    args.reserve(n + r);
    for (int i = 0; i < n; ++i) {
        args.emplace_back(BigFloat::from(x[i], prec, MPFR_RNDD),
                          BigFloat::from(x[i], prec, MPFR_RNDU));
    }
    for (auto& e : q) args.push_back(std::move(e));
    BigFloat lo(prec), hi(prec);
    mpfr_set_zero(lo.raw(), 1);
    mpfr_set_zero(hi.raw(), 1);
    for (const auto& [e, c] : Q_.terms()) {
        BigFloat tlo = BigFloat::from(c, prec, MPFR_RNDD);
        BigFloat thi = BigFloat::from(c, prec, MPFR_RNDU);
        for (int i = 0; i < Q_.nvars(); ++i) {
            for (unsigned k = 0; k < e[i]; ++k) {
                // interval multiply on [tlo, thi] * [args.lo, args.hi]
                BigFloat c1 = bf_mul(tlo, args[i].first, MPFR_RNDD, prec);
                BigFloat c2 = bf_mul(tlo, args[i].second, MPFR_RNDD, prec);
                BigFloat c3 = bf_mul(thi, args[i].first, MPFR_RNDD, prec);
                BigFloat c4 = bf_mul(thi, args[i].second, MPFR_RNDD, prec);
                BigFloat d1 = bf_mul(tlo, args[i].first, MPFR_RNDU, prec);
                BigFloat d2 = bf_mul(tlo, args[i].second, MPFR_RNDU, prec);
                BigFloat d3 = bf_mul(thi, args[i].first, MPFR_RNDU, prec);
                BigFloat d4 = bf_mul(thi, args[i].second, MPFR_RNDU, prec);
                BigFloat nlo = c1;
                for (const BigFloat* p : {&c2, &c3, &c4}) {
                    if (p->cmp(nlo) < 0) nlo = *p;
                }
                BigFloat nhi = d1;
                for (const BigFloat* p : {&d2, &d3, &d4}) {
                    if (p->cmp(nhi) > 0) nhi = *p;
                }
                tlo = std::move(nlo);
                thi = std::move(nhi);
            }
        }
        lo = bf_add(lo, tlo, MPFR_RNDD, prec);
        hi = bf_add(hi, thi, MPFR_RNDU, prec);
    }
    return {std::move(lo), std::move(hi)};
}

bool PfaffianFunction::reads_variable(int v) const {
    if (Q_.depends_on(v)) return true;
    const int n = chain_->n();
    for (int j = 1; j <= chain_->r(); ++j) {
        if (!Q_.depends_on(n + j - 1)) continue;
        for (int uv : chain_->entry_vars(j)) {
            if (uv == v) return true;
        }
    }
    return false;
}

PfaffianFunction PfaffianFunction::derivative(int i) const {
    const int n = chain_->n();
    const int r = chain_->r();
    if (i < 1 || i > n) throw std::out_of_range("derivative variable index");
    MultiPoly out = Q_.derivative(i - 1);
    for (int j = 1; j <= r; ++j) {
        MultiPoly dq = Q_.derivative(n + j - 1);
        if (dq.is_zero()) continue;
        out = out + dq * chain_->deriv(i, j).padded(n + r);
    }
    return PfaffianFunction(chain_, std::move(out));
}

void require_shared_chain(const PfaffianFunction& f, const PfaffianFunction& g) {
    if (f.chain() == g.chain()) return;
    if (*f.chain() == *g.chain()) return;
    throw std::invalid_argument("operands are defined over different chains");
}

PfaffianFunction PfaffianFunction::operator+(const PfaffianFunction& o) const {
    require_shared_chain(*this, o);
    return PfaffianFunction(chain_, Q_ + o.Q_);
}

PfaffianFunction PfaffianFunction::operator-(const PfaffianFunction& o) const {
    require_shared_chain(*this, o);
    return PfaffianFunction(chain_, Q_ - o.Q_);
}

PfaffianFunction PfaffianFunction::operator*(const PfaffianFunction& o) const {
    require_shared_chain(*this, o);
    return PfaffianFunction(chain_, Q_ * o.Q_);
}

PfaffianFunction PfaffianFunction::scaled(const Rational& c) const {
    return PfaffianFunction(chain_, Q_.scaled(c));
}

ParametricCurve::ParametricCurve(ChainPtr chain, std::vector<MultiPoly> xs, Interval dom)
    : chain1d(std::move(chain)), coords(std::move(xs)), domain(dom) {
    if (!chain1d) throw std::invalid_argument("null chain");
    if (chain1d->n() != 1) throw std::invalid_argument("curve chain must be one-dimensional");
    for (const MultiPoly& c : coords) {
        if (c.nvars() != 1 + chain1d->r()) {
            throw std::invalid_argument("coordinate must live in 1 + r variables");
        }
    }
    if (!(domain.lo < domain.hi)) throw std::invalid_argument("empty curve domain");
}

std::vector<double> ParametricCurve::eval(double t) const {
    double tv[1] = {t};
    std::vector<double> q = chain1d->values(std::span<const double>(tv, 1));
    std::vector<double> args{t};
    args.insert(args.end(), q.begin(), q.end());
    std::vector<double> out;
    out.reserve(coords.size());
    for (const MultiPoly& c : coords) out.push_back(c.eval(std::span<const double>(args)));
    return out;
}

PfaffianFunction ParametricCurve::coordinate(int i) const {
    return PfaffianFunction(chain1d, coords.at(i));
}

std::vector<PfaffianFunction> ParametricCurve::tangent() const {
    std::vector<PfaffianFunction> out;
    out.reserve(coords.size());
    for (const MultiPoly& c : coords) {
        out.push_back(PfaffianFunction(chain1d, c).derivative(1));
    }
    return out;
}

PfaffianFunction compose_on_curve(const MultiPoly& P, const ParametricCurve& gamma) {
    if (P.nvars() != gamma.ambient_dim()) {
        throw std::invalid_argument("polynomial arity does not match curve dimension");
    }
    MultiPoly out = P.substituted(std::span<const MultiPoly>(gamma.coords));
    return PfaffianFunction(gamma.chain1d, std::move(out));
}

} // namespace pfn
