#include "pfn/chain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pfn {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
// nearest double below pi/2; safely inside the principal tan branch
const double kHalfPi = 1.5707963267948966;

Interval whole_line() { return Interval::whole(); }

// x^e for exact rational x > 0 and rational e, one directed endpoint
BigFloat bf_pow_q(const Rational& x, const Rational& e, mpfr_rnd_t rnd, int prec) {
    if (sgn(x) <= 0) throw std::domain_error("rational power of nonpositive base");
    bool base_ge_1 = x >= 1;
    mpfr_rnd_t base_rnd, exp_rnd;
    if (rnd == MPFR_RNDD) {
        base_rnd = (sgn(e) >= 0) ? MPFR_RNDD : MPFR_RNDU;
        exp_rnd = base_ge_1 ? MPFR_RNDD : MPFR_RNDU;
    } else {
        base_rnd = (sgn(e) >= 0) ? MPFR_RNDU : MPFR_RNDD;
        exp_rnd = base_ge_1 ? MPFR_RNDU : MPFR_RNDD;
    }
    BigFloat base = BigFloat::from(x, prec + 16, base_rnd);
    BigFloat ee = BigFloat::from(e, prec + 16, exp_rnd);
    return bf_pow(base, ee, rnd, prec);
}

// exact rational q-th root when it exists
std::optional<Rational> exact_rational_pow(const Rational& x, const Rational& m) {
    if (sgn(x) <= 0) return std::nullopt;
    long p = 0, q = 1;
    if (!m.get_num().fits_slong_p() || !m.get_den().fits_slong_p()) return std::nullopt;
    p = m.get_num().get_si();
    q = m.get_den().get_si();
    Integer num = x.get_num(), den = x.get_den();
    if (p < 0) { std::swap(num, den); p = -p; }
    Integer num_p = int_pow(num, static_cast<unsigned long>(p));
    Integer den_p = int_pow(den, static_cast<unsigned long>(p));
    Integer rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), num_p.get_mpz_t(), static_cast<unsigned long>(q));
    int exact_d = mpz_root(rd.get_mpz_t(), den_p.get_mpz_t(), static_cast<unsigned long>(q));
    if (!exact_n || !exact_d) return std::nullopt;
    Rational out(rn, rd);
    out.canonicalize();
    return out;
}

} // namespace

const char* chain_kind_name(ChainKind k) {
    switch (k) {
        case ChainKind::empty: return "empty";
        case ChainKind::exp: return "exp";
        case ChainKind::iterated_exp: return "iterated_exp";
        case ChainKind::tan: return "tan";
        case ChainKind::recip_log: return "recip_log";
        case ChainKind::recip_power: return "recip_power";
        case ChainKind::fewnomial_monomial: return "fewnomial_monomial";
    }
    return "?";
}

ChainKind chain_kind_from_name(const std::string& name) {
    if (name == "empty") return ChainKind::empty;
    if (name == "exp") return ChainKind::exp;
    if (name == "iterated_exp") return ChainKind::iterated_exp;
    if (name == "tan") return ChainKind::tan;
    if (name == "recip_log") return ChainKind::recip_log;
    if (name == "recip_power") return ChainKind::recip_power;
    if (name == "fewnomial_monomial") return ChainKind::fewnomial_monomial;
    throw std::invalid_argument("unknown chain name: " + name);
}

const MultiPoly& PfaffianChain::deriv(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > r_) throw std::out_of_range("deriv index");
    return derivs_[j - 1][i - 1];
}

const std::vector<int>& PfaffianChain::entry_vars(int j) const {
    if (j < 1 || j > r_) throw std::out_of_range("entry index");
    int offset = 0;
    for (const Unit& u : units_) {
        if (j <= offset + u.entries) return u.vars;
        offset += u.entries;
    }
    throw std::logic_error("entry not owned by any unit");
}

bool PfaffianChain::domain_contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) return false;
    for (int v = 0; v < n_; ++v) {
        if (!domain_[v].contains(x[v])) return false;
    }
    return true;
}

bool PfaffianChain::domain_contains(std::span<const Interval> box) const {
    if (static_cast<int>(box.size()) != n_) return false;
    for (int v = 0; v < n_; ++v) {
        if (!domain_[v].contains(box[v])) return false;
    }
    return true;
}

std::vector<double> PfaffianChain::values(std::span<const double> x) const {
    if (!domain_contains(x)) throw std::domain_error("point outside chain domain");
    std::vector<double> out;
    out.reserve(r_);
    for (const Unit& u : units_) {
        switch (u.kind) {
            case ChainKind::empty:
                break;
            case ChainKind::exp:
                out.push_back(std::exp(u.params[0].get_d() * x[u.vars[0]]));
                break;
            case ChainKind::iterated_exp: {
                double v = std::exp(u.params[0].get_d() * x[u.vars[0]]);
                out.push_back(v);
                for (int l = 1; l < u.entries; ++l) {
                    v = std::exp(v);
                    out.push_back(v);
                }
                break;
            }
            case ChainKind::tan:
                out.push_back(std::tan(x[u.vars[0]]));
                break;
            case ChainKind::recip_log:
                out.push_back(1.0 / x[u.vars[0]]);
                out.push_back(std::log(x[u.vars[0]]));
                break;
            case ChainKind::recip_power:
                out.push_back(1.0 / x[u.vars[0]]);
                out.push_back(std::pow(x[u.vars[0]], u.params[0].get_d()));
                break;
            case ChainKind::fewnomial_monomial: {
                for (int vi : u.vars) out.push_back(1.0 / x[vi]);
                double m = u.params[0].get_d();
                for (std::size_t i = 0; i < u.vars.size(); ++i) {
                    m *= std::pow(x[u.vars[i]], static_cast<double>(u.mono_exponents[i]));
                }
                out.push_back(m);
                break;
            }
        }
    }
    return out;
}

std::vector<Interval> PfaffianChain::values(std::span<const Interval> box) const {
    if (!domain_contains(box)) throw std::domain_error("box outside chain domain");
    std::vector<Interval> out;
    out.reserve(r_);
    for (const Unit& u : units_) {
        switch (u.kind) {
            case ChainKind::empty:
                break;
            case ChainKind::exp:
                out.push_back(iexp(Interval::from_rational(u.params[0]) * box[u.vars[0]]));
                break;
            case ChainKind::iterated_exp: {
                Interval v = iexp(Interval::from_rational(u.params[0]) * box[u.vars[0]]);
                out.push_back(v);
                for (int l = 1; l < u.entries; ++l) {
                    v = iexp(v);
                    out.push_back(v);
                }
                break;
            }
            case ChainKind::tan:
                out.push_back(itan(box[u.vars[0]]));
                break;
            case ChainKind::recip_log:
                out.push_back(irecip(box[u.vars[0]]));
                out.push_back(ilog(box[u.vars[0]]));
                break;
            case ChainKind::recip_power:
                out.push_back(irecip(box[u.vars[0]]));
                out.push_back(ipow_real(box[u.vars[0]], u.params[0]));
                break;
            case ChainKind::fewnomial_monomial: {
                for (int vi : u.vars) out.push_back(irecip(box[vi]));
                Interval m = Interval::from_rational(u.params[0]);
                for (std::size_t i = 0; i < u.vars.size(); ++i) {
                    m = m * ipow(box[u.vars[i]], u.mono_exponents[i]);
                }
                out.push_back(m);
                break;
            }
        }
    }
    return out;
}

std::vector<std::pair<BigFloat, BigFloat>> PfaffianChain::values_hp(std::span<const Rational> x,
                                                                    int prec) const {
    std::vector<std::pair<BigFloat, BigFloat>> out;
    out.reserve(r_);
    auto push_exact = [&](const Rational& q) {
        out.emplace_back(BigFloat::from(q, prec, MPFR_RNDD), BigFloat::from(q, prec, MPFR_RNDU));
    };
    for (const Unit& u : units_) {
        switch (u.kind) {
            case ChainKind::empty:
                break;
            case ChainKind::exp: {
                Rational t = u.params[0] * x[u.vars[0]];
                BigFloat lo = bf_exp(BigFloat::from(t, prec + 16, MPFR_RNDD), MPFR_RNDD, prec);
                BigFloat hi = bf_exp(BigFloat::from(t, prec + 16, MPFR_RNDU), MPFR_RNDU, prec);
                out.emplace_back(std::move(lo), std::move(hi));
                break;
            }
            case ChainKind::iterated_exp: {
                Rational t = u.params[0] * x[u.vars[0]];
                BigFloat lo = bf_exp(BigFloat::from(t, prec + 16, MPFR_RNDD), MPFR_RNDD, prec);
                BigFloat hi = bf_exp(BigFloat::from(t, prec + 16, MPFR_RNDU), MPFR_RNDU, prec);
                out.emplace_back(lo, hi);
                for (int l = 1; l < u.entries; ++l) {
                    lo = bf_exp(lo, MPFR_RNDD, prec);
                    hi = bf_exp(hi, MPFR_RNDU, prec);
                    out.emplace_back(lo, hi);
                }
                break;
            }
            case ChainKind::tan: {
                BigFloat lo = bf_tan(BigFloat::from(x[u.vars[0]], prec + 16, MPFR_RNDD), MPFR_RNDD, prec);
                BigFloat hi = bf_tan(BigFloat::from(x[u.vars[0]], prec + 16, MPFR_RNDU), MPFR_RNDU, prec);
                out.emplace_back(std::move(lo), std::move(hi));
                break;
            }
            case ChainKind::recip_log: {
                push_exact(Rational(1) / x[u.vars[0]]);
                BigFloat lo = bf_log(BigFloat::from(x[u.vars[0]], prec + 16, MPFR_RNDD), MPFR_RNDD, prec);
                BigFloat hi = bf_log(BigFloat::from(x[u.vars[0]], prec + 16, MPFR_RNDU), MPFR_RNDU, prec);
                out.emplace_back(std::move(lo), std::move(hi));
                break;
            }
            case ChainKind::recip_power: {
                push_exact(Rational(1) / x[u.vars[0]]);
                out.emplace_back(bf_pow_q(x[u.vars[0]], u.params[0], MPFR_RNDD, prec),
                                 bf_pow_q(x[u.vars[0]], u.params[0], MPFR_RNDU, prec));
                break;
            }
            case ChainKind::fewnomial_monomial: {
                for (int vi : u.vars) push_exact(Rational(1) / x[vi]);
                Rational m = u.params[0];
                for (std::size_t i = 0; i < u.vars.size(); ++i) {
                    m *= rat_pow(x[u.vars[i]], static_cast<long>(u.mono_exponents[i]));
                }
                push_exact(m);
                break;
            }
        }
    }
    return out;
}

std::vector<std::optional<Rational>> PfaffianChain::values_exact(std::span<const Rational> x) const {
    std::vector<std::optional<Rational>> out;
    out.reserve(r_);
    for (const Unit& u : units_) {
        switch (u.kind) {
            case ChainKind::empty:
                break;
            case ChainKind::exp:
                if (sgn(u.params[0] * x[u.vars[0]]) == 0) out.emplace_back(Rational(1));
                else out.emplace_back(std::nullopt);
                break;
            case ChainKind::iterated_exp: {
                if (sgn(u.params[0] * x[u.vars[0]]) == 0) out.emplace_back(Rational(1));
                else out.emplace_back(std::nullopt);
                for (int l = 1; l < u.entries; ++l) out.emplace_back(std::nullopt);
                break;
            }
            case ChainKind::tan:
                if (sgn(x[u.vars[0]]) == 0) out.emplace_back(Rational(0));
                else out.emplace_back(std::nullopt);
                break;
            case ChainKind::recip_log:
                out.emplace_back(Rational(1) / x[u.vars[0]]);
                if (x[u.vars[0]] == 1) out.emplace_back(Rational(0));
                else out.emplace_back(std::nullopt);
                break;
            case ChainKind::recip_power: {
                out.emplace_back(Rational(1) / x[u.vars[0]]);
                auto p = exact_rational_pow(x[u.vars[0]], u.params[0]);
                if (p) out.emplace_back(*p);
                else out.emplace_back(std::nullopt);
                break;
            }
            case ChainKind::fewnomial_monomial: {
                for (int vi : u.vars) out.emplace_back(Rational(1) / x[vi]);
                Rational m = u.params[0];
                for (std::size_t i = 0; i < u.vars.size(); ++i) {
                    m *= rat_pow(x[u.vars[i]], static_cast<long>(u.mono_exponents[i]));
                }
                out.emplace_back(m);
                break;
            }
        }
    }
    return out;
}

void PfaffianChain::rebuild_derivs() {
    derivs_.assign(r_, {});
    int offset = 0; // global entries before the current unit
    int alpha = 1;
    std::set<int> vars_read;
    for (const Unit& u : units_) {
        for (int vi : u.vars) vars_read.insert(vi);
        for (int l = 1; l <= u.entries; ++l) {
            int j = offset + l; // global entry index, 1-based
            int nv = n_ + j;    // polynomial lives in X_1..X_n, Y_1..Y_j
            std::vector<MultiPoly> row(n_, MultiPoly::zero(nv));
            auto Y = [&](int g) { return n_ + g - 1; }; // global Y_g, 0-based slot
            switch (u.kind) {
                case ChainKind::empty:
                    break;
                case ChainKind::exp: {
                    MultiPoly::Exponents e(nv, 0);
                    e[Y(j)] = 1;
                    row[u.vars[0]] = MultiPoly::monomial(nv, e, u.params[0]);
                    break;
                }
                case ChainKind::iterated_exp: {
                    MultiPoly::Exponents e(nv, 0);
                    for (int g = offset + 1; g <= j; ++g) e[Y(g)] = 1;
                    row[u.vars[0]] = MultiPoly::monomial(nv, e, u.params[0]);
                    break;
                }
                case ChainKind::tan: {
                    MultiPoly::Exponents e(nv, 0);
                    e[Y(j)] = 2;
                    MultiPoly p = MultiPoly::monomial(nv, e, Rational(1));
                    row[u.vars[0]] = p + MultiPoly::constant(nv, Rational(1));
                    break;
                }
                case ChainKind::recip_log: {
                    MultiPoly::Exponents e(nv, 0);
                    if (l == 1) {
                        e[Y(j)] = 2;
                        row[u.vars[0]] = MultiPoly::monomial(nv, e, Rational(-1));
                    } else {
                        e[Y(offset + 1)] = 1;
                        row[u.vars[0]] = MultiPoly::monomial(nv, e, Rational(1));
                    }
                    break;
                }
                case ChainKind::recip_power: {
                    MultiPoly::Exponents e(nv, 0);
                    if (l == 1) {
                        e[Y(j)] = 2;
                        row[u.vars[0]] = MultiPoly::monomial(nv, e, Rational(-1));
                    } else {
                        e[Y(offset + 1)] = 1;
                        e[Y(offset + 2)] = 1;
                        row[u.vars[0]] = MultiPoly::monomial(nv, e, u.params[0]);
                    }
                    break;
                }
                case ChainKind::fewnomial_monomial: {
                    int k = static_cast<int>(u.vars.size());
                    if (l <= k) {
                        MultiPoly::Exponents e(nv, 0);
                        e[Y(j)] = 2;
                        row[u.vars[l - 1]] = MultiPoly::monomial(nv, e, Rational(-1));
                    } else {
                        for (int i = 0; i < k; ++i) {
                            if (u.mono_exponents[i] == 0) continue;
                            MultiPoly::Exponents e(nv, 0);
                            e[Y(offset + 1 + i)] = 1;
                            e[Y(offset + k + 1)] = 1;
                            row[u.vars[i]] = MultiPoly::monomial(
                                nv, e, Rational(static_cast<long>(u.mono_exponents[i])));
                        }
                    }
                    break;
                }
            }
            for (const MultiPoly& p : row) alpha = std::max(alpha, p.degree_or(0));
            derivs_[j - 1] = std::move(row);
        }
        offset += u.entries;
    }
    alpha_ = alpha;
    xi_ = static_cast<int>(vars_read.size());
}

PfaffianChain PfaffianChain::embedded(int new_n) const {
    if (new_n < n_) throw std::invalid_argument("embedding cannot drop variables");
    PfaffianChain out = *this;
    out.n_ = new_n;
    out.domain_.resize(new_n, whole_line());
    out.rebuild_derivs();
    return out;
}

bool PfaffianChain::operator==(const PfaffianChain& o) const {
    if (n_ != o.n_ || r_ != o.r_ || units_.size() != o.units_.size()) return false;
    for (std::size_t i = 0; i < units_.size(); ++i) {
        const Unit& a = units_[i];
        const Unit& b = o.units_[i];
        if (a.kind != b.kind || a.params != b.params || a.vars != b.vars ||
            a.mono_exponents != b.mono_exponents) {
            return false;
        }
    }
    return true;
}

bool PfaffianChain::consistent_at(std::span<const double> x, double step, double tol) const {
    std::vector<double> base = values(x);
    std::vector<double> pt(x.begin(), x.end());
    for (int i = 1; i <= n_; ++i) {
        std::vector<double> xp = pt, xm = pt;
        xp[i - 1] += step;
        xm[i - 1] -= step;
        if (!domain_contains(xp) || !domain_contains(xm)) return true; // cannot probe here
        std::vector<double> vp = values(xp);
        std::vector<double> vm = values(xm);
        for (int j = 1; j <= r_; ++j) {
            double fd = (vp[j - 1] - vm[j - 1]) / (2.0 * step);
            std::vector<double> args(pt.begin(), pt.end());
            for (int g = 1; g <= j; ++g) args.push_back(base[g - 1]);
            double sym = deriv(i, j).eval(std::span<const double>(args));
            if (std::fabs(fd - sym) > tol * std::max(1.0, std::fabs(sym))) return false;
        }
    }
    return true;
}

PfaffianChain chain_builtin(ChainKind kind, const std::vector<Rational>& params,
                            const std::vector<unsigned>& mono_exponents) {
    PfaffianChain c;
    PfaffianChain::Unit u;
    u.kind = kind;
    u.params = params;
    u.mono_exponents = mono_exponents;
    switch (kind) {
        case ChainKind::empty:
            if (!params.empty()) throw std::invalid_argument("empty chain takes no params");
            c.n_ = 1;
            u.entries = 0;
            c.domain_ = {whole_line()};
            c.independent_ = true;
            c.independence_note_ = "order zero: no polynomial relation among zero entries";
            break;
        case ChainKind::exp:
            if (params.size() != 1 || sgn(params[0]) == 0) {
                throw std::invalid_argument("exp chain needs one nonzero rate");
            }
            c.n_ = 1;
            u.vars = {0};
            u.entries = 1;
            c.domain_ = {whole_line()};
            c.independent_ = true;
            c.independence_note_ = "e^{ax} is transcendental over R(x)";
            break;
        case ChainKind::iterated_exp: {
            if (params.size() != 2 || sgn(params[0]) == 0) {
                throw std::invalid_argument("iterated_exp chain needs rate and order");
            }
            if (params[1].get_den() != 1 || params[1] < 1 || params[1] > 8) {
                throw std::invalid_argument("iterated_exp order must be an integer in [1, 8]");
            }
            c.n_ = 1;
            u.vars = {0};
            u.entries = static_cast<int>(params[1].get_num().get_si());
            c.domain_ = {whole_line()};
            c.independent_ = true;
            c.independence_note_ = "towers e^{ax}, e^{e^{ax}}, ... are algebraically independent";
            break;
        }
        case ChainKind::tan:
            if (!params.empty()) throw std::invalid_argument("tan chain takes no params");
            c.n_ = 1;
            u.vars = {0};
            u.entries = 1;
            c.domain_ = {Interval(-kHalfPi, kHalfPi)};
            c.independent_ = true;
            c.independence_note_ = "tan is transcendental over R(x)";
            break;
        case ChainKind::recip_log:
            if (!params.empty()) throw std::invalid_argument("recip_log chain takes no params");
            c.n_ = 1;
            u.vars = {0};
            u.entries = 2;
            c.domain_ = {Interval(std::numeric_limits<double>::min(), kInf)};
            c.independent_ = true;
            c.independence_note_ = "1/x and ln x satisfy no joint polynomial relation";
            break;
        case ChainKind::recip_power:
            if (params.size() != 1) throw std::invalid_argument("recip_power chain needs exponent m");
            c.n_ = 1;
            u.vars = {0};
            u.entries = 2;
            c.domain_ = {Interval(std::numeric_limits<double>::min(), kInf)};
            c.independent_ = false;
            c.independence_note_ =
                "with m = p/q rational, Y_2^q Y_1^p - 1 vanishes identically; independence "
                "would require an irrational exponent, which exact parameters cannot express";
            break;
        case ChainKind::fewnomial_monomial: {
            if (params.size() != 1 || sgn(params[0]) == 0) {
                throw std::invalid_argument("fewnomial chain needs one nonzero coefficient");
            }
            if (mono_exponents.empty()) {
                throw std::invalid_argument("fewnomial chain needs monomial exponents");
            }
            int k = static_cast<int>(mono_exponents.size());
            c.n_ = k;
            u.vars.resize(k);
            for (int i = 0; i < k; ++i) u.vars[i] = i;
            u.entries = k + 1;
            c.domain_.assign(k, Interval(std::numeric_limits<double>::min(), kInf));
            c.independent_ = false;
            c.independence_note_ =
                "Y_{k+1} Y_1^{e_1} ... Y_k^{e_k} - a vanishes identically on the chain";
            break;
        }
    }
    c.units_.push_back(std::move(u));
    c.r_ = c.units_[0].entries;
    c.rebuild_derivs();
    return c;
}

PfaffianChain chain_stack(const PfaffianChain& a, const PfaffianChain& b) {
    PfaffianChain c;
    c.n_ = a.n_ + b.n_;
    c.r_ = a.r_ + b.r_;
    c.units_ = a.units_;
    for (PfaffianChain::Unit u : b.units_) {
        for (int& v : u.vars) v += a.n_;
        c.units_.push_back(std::move(u));
    }
    c.domain_ = a.domain_;
    c.domain_.insert(c.domain_.end(), b.domain_.begin(), b.domain_.end());
    c.independent_ = a.independent_ && b.independent_;
    c.independence_note_ = a.independence_note_ + " | " + b.independence_note_ +
                           " | blocks read disjoint variables";
    c.rebuild_derivs();
    return c;
}

ChainPtr make_chain(ChainKind kind, const std::vector<Rational>& params, int ambient,
                    const std::vector<unsigned>& mono_exponents) {
    PfaffianChain c = chain_builtin(kind, params, mono_exponents);
    if (ambient > c.n()) c = c.embedded(ambient);
    return std::make_shared<const PfaffianChain>(std::move(c));
}

} // namespace pfn
