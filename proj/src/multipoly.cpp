#include "pfn/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pfn/bigfloat.hpp"

namespace pfn {

namespace {

unsigned total_degree(const MultiPoly::Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

void check_same_vars(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars()) {
        throw std::invalid_argument("polynomial variable count mismatch");
    }
}

} // namespace

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("variable index");
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(int nvars, Exponents e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars) throw std::invalid_argument("exponent length");
    MultiPoly p(nvars);
    p.add_term(std::move(e), c);
    return p;
}

std::optional<int> MultiPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, total_degree(e));
    return static_cast<int>(best);
}

unsigned MultiPoly::max_exponent(int var) const {
    unsigned best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[var]);
    return best;
}

bool MultiPoly::depends_on(int var) const {
    for (const auto& [e, c] : terms_) {
        if (e[var] != 0) return true;
    }
    return false;
}

Rational MultiPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent length");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_same_vars(*this, o);
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    check_same_vars(*this, o);
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_same_vars(*this, o);
    MultiPoly out(nvars_);
    Exponents e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly out(nvars_);
    if (sgn(c) == 0) return out;
    for (const auto& [e, q] : terms_) out.terms_.emplace(e, q * c);
    return out;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::out_of_range("variable index");
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        out.add_term(d, c * Rational(static_cast<long>(e[var])));
    }
    return out;
}

MultiPoly MultiPoly::padded(int new_nvars) const {
    if (new_nvars < nvars_) throw std::invalid_argument("padded shrinks variable set");
    if (new_nvars == nvars_) return *this;
    MultiPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents w(new_nvars, 0);
        std::copy(e.begin(), e.end(), w.begin());
        out.terms_.emplace(std::move(w), c);
    }
    return out;
}

MultiPoly MultiPoly::remapped(const std::vector<int>& to, int new_nvars) const {
    if (static_cast<int>(to.size()) != nvars_) throw std::invalid_argument("remap arity");
    for (int t : to) {
        if (t < 0 || t >= new_nvars) throw std::out_of_range("remap target");
    }
    MultiPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents w(new_nvars, 0);
        for (int i = 0; i < nvars_; ++i) w[to[i]] += e[i];
        out.add_term(w, c);
    }
    return out;
}

MultiPoly MultiPoly::substituted(std::span<const MultiPoly> args) const {
    if (static_cast<int>(args.size()) != nvars_) {
        throw std::invalid_argument("substitution arity mismatch");
    }
    int out_vars = args.empty() ? 0 : args[0].nvars();
    for (const auto& a : args) {
        if (a.nvars() != out_vars) throw std::invalid_argument("substitution variable mismatch");
    }
    // cache powers of each argument up to the max exponent used
    std::vector<std::vector<MultiPoly>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        pows[i].push_back(MultiPoly::constant(out_vars, Rational(1)));
        unsigned need = max_exponent(i);
        for (unsigned k = 1; k <= need; ++k) pows[i].push_back(pows[i].back() * args[i]);
    }
    MultiPoly out(out_vars);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = MultiPoly::constant(out_vars, c);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] != 0) term = term * pows[i][e[i]];
        }
        out = out + term;
    }
    return out;
}

Rational MultiPoly::eval(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point arity");
    std::vector<std::vector<Rational>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        pows[i].push_back(Rational(1));
        unsigned need = max_exponent(i);
        for (unsigned k = 1; k <= need; ++k) pows[i].push_back(pows[i].back() * x[i]);
    }
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] != 0) t *= pows[i][e[i]];
        }
        acc += t;
    }
    return acc;
}

double MultiPoly::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point arity");
    std::vector<std::vector<double>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        pows[i].push_back(1.0);
        unsigned need = max_exponent(i);
        for (unsigned k = 1; k <= need; ++k) pows[i].push_back(pows[i].back() * x[i]);
    }
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] != 0) t *= pows[i][e[i]];
        }
        acc += t;
    }
    return acc;
}

Interval MultiPoly::eval(std::span<const Interval> x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point arity");
    std::vector<std::vector<Interval>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        pows[i].push_back(Interval::point(1.0));
        unsigned need = max_exponent(i);
        for (unsigned k = 1; k <= need; ++k) pows[i].push_back(ipow(x[i], k));
    }
    Interval acc = Interval::point(0.0);
    for (const auto& [e, c] : terms_) {
        Interval t = Interval::from_rational(c);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] != 0) t = t * pows[i][e[i]];
        }
        acc = acc + t;
    }
    return acc;
}

BigFloat MultiPoly::eval_hp(std::span<const BigFloat> x, int prec) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point arity");
    BigFloat acc(prec);
    for (const auto& [e, c] : terms_) {
        BigFloat t = BigFloat::from(c, prec, MPFR_RNDN);
        for (int i = 0; i < nvars_; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) t = bf_mul(t, x[i], MPFR_RNDN, prec);
        }
        acc = bf_add(acc, t, MPFR_RNDN, prec);
    }
    return acc;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*";
            if (static_cast<std::size_t>(i) < names.size()) os << names[i];
            else os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::vector<MultiPoly::Exponents> grlex_monomials(int nvars, int max_degree) {
    std::vector<MultiPoly::Exponents> out;
    // degree blocks ascending; within a block, lex with X_1 taking the
    // largest exponent first
    std::vector<unsigned> comp(nvars, 0);
    auto emit = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars - 1) {
            comp[pos] = static_cast<unsigned>(left);
            out.push_back(comp);
            return;
        }
        for (int take = left; take >= 0; --take) {
            comp[pos] = static_cast<unsigned>(take);
            self(self, pos + 1, left - take);
        }
    };
    for (int d = 0; d <= max_degree; ++d) {
        if (nvars == 0) {
            if (d == 0) out.push_back({});
            continue;
        }
        emit(emit, 0, d);
    }
    return out;
}

std::vector<MultiPoly::Exponents> grlex_prefix(int nvars, int max_degree, std::size_t count) {
    auto all = grlex_monomials(nvars, max_degree);
    if (all.size() < count) {
        throw std::invalid_argument("monomial space smaller than requested basis");
    }
    all.resize(count);
    return all;
}

} // namespace pfn
