#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfn/interval.hpp"
#include "pfn/rational.hpp"

namespace pfn {

class BigFloat;

/// A point with exact rational coordinates.
using Point = std::vector<Rational>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariants: stored coefficients are nonzero; every exponent vector has
/// length nvars(). The zero polynomial stores no terms and its degree is a
/// sentinel (std::nullopt), never -1, so format bookkeeping cannot be
/// corrupted by arithmetic on it.
class MultiPoly {
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Rational>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

    static MultiPoly zero(int nvars) { return MultiPoly(nvars); }
    static MultiPoly constant(int nvars, const Rational& c);
    /// X_i, 0-based.
    static MultiPoly variable(int nvars, int i);
    static MultiPoly monomial(int nvars, Exponents e, const Rational& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Total degree; nullopt is the zero-polynomial sentinel.
    std::optional<int> degree() const;
    int degree_or(int fallback) const { return degree().value_or(fallback); }
    unsigned max_exponent(int var) const;
    bool depends_on(int var) const;

    Rational coeff(const Exponents& e) const;
    void add_term(const Exponents& e, const Rational& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(const Rational& c) const;
    bool operator==(const MultiPoly& o) const;

    MultiPoly derivative(int var) const;
    /// Same polynomial viewed in a larger variable set (new trailing vars).
    MultiPoly padded(int new_nvars) const;
    /// Rename variables: old slot i becomes to[i] in a new_nvars-variable ring.
    MultiPoly remapped(const std::vector<int>& to, int new_nvars) const;
    /// Substitute X_i -> args[i]; all args share a variable set.
    MultiPoly substituted(std::span<const MultiPoly> args) const;

    Rational eval(std::span<const Rational> x) const;
    double eval(std::span<const double> x) const;
    Interval eval(std::span<const Interval> x) const;
    BigFloat eval_hp(std::span<const BigFloat> x, int prec) const;

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    int nvars_;
    TermMap terms_;
};

/// Exponent vectors of all monomials in n variables with total degree <= d,
/// in graded lexicographic order (degree first, then lex with X_1 highest).
std::vector<MultiPoly::Exponents> grlex_monomials(int nvars, int max_degree);

/// First `count` of the above; throws when fewer exist.
std::vector<MultiPoly::Exponents> grlex_prefix(int nvars, int max_degree, std::size_t count);

} // namespace pfn
