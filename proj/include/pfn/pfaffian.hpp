#pragma once

#include "pfn/chain.hpp"

namespace pfn {

/// f(x) = Q(x, q_1(x), ..., q_r(x)) for a polynomial Q in n + r variables
/// over a shared chain. Immutable; operations return new values.
class PfaffianFunction {
public:
    PfaffianFunction(ChainPtr chain, MultiPoly q);

    const ChainPtr& chain() const { return chain_; }
    const MultiPoly& Q() const { return Q_; }
    bool is_zero() const { return Q_.is_zero(); }

    /// Format (alpha, beta, r, n, xi); beta is clamped to >= 1 as formats of
    /// constant functions still count one degree. Zero functions have no
    /// format (degree sentinel) and this throws.
    Format format() const;

    double eval(std::span<const double> x) const;
    Interval eval(std::span<const Interval> box) const;
    /// Exact value when every chain entry read by Q is exactly known at x.
    std::optional<Rational> eval_exact(std::span<const Rational> x) const;
    /// Certified enclosure at `prec` bits.
    std::pair<BigFloat, BigFloat> eval_hp(std::span<const Rational> x, int prec) const;

    /// True when the value can vary with x_v (0-based): Q reads X_v directly
    /// or reads a chain entry whose unit reads x_v.
    bool reads_variable(int v) const;

    /// d/dx_i via the chain rule of the derivative polynomials:
    ///   Q' = dQ/dX_i + sum_j (dQ/dY_j) P_{i,j};  deg Q' <= beta + alpha - 1.
    PfaffianFunction derivative(int i) const;

    PfaffianFunction operator+(const PfaffianFunction& o) const;
    PfaffianFunction operator-(const PfaffianFunction& o) const;
    PfaffianFunction operator*(const PfaffianFunction& o) const;
    PfaffianFunction scaled(const Rational& c) const;

private:
    ChainPtr chain_;
    MultiPoly Q_;
};

/// Curve t -> (x_1(t), ..., x_n(t)) whose coordinates are Pfaffian functions
/// of one variable over a shared one-dimensional chain.
struct ParametricCurve {
    ChainPtr chain1d;              // chain in the parameter t
    std::vector<MultiPoly> coords; // each in 1 + r variables (t, Y_1..Y_r)
    Interval domain;               // open parameter interval

    ParametricCurve(ChainPtr chain, std::vector<MultiPoly> xs, Interval dom);

    int ambient_dim() const { return static_cast<int>(coords.size()); }
    std::vector<double> eval(double t) const;
    PfaffianFunction coordinate(int i) const;
    /// Tangent vector dx/dt as Pfaffian functions of t.
    std::vector<PfaffianFunction> tangent() const;
};

/// Restriction P(gamma(t)) of an ambient polynomial to the curve, as a
/// Pfaffian function of t over gamma's chain.
PfaffianFunction compose_on_curve(const MultiPoly& P, const ParametricCurve& gamma);

/// Checks same chain (by value).
void require_shared_chain(const PfaffianFunction& f, const PfaffianFunction& g);

} // namespace pfn
