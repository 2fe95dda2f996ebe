#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

#include "llsep/rational_expr.hpp"

namespace llsep {

// Fixed exponential factor e^E with E = -(z1+z2)/2 + a/z1 + a/z2. The factor
// is never expanded: derivatives act through dE/dz_k = -1/2 - a/z_k^2, so an
// orbit's whole analysis stays inside Laurent-polynomial arithmetic.
struct ExpFactor {
    Rational a{0};

    friend bool operator==(const ExpFactor& x, const ExpFactor& y) { return x.a == y.a; }
    // dE/dz_k as an exact rational expression.
    RationalExpr log_derivative(Var zk) const;
};

// prefactor(z1,z2) * e^E. Comparison is exact: same a and equal prefactors.
class WaveFunction {
public:
    WaveFunction() = default;
    WaveFunction(RationalExpr prefactor, ExpFactor exp)
        : pref_(std::move(prefactor)), exp_(exp) {}

    const RationalExpr& prefactor() const { return pref_; }
    const ExpFactor& exp_factor() const { return exp_; }
    bool is_zero() const { return pref_.is_zero(); }

    // d/dz_k through the exponential: pref -> d(pref)/dz_k + (dE/dz_k)*pref.
    WaveFunction twisted_derivative(Var zk) const;

    WaveFunction scaled(const RationalExpr& c) const { return {pref_ * c, exp_}; }
    friend WaveFunction operator+(const WaveFunction& f, const WaveFunction& g);
    friend WaveFunction operator-(const WaveFunction& f, const WaveFunction& g);

    bool equals(const WaveFunction& o) const {
        return exp_ == o.exp_ && pref_.equals(o.pref_);
    }
    // Invariant under z1 <-> z2 (prefactors carry no w-exponents).
    bool is_symmetric() const { return pref_.equals(pref_.swap_pairs()); }

private:
    RationalExpr pref_;
    ExpFactor exp_;
};

// Differential operator in z1, z2 with rational-function coefficients, kept
// in normal form: coefficients strictly to the left of derivatives, no zero
// coefficient stored. Equality of normal forms is termwise exact equality.
class DiffOperator {
public:
    using Order = std::array<int, 2>;  // (d/dz1 power, d/dz2 power)
    using TermMap = std::map<Order, RationalExpr>;

    DiffOperator() = default;
    static DiffOperator identity() { return from_terms({{{0, 0}, RationalExpr(1)}}); }
    static DiffOperator from_terms(const std::vector<std::pair<Order, RationalExpr>>& terms);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_order() const;

    void add_term(const Order& o, const RationalExpr& c);

    friend DiffOperator operator+(const DiffOperator& A, const DiffOperator& B);
    friend DiffOperator operator-(const DiffOperator& A, const DiffOperator& B);
    friend DiffOperator operator*(const Scalar& s, const DiffOperator& A);
    DiffOperator scaled(const RationalExpr& c) const;

    bool equals(const DiffOperator& o) const;

    WaveFunction apply(const WaveFunction& f) const;
    std::string render() const;  // one "[i,j] coefficient" line per term

private:
    TermMap terms_;
};

// Normal-form product: d^a (c * d^b) expands by the Leibniz rule
// d^a(c g) = sum_k C(a,k) (d^k c) d^(a-k) g, applied per variable.
DiffOperator compose(const DiffOperator& A, const DiffOperator& B);
DiffOperator commutator(const DiffOperator& A, const DiffOperator& B);

struct ClosureCheck {
    bool pass;
    std::string witness;  // failing denominator rendering when pass = false
};

// Image of a symmetric wavefunction must be symmetric with the apparent
// (z1 - z2) pole cancelled; a surviving pole is reported as failure.
// Throws precondition_error when f itself is not symmetric.
ClosureCheck symmetric_closure_check(const DiffOperator& op, const WaveFunction& f);

} // namespace llsep
