#pragma once
#include <map>
#include <string>

#include "llsep/laurent.hpp"

namespace llsep {

// Fraction of Laurent polynomials. Fractions are not reduced to lowest terms:
// equality is decided by cross-multiplication and zero-testing by the
// numerator, so no multivariate GCD is ever needed. After each operation the
// representation is cheaply normalized: common monomial factors are stripped,
// the denominator is made monic, and a full or (z1-z2)-factor cancellation is
// attempted when it is exact.
class RationalExpr {
public:
    RationalExpr() : num_(), den_(LaurentPoly(Scalar(1))) {}
    RationalExpr(const Scalar& c) : num_(LaurentPoly(c)), den_(LaurentPoly(Scalar(1))) {}  // NOLINT
    RationalExpr(int c) : RationalExpr(Scalar(c)) {}                                       // NOLINT
    RationalExpr(const LaurentPoly& p) : num_(p), den_(LaurentPoly(Scalar(1))) {}          // NOLINT
    RationalExpr(LaurentPoly num, LaurentPoly den);  // throws division_by_zero on den = 0

    static RationalExpr variable(Var v, int exponent = 1) {
        return RationalExpr(LaurentPoly::variable(v, exponent));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    // Scalar value when the expression is constant, else nullopt.
    std::optional<Scalar> as_constant() const;

    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a);
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
    RationalExpr& operator+=(const RationalExpr& o) { *this = *this + o; return *this; }
    RationalExpr& operator-=(const RationalExpr& o) { *this = *this - o; return *this; }
    RationalExpr& operator*=(const RationalExpr& o) { *this = *this * o; return *this; }

    // a/b = c/d decided exactly by a*d = c*b.
    bool equals(const RationalExpr& o) const;
    friend bool operator==(const RationalExpr& a, const RationalExpr& b) { return a.equals(b); }
    friend bool operator!=(const RationalExpr& a, const RationalExpr& b) { return !a.equals(b); }

    // Exact quotient-rule derivative.
    RationalExpr derivative(Var v) const;

    // Exact substitution; unbound variables stay. Throws division_by_zero
    // when a binding annihilates the denominator.
    RationalExpr substitute(const std::map<Var, RationalExpr>& bindings) const;
    RationalExpr substitute(Var v, const Scalar& value) const;

    // Exact evaluation at a fully scalar point.
    Scalar eval_exact(const std::array<Scalar, kNumVars>& point) const;

    // Floating evaluation; throws near_pole when |den(point)| < pole_eps.
    std::complex<double> eval_complex(const std::array<std::complex<double>, kNumVars>& point,
                                      double pole_eps = 1e-12) const;

    RationalExpr swap_pairs() const { return RationalExpr(num_.swap_pairs(), den_.swap_pairs()); }

    std::string render() const;

private:
    void normalize();
    LaurentPoly num_, den_;
};

} // namespace llsep
