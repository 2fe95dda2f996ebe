#pragma once
#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "llsep/scalar.hpp"

namespace llsep {

// The four separation-side variables. Quantum-side objects simply never
// carry w-exponents.
enum Var : int { Z1 = 0, Z2 = 1, W1 = 2, W2 = 3 };
inline constexpr int kNumVars = 4;
inline constexpr const char* kVarNames[kNumVars] = {"z1", "z2", "w1", "w2"};

using ExpVec = std::array<int, kNumVars>;

// Multivariate Laurent polynomial over Gaussian rationals. Terms live in a
// lexicographically ordered map, so structural equality is mathematical
// equality; no zero coefficient is ever stored.
class LaurentPoly {
public:
    using TermMap = std::map<ExpVec, Scalar>;

    LaurentPoly() = default;
    explicit LaurentPoly(const Scalar& c) { add_term(ExpVec{0, 0, 0, 0}, c); }
    LaurentPoly(int c) : LaurentPoly(Scalar(c)) {}  // NOLINT: implicit by design

    static LaurentPoly variable(Var v, int exponent = 1) {
        LaurentPoly p;
        ExpVec e{0, 0, 0, 0};
        e[v] = exponent;
        p.add_term(e, Scalar(1));
        return p;
    }
    static LaurentPoly monomial(const ExpVec& e, const Scalar& c) {
        LaurentPoly p;
        p.add_term(e, c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // nullopt on the zero polynomial
    std::optional<Scalar> as_constant() const;
    bool is_constant() const;

    void add_term(const ExpVec& e, const Scalar& c);

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const Scalar& s);
    friend LaurentPoly operator*(const Scalar& s, const LaurentPoly& a) { return a * s; }
    LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly derivative(Var v) const;

    // Exchange z1<->z2 and w1<->w2 simultaneously.
    LaurentPoly swap_pairs() const;

    // Componentwise minimum exponent over all terms (zero poly -> all 0).
    ExpVec min_exponents() const;
    // Divide by a monomial x^e (always exact in the Laurent ring).
    LaurentPoly shift(const ExpVec& e) const;

    // Largest term in lex order; poly must be nonzero.
    const std::pair<const ExpVec, Scalar>& leading_term() const;

    // Exact substitution of a scalar for one variable. Negative exponents of
    // v require value != 0; throws division_by_zero otherwise.
    LaurentPoly substitute_scalar(Var v, const Scalar& value) const;

    std::complex<double> eval_complex(const std::array<std::complex<double>, kNumVars>& point) const;

    // Canonical text form: terms in descending lex exponent order with
    // explicit signs, e.g. "z1^2*z2^-1 - 2*w1 + 1/2".
    std::string render() const;
    // Inverse of render(); throws parse_error on malformed input.
    static LaurentPoly parse(const std::string& text);

private:
    TermMap terms_;
};

// Quotient r with p = q*r, or nullopt when the quotient is not a Laurent
// polynomial. q must be nonzero (throws division_by_zero).
std::optional<LaurentPoly> exact_div(const LaurentPoly& p, const LaurentPoly& q);

} // namespace llsep
