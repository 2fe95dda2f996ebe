#pragma once
#include <optional>
#include <string>
#include <vector>

#include "llsep/diff_op.hpp"
#include "llsep/e3_ops.hpp"

namespace llsep {

// Generalized Laguerre polynomial L_n^alpha(x) for an arbitrary rational
// alpha, built by the three-term recurrence
//   L_0 = 1, L_1 = 1 + alpha - x,
//   (n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}.
RationalExpr laguerre(long n, const Rational& alpha, const RationalExpr& x);

// Independent oracle: the explicit series
//   sum_{k=0}^{n} (-1)^k binom(n+alpha, n-k) x^k / k!.
RationalExpr laguerre_series(long n, const Rational& alpha, const RationalExpr& x);

// Closed-form basis vector
//   f_{J,m} = i^{J-m} (J-m)! (z1 z2)^{-J} L^{(-2J-1)}_{J-m}(z1+z2) e^E,
// with E = -(z1+z2)/2 + a/z1 + a/z2. Defined whenever J - m >= 0 (J may be
// negative); throws precondition_error otherwise.
WaveFunction closed_form_f(long J, long m, const Rational& a);

struct VermaLevel {
    long m;
    WaveFunction f;               // generated by repeated lowering
    bool matches_closed_form;
};

struct VermaModule {
    long J{0};
    Rational a{0};
    bool highest_weight_annihilated{false};  // L+ f_{J,J} = 0
    std::vector<VermaLevel> levels;          // m = J, J-1, ..., J-depth
    bool all_match() const;
};

// Generate by applying L- to the closed-form highest-weight vector `depth`
// times (default depth = 2J, i.e. down to m = -J), comparing each level with
// the closed form. depth = 2J+1 reaches the singular vector f_{J,-J-1}.
VermaModule generate_verma(long J, const Rational& a, long depth = -1);

struct ActionCheck {
    std::string name;  // e.g. "L+ f(2,-1) = 4 f(2,0)"
    bool ok;
};

struct ActionReport {
    long J{0};
    Rational a{0};
    std::vector<ActionCheck> checks;
    bool all_ok() const;
};

// sl(2) triple on every level m = J..-J plus the singular-vector identity
// L+ f_{J,-J-1} = 0:
//   L3 f_m = m f_m, L- f_m = f_{m-1}, L+ f_m = (J-m)(J+m+1) f_{m+1}.
ActionReport verify_sl2_actions(long J, const Rational& a);

// Translation generators on every level, against the closed-form targets
//   p+ f_m = -i (J-m)(J-m-1) M f'_{m+1} + (a (J-m)(J+m+1)/J) f_{m+1}
//   p3 f_m = -i (J-m) M f'_m + (a m / J) f_m
//   p- f_m =  i M f'_{m-1} + (a/J) f_{m-1}
// where f'_m = f_{J-1,m} and M = 1 + a(z1+z2)/(J z1 z2). A term whose scalar
// coefficient vanishes is dropped before the target is formed, which keeps
// every referenced vector well defined. Requires J >= 1 or a = 0.
ActionReport verify_p_actions(long J, const Rational& a);

struct ShapovalovReport {
    long J{0};
    std::vector<Rational> weights;  // w(m) = (J+m)!/(J-m)!, m = -J..J
    // w(m+1)/w(m) equals the product of the raising coefficient at m and the
    // lowering coefficient at m+1, so conjugating by diag(sqrt(w)) makes both
    // ladder coefficients sqrt((J-m)(J+m+1)).
    bool ratios_match_ladder{false};
    bool ladder_verified{false};  // the operator actions themselves
    bool all_ok() const { return ratios_match_ladder && ladder_verified; }
};

ShapovalovReport shapovalov_check(long J, const Rational& a);

// Residual/W of the trial W = z^{-mu} e^{-z/2 + a/z} (mu may be any
// rational; only its coefficient enters) against the one-variable equation
//   W'' = (1/4 + h3/z + h2/z^2 + c1/z^3 + c0/z^4) W,
// computed through the logarithmic derivative. Expressed in the first
// variable slot.
RationalExpr whittaker_residual(const Rational& mu, const Rational& a, const Scalar& h3,
                                const Scalar& h2, const Scalar& c1, const Scalar& c0);

// Residual/e^E of W = R(z) e^{-z/2 + a/z} against the same equation, for an
// explicit rational prefactor R in the first variable slot.
RationalExpr separation_ode_residual(const RationalExpr& R, const Rational& a,
                                     const Scalar& h3, const Scalar& h2, const Scalar& c1,
                                     const Scalar& c0);

struct ProductIdentityReport {
    long n{0};
    Rational alpha{0};
    std::vector<Rational> coefficients;  // c_k = prod_{t=k+1}^{n}(alpha+t) / (k! n!)
    bool exact{false};
    RationalExpr residual;  // zero when exact
};

// L_n^alpha(z1) L_n^alpha(z2) = sum_k c_k (z1 z2)^k L_{n-k}^{alpha+2k}(z1+z2).
ProductIdentityReport laguerre_product_identity(long n, const Rational& alpha);

struct SeparationExpansion {
    long J{0}, m{0}, n{0};  // n = J - m
    Rational alpha{0};      // -2J - 1
    std::vector<Rational> d;  // d_0..d_n with
                              // sum_j d_j (z1z2)^j L_{n-j}^{alpha+2j}(z1) -> product form
    bool reconstruction_exact{false};
    std::vector<Rational> mu;            // characteristic exponents -(s_j + 1/2), s_j = J - j
    std::vector<bool> factor_ode_exact;  // V_j = z^{-s_j} L_{n-j}^{alpha+2j}(z) e^{-z/2}
                                         // solves W'' = (1/4 + m/z + s_j(s_j+1)/z^2) W
    bool all_ok() const;
};

// Expand the level-m prefactor into separated products (a = 0). The
// triangular system is solved exactly; requires 0 <= m <= J, where its
// diagonal is nonvanishing.
SeparationExpansion separation_expansion(long J, long m);

// Residual/e^E of W = z^{-J} L^{(-2J-1)}_{J-m}(z) e^{-z/2 + a/z} against the
// equation with h3 = m, h2 = m(m+1) + a, c1 = 2a(J+1), c0 = a^2. Vanishes
// exactly iff m = J.
RationalExpr quantized_factor_residual(long J, long m, const Rational& a);

enum class QuantizationStatus { Quantized, IrrationalRoot, NonIntegerJ, NegativeJ, DegenerateC0 };

struct QuantizationReport {
    QuantizationStatus status{QuantizationStatus::DegenerateC0};
    std::optional<Rational> a;           // root of c0 = a^2 actually used
    std::optional<Rational> J_rational;  // c1/(2a) - 1
    std::optional<long> J;               // set iff status == Quantized
    std::string describe() const;
};

// Decide whether (c0, c1) sits on a quantized orbit: c0 = a^2 with rational
// a and J = c1/(2a) - 1 a nonnegative integer. Both signs of the root are
// tried; c0 = 0 is reported as degenerate.
QuantizationReport quantization_condition(const Rational& c0, const Rational& c1);

struct EigenReport {
    bool is_eigenvector{false};
    Scalar eigenvalue;  // valid when is_eigenvector
};

// Whether op f = lambda f for a scalar lambda, and that lambda.
EigenReport eigen_check(const DiffOperator& op, const WaveFunction& f);

} // namespace llsep
