#include "llsep/verma.hpp"

#include <utility>

#include "llsep/errors.hpp"

namespace llsep {

namespace {

RationalExpr rv(Var v, int e = 1) { return RationalExpr::variable(v, e); }

RationalExpr scalar_expr(const Rational& r) { return RationalExpr(Scalar(r)); }

// (z1 z2)^e as a single monomial
RationalExpr zz_pow(int e) {
    return RationalExpr(LaurentPoly::monomial(ExpVec{e, e, 0, 0}, Scalar(1)));
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long to_long(const Rational& r) { return static_cast<long>(r.get_num().get_si()); }

// prod_{t=k+1}^{n} (alpha + t) / (k! n!)
Rational product_coefficient(long k, const Rational& alpha, long n) {
    Rational acc(1);
    for (long t = k + 1; t <= n; ++t) acc *= alpha + Rational(t);
    return acc / (factorial(k) * factorial(n));
}

} // namespace

RationalExpr laguerre(long n, const Rational& alpha, const RationalExpr& x) {
    if (n < 0) throw precondition_error("laguerre requires n >= 0");
    RationalExpr prev(1);
    if (n == 0) return prev;
    RationalExpr cur = scalar_expr(Rational(1) + alpha) - x;
    for (long k = 1; k < n; ++k) {
        RationalExpr next =
            ((scalar_expr(Rational(2 * k + 1) + alpha) - x) * cur -
             scalar_expr(Rational(k) + alpha) * prev) *
            scalar_expr(Rational(1, k + 1));
        prev = std::exchange(cur, next);
    }
    return cur;
}

RationalExpr laguerre_series(long n, const Rational& alpha, const RationalExpr& x) {
    if (n < 0) throw precondition_error("laguerre_series requires n >= 0");
    RationalExpr sum(0);
    RationalExpr xpow(1);
    for (long k = 0; k <= n; ++k) {
        // binom(n + alpha, n - k) = prod_{t=k+1}^{n} (alpha + t) / (n-k)!
        Rational binom(1);
        for (long t = k + 1; t <= n; ++t) binom *= alpha + Rational(t);
        binom /= factorial(n - k);
        Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
        sum += scalar_expr(sign * binom / factorial(k)) * xpow;
        if (k < n) xpow *= x;
    }
    return sum;
}

WaveFunction closed_form_f(long J, long m, const Rational& a) {
    long n = J - m;
    if (n < 0) throw precondition_error("closed_form_f requires J - m >= 0");
    Scalar coeff = Scalar::i_pow(n) * Scalar(factorial(n));
    RationalExpr pref = RationalExpr(coeff) * zz_pow(static_cast<int>(-J)) *
                        laguerre(n, Rational(-2 * J - 1), rv(Z1) + rv(Z2));
    return {pref, ExpFactor{a}};
}

bool VermaModule::all_match() const {
    if (!highest_weight_annihilated) return false;
    for (const auto& lv : levels)
        if (!lv.matches_closed_form) return false;
    return true;
}

VermaModule generate_verma(long J, const Rational& a, long depth) {
    if (J < 0) throw precondition_error("generate_verma requires J >= 0");
    if (depth < 0) depth = 2 * J;
    E3Generators gen = build_generators(OrbitParams::quantized(a, J));

    VermaModule mod;
    mod.J = J;
    mod.a = a;

    WaveFunction f = closed_form_f(J, J, a);
    mod.highest_weight_annihilated = gen.Lp.apply(f).is_zero();
    mod.levels.push_back({J, f, true});
    for (long step = 1; step <= depth; ++step) {
        long m = J - step;
        f = gen.Lm.apply(f);
        bool match = f.equals(closed_form_f(J, m, a));
        mod.levels.push_back({m, f, match});
    }
    return mod;
}

bool ActionReport::all_ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

namespace {

std::string fname(long J, long m) {
    return "f(" + std::to_string(J) + "," + std::to_string(m) + ")";
}

} // namespace

ActionReport verify_sl2_actions(long J, const Rational& a) {
    if (J < 0) throw precondition_error("verify_sl2_actions requires J >= 0");
    E3Generators gen = build_generators(OrbitParams::quantized(a, J));

    ActionReport rep;
    rep.J = J;
    rep.a = a;

    for (long m = J; m >= -J; --m) {
        WaveFunction f = closed_form_f(J, m, a);

        WaveFunction l3f = gen.L3.apply(f);
        rep.checks.push_back({"L3 " + fname(J, m) + " = " + std::to_string(m) + " " + fname(J, m),
                              l3f.equals(f.scaled(RationalExpr(Scalar(m))))});

        WaveFunction lpf = gen.Lp.apply(f);
        if (m == J) {
            rep.checks.push_back({"L+ " + fname(J, m) + " = 0", lpf.is_zero()});
        } else {
            long c = (J - m) * (J + m + 1);
            WaveFunction target = closed_form_f(J, m + 1, a).scaled(RationalExpr(Scalar(c)));
            rep.checks.push_back({"L+ " + fname(J, m) + " = " + std::to_string(c) + " " +
                                      fname(J, m + 1),
                                  lpf.equals(target)});
        }

        WaveFunction lmf = gen.Lm.apply(f);
        rep.checks.push_back({"L- " + fname(J, m) + " = " + fname(J, m - 1),
                              lmf.equals(closed_form_f(J, m - 1, a))});
    }

    // Singular vector below the irreducible block.
    WaveFunction sing = closed_form_f(J, -J - 1, a);
    rep.checks.push_back({"L+ " + fname(J, -J - 1) + " = 0", gen.Lp.apply(sing).is_zero()});
    return rep;
}

ActionReport verify_p_actions(long J, const Rational& a) {
    if (J < 0) throw precondition_error("verify_p_actions requires J >= 0");
    if (J == 0 && a != 0)
        throw precondition_error("verify_p_actions requires J >= 1 when a != 0");
    E3Generators gen = build_generators(OrbitParams::quantized(a, J));

    ActionReport rep;
    rep.J = J;
    rep.a = a;

    // Multiplier in front of the level-(J-1) component.
    RationalExpr M(1);
    if (a != 0)
        M = RationalExpr(1) +
            scalar_expr(a / Rational(J)) * (rv(Z1) + rv(Z2)) * zz_pow(-1);

    const Scalar I = Scalar::i();

    // target = sum of the two table terms; a term with vanishing scalar
    // coefficient is dropped before its basis vector is ever formed.
    auto check = [&](const std::string& label, const WaveFunction& image, long down_coeff_re,
                     bool down_imag, long down_m, const Rational& same_coeff, long same_m) {
        WaveFunction target{RationalExpr(0), ExpFactor{a}};
        if (down_coeff_re != 0) {
            Scalar c = down_imag ? I * Scalar(down_coeff_re) : Scalar(down_coeff_re);
            target = target + closed_form_f(J - 1, down_m, a).scaled(M * RationalExpr(c));
        }
        if (same_coeff != 0)
            target = target + closed_form_f(J, same_m, a).scaled(scalar_expr(same_coeff));
        rep.checks.push_back({label, image.equals(target)});
    };

    for (long m = J; m >= -J; --m) {
        WaveFunction f = closed_form_f(J, m, a);
        Rational aJ = (a == 0) ? Rational(0) : a / Rational(J);

        check("p+ " + fname(J, m), gen.pp.apply(f),
              -(J - m) * (J - m - 1), true, m + 1,
              aJ * Rational((J - m) * (J + m + 1)), m + 1);
        check("p3 " + fname(J, m), gen.p3.apply(f),
              -(J - m), true, m,
              aJ * Rational(m), m);
        check("p- " + fname(J, m), gen.pm.apply(f),
              1, true, m - 1,
              aJ, m - 1);
    }
    return rep;
}

ShapovalovReport shapovalov_check(long J, const Rational& a) {
    if (J < 0) throw precondition_error("shapovalov_check requires J >= 0");
    ShapovalovReport rep;
    rep.J = J;
    rep.ladder_verified = verify_sl2_actions(J, a).all_ok();

    for (long m = -J; m <= J; ++m) rep.weights.push_back(factorial(J + m) / factorial(J - m));

    rep.ratios_match_ladder = true;
    for (long m = -J; m < J; ++m) {
        // raising coefficient at m times lowering coefficient at m+1 (= 1)
        Rational ladder((J - m) * (J + m + 1));
        if (rep.weights[m + J + 1] / rep.weights[m + J] != ladder) {
            rep.ratios_match_ladder = false;
            break;
        }
    }
    return rep;
}

namespace {

// 1/4 + h3/z + h2/z^2 + c1/z^3 + c0/z^4 in the first variable slot
RationalExpr curve_potential(const Scalar& h3, const Scalar& h2, const Scalar& c1,
                             const Scalar& c0) {
    return RationalExpr(Scalar(Rational(1, 4))) + RationalExpr(h3) * rv(Z1, -1) +
           RationalExpr(h2) * rv(Z1, -2) + RationalExpr(c1) * rv(Z1, -3) +
           RationalExpr(c0) * rv(Z1, -4);
}

// E' for E = -z/2 + a/z
RationalExpr exp_slope(const Rational& a) {
    return RationalExpr(Scalar(Rational(-1, 2))) - scalar_expr(a) * rv(Z1, -2);
}

} // namespace

RationalExpr whittaker_residual(const Rational& mu, const Rational& a, const Scalar& h3,
                                const Scalar& h2, const Scalar& c1, const Scalar& c0) {
    RationalExpr u = -scalar_expr(mu) * rv(Z1, -1) + exp_slope(a);
    return u * u + u.derivative(Z1) - curve_potential(h3, h2, c1, c0);
}

RationalExpr separation_ode_residual(const RationalExpr& R, const Rational& a,
                                     const Scalar& h3, const Scalar& h2, const Scalar& c1,
                                     const Scalar& c0) {
    RationalExpr Ep = exp_slope(a);
    RationalExpr Rp = R.derivative(Z1);
    return Rp.derivative(Z1) + RationalExpr(2) * Ep * Rp +
           (Ep * Ep + Ep.derivative(Z1) - curve_potential(h3, h2, c1, c0)) * R;
}

ProductIdentityReport laguerre_product_identity(long n, const Rational& alpha) {
    if (n < 0) throw precondition_error("laguerre_product_identity requires n >= 0");
    ProductIdentityReport rep;
    rep.n = n;
    rep.alpha = alpha;

    RationalExpr lhs = laguerre(n, alpha, rv(Z1)) * laguerre(n, alpha, rv(Z2));
    RationalExpr rhs(0);
    for (long k = 0; k <= n; ++k) {
        Rational ck = product_coefficient(k, alpha, n);
        rep.coefficients.push_back(ck);
        rhs += scalar_expr(ck) * zz_pow(static_cast<int>(k)) *
               laguerre(n - k, alpha + Rational(2 * k), rv(Z1) + rv(Z2));
    }
    rep.residual = lhs - rhs;
    rep.exact = rep.residual.is_zero();
    return rep;
}

bool SeparationExpansion::all_ok() const {
    if (!reconstruction_exact) return false;
    for (bool ok : factor_ode_exact)
        if (!ok) return false;
    return true;
}

SeparationExpansion separation_expansion(long J, long m) {
    if (J < 0 || m < 0 || m > J)
        throw precondition_error("separation_expansion requires 0 <= m <= J");
    SeparationExpansion rep;
    rep.J = J;
    rep.m = m;
    rep.n = J - m;
    rep.alpha = Rational(-2 * J - 1);
    const long n = rep.n;
    const Rational& alpha = rep.alpha;

    // Triangular system: sum_{j<=l} d_j c_{l-j}(alpha+2j, n-j) = delta_{l0}.
    for (long l = 0; l <= n; ++l) {
        Rational rhs = (l == 0) ? Rational(1) : Rational(0);
        for (long j = 0; j < l; ++j)
            rhs -= rep.d[j] * product_coefficient(l - j, alpha + Rational(2 * j), n - j);
        rep.d.push_back(rhs / product_coefficient(0, alpha + Rational(2 * l), n - l));
    }

    // Reconstruction: sum_j d_j (z1z2)^j L_{n-j}^{alpha+2j}(z1) L_{n-j}^{alpha+2j}(z2)
    // must equal L_n^alpha(z1+z2).
    RationalExpr sum(0);
    for (long j = 0; j <= n; ++j) {
        Rational aj = alpha + Rational(2 * j);
        sum += scalar_expr(rep.d[j]) * zz_pow(static_cast<int>(j)) *
               laguerre(n - j, aj, rv(Z1)) * laguerre(n - j, aj, rv(Z2));
    }
    rep.reconstruction_exact = (sum - laguerre(n, alpha, rv(Z1) + rv(Z2))).is_zero();

    // Each factor V_j = z^{-s} L_{n-j}^{alpha+2j}(z) e^{-z/2}, s = J - j,
    // solves W'' = (1/4 + m/z + s(s+1)/z^2) W.
    for (long j = 0; j <= n; ++j) {
        long s = J - j;
        rep.mu.push_back(Rational(-(2 * s + 1), 2));
        RationalExpr R = rv(Z1, static_cast<int>(-s)) *
                         laguerre(n - j, alpha + Rational(2 * j), rv(Z1));
        RationalExpr res = separation_ode_residual(R, Rational(0), Scalar(m),
                                                   Scalar(Rational(s * (s + 1))), Scalar(0),
                                                   Scalar(0));
        rep.factor_ode_exact.push_back(res.is_zero());
    }
    return rep;
}

RationalExpr quantized_factor_residual(long J, long m, const Rational& a) {
    if (J < 0 || J - m < 0)
        throw precondition_error("quantized_factor_residual requires 0 <= J and m <= J");
    RationalExpr R =
        rv(Z1, static_cast<int>(-J)) * laguerre(J - m, Rational(-2 * J - 1), rv(Z1));
    Scalar h2 = Scalar(Rational(m) * Rational(m + 1) + a);
    Scalar c1 = Scalar(2 * a * Rational(J + 1));
    Scalar c0 = Scalar(a * a);
    return separation_ode_residual(R, a, Scalar(m), h2, c1, c0);
}

std::string QuantizationReport::describe() const {
    switch (status) {
        case QuantizationStatus::Quantized:
            return "quantized orbit: a = " + render_rational(*a) +
                   ", J = " + std::to_string(*J);
        case QuantizationStatus::IrrationalRoot:
            return "c0 has no rational square root";
        case QuantizationStatus::NonIntegerJ:
            return "c1/(2a) - 1 = " + render_rational(*J_rational) + " is not an integer";
        case QuantizationStatus::NegativeJ:
            return "c1/(2a) - 1 = " + render_rational(*J_rational) + " is negative";
        case QuantizationStatus::DegenerateC0:
            return "c0 = 0: degenerate orbit, no finite-dimensional block singled out";
    }
    return "";
}

QuantizationReport quantization_condition(const Rational& c0, const Rational& c1) {
    QuantizationReport rep;
    if (c0 == 0) {
        rep.status = QuantizationStatus::DegenerateC0;
        return rep;
    }
    auto root = rational_sqrt(c0);
    if (!root) {
        rep.status = QuantizationStatus::IrrationalRoot;
        return rep;
    }

    auto classify = [](const Rational& Jr, QuantizationReport& out) {
        out.J_rational = Jr;
        if (!is_integer(Jr)) {
            out.status = QuantizationStatus::NonIntegerJ;
        } else if (Jr < 0) {
            out.status = QuantizationStatus::NegativeJ;
        } else {
            out.status = QuantizationStatus::Quantized;
            out.J = to_long(Jr);
        }
    };

    // Both square roots define the same orbit; prefer the sign that makes
    // the quantization succeed.
    const Rational roots[2] = {*root, Rational(-*root)};
    for (const Rational& aa : roots) {
        QuantizationReport cand;
        cand.a = aa;
        classify(c1 / (2 * aa) - 1, cand);
        if (cand.status == QuantizationStatus::Quantized) return cand;
        if (!rep.a) rep = cand;
    }
    return rep;
}

EigenReport eigen_check(const DiffOperator& op, const WaveFunction& f) {
    if (f.is_zero()) throw precondition_error("eigen_check requires a nonzero wavefunction");
    EigenReport rep;
    WaveFunction image = op.apply(f);
    if (image.is_zero()) {
        rep.is_eigenvector = true;
        rep.eigenvalue = Scalar(0);
        return rep;
    }
    auto ratio = (image.prefactor() / f.prefactor()).as_constant();
    rep.is_eigenvector = ratio.has_value();
    rep.eigenvalue = ratio.value_or(Scalar(0));
    return rep;
}

} // namespace llsep
