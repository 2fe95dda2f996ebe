#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "llsep/errors.hpp"
#include "llsep/verma.hpp"

#include <vector>

using namespace llsep;

namespace {

RationalExpr xvar() { return RationalExpr::variable(Var::Z1); }

}  // namespace

TEST_CASE("laguerre recurrence agrees with the explicit series") {
    const std::vector<Rational> alphas = {Rational(-3), Rational(-5), Rational(1, 2),
                                          Rational(22, 7)};
    for (const auto& alpha : alphas) {
        CAPTURE(render_rational(alpha));
        for (long n = 0; n <= 8; ++n) {
            CAPTURE(n);
            CHECK(laguerre(n, alpha, xvar()).equals(laguerre_series(n, alpha, xvar())));
        }
    }
    // Spot values: L_2^0(x) = 1 - 2x + x^2/2 at x = 2 gives -1.
    RationalExpr two(Scalar(2));
    CHECK(laguerre(2, Rational(0), two).equals(RationalExpr(Scalar(-1))));
}

TEST_CASE("closed-form basis vectors") {
    // f_{2,2} = (z1 z2)^{-2} e^E: top of the ladder has trivial polynomial part.
    WaveFunction top = closed_form_f(2, 2, Rational(0));
    CHECK(top.prefactor().equals(
        RationalExpr(LaurentPoly::monomial({-2, -2, 0, 0}, Scalar(1)))));
    CHECK(top.exp_factor().a == Rational(0));
    CHECK(top.is_symmetric());

    // The a parameter rides along in the exponential factor only.
    WaveFunction twisted = closed_form_f(2, 2, Rational(3, 2));
    CHECK(twisted.exp_factor().a == Rational(3, 2));
    CHECK(twisted.prefactor().equals(top.prefactor()));

    CHECK_THROWS_AS((void)closed_form_f(2, 3, Rational(0)), precondition_error);
}

TEST_CASE("module generation matches the closed form") {
    VermaModule mod = generate_verma(2, Rational(0));
    CHECK(mod.highest_weight_annihilated);
    CHECK(mod.all_match());
    REQUIRE(mod.levels.size() == 5);  // m = 2..-2 at default depth 2J
    CHECK(mod.levels.front().m == 2);
    CHECK(mod.levels.back().m == -2);
    for (const auto& lvl : mod.levels) {
        CAPTURE(lvl.m);
        CHECK(lvl.matches_closed_form);
        CHECK(!lvl.f.is_zero());
    }

    // Lowering continues to make sense past the singular vector.
    VermaModule deep = generate_verma(2, Rational(1), 6);
    CHECK(deep.all_match());
    REQUIRE(deep.levels.size() == 7);  // m = 2..-4
    CHECK(deep.levels.back().m == -4);

    VermaModule scalar = generate_verma(0, Rational(0));
    CHECK(scalar.highest_weight_annihilated);
    REQUIRE(scalar.levels.size() == 1);
    CHECK(scalar.all_match());
}

TEST_CASE("rotation ladder actions") {
    ActionReport rep = verify_sl2_actions(3, Rational(1, 2));
    CHECK(rep.all_ok());
    // Three relations per level m = J..-J plus the singular-vector identity.
    CHECK(rep.checks.size() == 3 * 7 + 1);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CHECK(c.ok);
    }

    CHECK(verify_sl2_actions(0, Rational(2)).all_ok());
    CHECK(verify_sl2_actions(4, Rational(0)).all_ok());
}

TEST_CASE("translation actions") {
    CHECK(verify_p_actions(2, Rational(1)).all_ok());
    CHECK(verify_p_actions(1, Rational(-2, 3)).all_ok());
    CHECK(verify_p_actions(3, Rational(0)).all_ok());
    // J = 0 is fine on the flat orbit but undefined for a != 0, where the
    // closed-form coefficients divide by J.
    CHECK(verify_p_actions(0, Rational(0)).all_ok());
    CHECK_THROWS_AS((void)verify_p_actions(0, Rational(1)), precondition_error);
}

TEST_CASE("contravariant-form weights") {
    ShapovalovReport rep = shapovalov_check(6, Rational(0));
    CHECK(rep.all_ok());
    CHECK(rep.ratios_match_ladder);
    CHECK(rep.ladder_verified);
    REQUIRE(rep.weights.size() == 13);  // m = -6..6
    CHECK(rep.weights.front() == Rational(1, 479001600));  // (J+m)!/(J-m)! at m = -J
    CHECK(rep.weights.back() == Rational(479001600));      // 12! at m = J
    // Midpoint m = 0: 6!/6! = 1.
    CHECK(rep.weights[6] == Rational(1));

    CHECK(shapovalov_check(1, Rational(1)).all_ok());
}

TEST_CASE("product-to-sum expansion of equal-degree polynomials") {
    const std::vector<Rational> alphas = {Rational(-1),    Rational(-3),  Rational(-5),
                                          Rational(-7),    Rational(-9),  Rational(1, 2),
                                          Rational(-3, 4), Rational(22, 7), Rational(-9, 5),
                                          Rational(5, 8)};
    for (const auto& alpha : alphas) {
        CAPTURE(render_rational(alpha));
        for (long n = 0; n <= 8; ++n) {
            CAPTURE(n);
            ProductIdentityReport rep = laguerre_product_identity(n, alpha);
            CHECK(rep.exact);
            CHECK(rep.residual.is_zero());
            CHECK(rep.coefficients.size() == static_cast<std::size_t>(n + 1));
        }
    }

    // n = 1 coefficients are {alpha + 1, 1}.
    ProductIdentityReport lin = laguerre_product_identity(1, Rational(1, 2));
    REQUIRE(lin.coefficients.size() == 2);
    CHECK(lin.coefficients[0] == Rational(3, 2));
    CHECK(lin.coefficients[1] == Rational(1));
}

TEST_CASE("separated expansion of a level prefactor") {
    SeparationExpansion exp = separation_expansion(2, 0);
    CHECK(exp.all_ok());
    CHECK(exp.reconstruction_exact);
    CHECK(exp.n == 2);
    CHECK(exp.alpha == Rational(-5));
    REQUIRE(exp.d.size() == 3);
    CHECK(exp.d[0] == Rational(1, 6));
    CHECK(exp.d[1] == Rational(-1, 8));
    CHECK(exp.d[2] == Rational(1, 12));
    REQUIRE(exp.mu.size() == 3);
    CHECK(exp.mu[0] == Rational(-5, 2));
    CHECK(exp.mu[1] == Rational(-3, 2));
    CHECK(exp.mu[2] == Rational(-1, 2));
    for (bool ok : exp.factor_ode_exact) CHECK(ok);

    CHECK(separation_expansion(3, 3).all_ok());
    CHECK(separation_expansion(1, 0).all_ok());
    CHECK_THROWS_AS((void)separation_expansion(2, -1), precondition_error);
    CHECK_THROWS_AS((void)separation_expansion(2, 3), precondition_error);
}

TEST_CASE("single-variable equation residuals") {
    // Exact solution at mu = m with the matched coefficient quadruple.
    auto coeffs = [](long m, const Rational& a) {
        return std::array<Scalar, 4>{
            Scalar(Rational(m)), Scalar(Rational(m * (m + 1)) + a),
            Scalar(Rational(2) * a * Rational(m + 1)), Scalar(a * a)};
    };
    const std::vector<std::pair<long, Rational>> cases = {
        {0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)},
        {1, Rational(1)}, {2, Rational(1, 2)},
    };
    for (const auto& [m, a] : cases) {
        CAPTURE(m);
        CAPTURE(render_rational(a));
        auto [h3, h2, c1, c0] = coeffs(m, a);
        CHECK(whittaker_residual(Rational(m), a, h3, h2, c1, c0).is_zero());
        // Each coefficient perturbation independently breaks exactness.
        CHECK(!whittaker_residual(Rational(m), a, h3, h2 + Scalar(1), c1, c0).is_zero());
        CHECK(!whittaker_residual(Rational(m), a, h3, h2, c1 + Scalar(1), c0).is_zero());
        CHECK(!whittaker_residual(Rational(m), a, h3, h2, c1, c0 + Scalar(1)).is_zero());
        CHECK(!whittaker_residual(Rational(m), a, h3 + Scalar(1), h2, c1, c0).is_zero());
    }

    // The h2 perturbation shifts the residual by exactly -1/z^2.
    auto [h3, h2, c1, c0] = coeffs(2, Rational(1, 2));
    RationalExpr shifted = whittaker_residual(Rational(2), Rational(1, 2), h3,
                                              h2 + Scalar(1), c1, c0);
    RationalExpr expect(LaurentPoly::monomial({-2, 0, 0, 0}, Scalar(-1)));
    CHECK(shifted.equals(expect));

    // An explicit polynomial prefactor solves the equation only on the
    // quantized ray: R = z^{-J} L_{J-m}^{(-2J-1)}(z) works iff m = J.
    CHECK(quantized_factor_residual(2, 2, Rational(1)).is_zero());
    CHECK(!quantized_factor_residual(2, 1, Rational(1)).is_zero());
    CHECK(!quantized_factor_residual(2, 0, Rational(0)).is_zero());
    CHECK(quantized_factor_residual(1, 1, Rational(1, 2)).is_zero());
    CHECK(quantized_factor_residual(3, 3, Rational(0)).is_zero());
}

TEST_CASE("quantization of casimir pairs") {
    auto rep = quantization_condition(Rational(9, 4), Rational(15));
    CHECK(rep.status == QuantizationStatus::Quantized);
    REQUIRE(rep.J.has_value());
    CHECK(*rep.J == 4);
    REQUIRE(rep.a.has_value());
    CHECK(*rep.a == Rational(3, 2));
    CHECK(!rep.describe().empty());

    auto rep2 = quantization_condition(Rational(4), Rational(8));
    CHECK(rep2.status == QuantizationStatus::Quantized);
    CHECK(*rep2.J == 1);
    CHECK(*rep2.a == Rational(2));

    // The negative root can be the one that works.
    auto neg = quantization_condition(Rational(1), Rational(-2));
    CHECK(neg.status == QuantizationStatus::Quantized);
    CHECK(*neg.J == 0);
    CHECK(*neg.a == Rational(-1));

    CHECK(quantization_condition(Rational(1), Rational(3)).status ==
          QuantizationStatus::NonIntegerJ);
    CHECK(quantization_condition(Rational(2), Rational(1)).status ==
          QuantizationStatus::IrrationalRoot);
    CHECK(quantization_condition(Rational(1), Rational(0)).status ==
          QuantizationStatus::NegativeJ);
    CHECK(quantization_condition(Rational(0), Rational(5)).status ==
          QuantizationStatus::DegenerateC0);

    // Twenty constructed pairs are all recovered exactly.
    const std::vector<Rational> as = {Rational(1), Rational(2), Rational(3, 2),
                                      Rational(-5, 3), Rational(7, 4)};
    for (const auto& a : as) {
        for (long J = 0; J <= 3; ++J) {
            CAPTURE(render_rational(a));
            CAPTURE(J);
            Rational c0 = a * a;
            Rational c1 = Rational(2) * a * Rational(J + 1);
            auto r = quantization_condition(c0, c1);
            CHECK(r.status == QuantizationStatus::Quantized);
            REQUIRE(r.J.has_value());
            CHECK(*r.J == J);
            REQUIRE(r.a.has_value());
            CHECK(*r.a == a);
        }
    }
}
