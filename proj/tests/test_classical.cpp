#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "llsep/errors.hpp"
#include "llsep/phase_map.hpp"

#include <complex>
#include <vector>

using namespace llsep;

namespace {

const std::vector<std::pair<Rational, Rational>>& casimir_samples() {
    static const std::vector<std::pair<Rational, Rational>> samples = {
        {Rational(0), Rational(0)},   {Rational(1), Rational(0)},
        {Rational(0), Rational(1)},   {Rational(1), Rational(2)},
        {Rational(9, 4), Rational(15)}, {Rational(4), Rational(-6)},
        {Rational(1, 3), Rational(-2, 7)},
    };
    return samples;
}

std::array<std::complex<double>, 3> eval3(const std::array<RationalExpr, 3>& comp,
                                          const std::array<std::complex<double>, 4>& pt) {
    return {comp[0].eval_complex(pt), comp[1].eval_complex(pt), comp[2].eval_complex(pt)};
}

}  // namespace

TEST_CASE("orbit parameter construction") {
    OrbitParams c = OrbitParams::classical(Scalar(Rational(9, 4)), Scalar(15));
    CHECK(c.c0 == Scalar(Rational(9, 4)));
    CHECK(!c.a.has_value());

    OrbitParams q = OrbitParams::quantized(Rational(3, 2), 4);
    CHECK(q.c0 == Scalar(Rational(9, 4)));
    CHECK(q.c1 == Scalar(15));
    REQUIRE(q.a.has_value());
    CHECK(*q.a == Rational(3, 2));
    REQUIRE(q.J.has_value());
    CHECK(*q.J == 4);

    OrbitParams q0 = OrbitParams::quantized(Rational(0), 2);
    CHECK(q0.c0 == Scalar(0));
    CHECK(q0.c1 == Scalar(0));

    CHECK_THROWS_AS((void)OrbitParams::quantized(Rational(1), -1), precondition_error);
}

TEST_CASE("canonical bracket basics") {
    RationalExpr z1 = RationalExpr::variable(Var::Z1);
    RationalExpr z2 = RationalExpr::variable(Var::Z2);
    RationalExpr w1 = RationalExpr::variable(Var::W1);
    CHECK(poisson_bracket(z1, w1).equals(RationalExpr(1)));
    CHECK(poisson_bracket(w1, z1).equals(RationalExpr(-1)));
    CHECK(poisson_bracket(z1, z2).is_zero());
    CHECK(poisson_bracket(z1, z1 * w1).equals(z1));
}

TEST_CASE("rotation-algebra brackets hold on every sample orbit") {
    for (const auto& [c0, c1] : casimir_samples()) {
        CAPTURE(render_rational(c0));
        CAPTURE(render_rational(c1));
        PhaseMap map = build_phase_map(OrbitParams::classical(Scalar(c0), Scalar(c1)));
        BracketReport rep = verify_e3_brackets(map);
        CHECK(rep.all_ok());
        CHECK(rep.sigma == 1);
        CHECK(rep.sign_determined);
        CHECK(rep.residuals.size() == 15);
        for (const auto& r : rep.residuals) {
            CAPTURE(r.name);
            CHECK(r.ok);
            CHECK(r.residual.is_zero());
        }
    }
}

TEST_CASE("orbit constants and spectral-coefficient identities") {
    for (const auto& [c0, c1] : casimir_samples()) {
        CAPTURE(render_rational(c0));
        CAPTURE(render_rational(c1));
        PhaseMap map = build_phase_map(OrbitParams::classical(Scalar(c0), Scalar(c1)));
        HamiltonianReport rep = orbit_and_hamiltonians(map);
        CHECK(rep.all_ok());
        CHECK(rep.h0_is_c0);
        CHECK(rep.h1_is_c1);
        for (bool ok : rep.lax_coeff_ok) CHECK(ok);
        // The cubic coefficient is the third rotation component itself and
        // the quartic one is the constant 1/4.
        CHECK(rep.h3.equals(map.L[2]));
        auto quartic = rep.lax_coeff[4].as_constant();
        REQUIRE(quartic.has_value());
        CHECK(*quartic == Scalar(Rational(1, 4)));
        // Constant and linear coefficients reproduce the Casimir levels.
        CHECK(rep.lax_coeff[0].equals(RationalExpr(Scalar(c0))));
        CHECK(rep.lax_coeff[1].equals(RationalExpr(Scalar(c1))));
    }
}

TEST_CASE("lax matrix structure") {
    PhaseMap map = build_phase_map(OrbitParams::classical(Scalar(1), Scalar(2)));
    LaxPolynomials lax = build_lax(map);
    CHECK(lax.mu1.size() == 2);
    CHECK(lax.mu2.size() == 2);
    CHECK(lax.mu3.size() == 3);
    CHECK(lax.mu1[0].equals(map.p[0]));
    CHECK(lax.mu1[1].equals(map.L[0]));
    CHECK(lax.mu3[2].equals(RationalExpr(Scalar(Rational(1, 2)))));
}

TEST_CASE("separation identities") {
    for (const auto& [c0, c1] : casimir_samples()) {
        PhaseMap map = build_phase_map(OrbitParams::classical(Scalar(c0), Scalar(c1)));
        SeparationIdentityReport rep = verify_separation_identities(map);
        CHECK(rep.quadratic_coeffs_ok);
        CHECK(rep.w_reconstruction_ok);
    }
}

TEST_CASE("spectral curve residual") {
    OrbitParams trivial = OrbitParams::classical(Scalar(0), Scalar(0));
    // w = i/2 solves the curve at every z when all lower coefficients vanish.
    CHECK(spectral_curve_residual(Scalar(1), Scalar::i() * Scalar(Rational(1, 2)), trivial,
                                  Scalar(0), Scalar(0))
              .is_zero());
    CHECK(spectral_curve_residual(Scalar(7), Scalar::i() * Scalar(Rational(1, 2)), trivial,
                                  Scalar(0), Scalar(0))
              .is_zero());

    // Generic point evaluates the defining polynomial.
    OrbitParams orb = OrbitParams::classical(Scalar(1), Scalar(0));
    CHECK(spectral_curve_residual(Scalar(1), Scalar(0), orb, Scalar(0), Scalar(0)) ==
          Scalar(Rational(5, 4)));

    CHECK_THROWS_AS(
        (void)spectral_curve_residual(Scalar(0), Scalar(1), trivial, Scalar(0), Scalar(0)),
        precondition_error);
}

TEST_CASE("separation round trip recovers the phase point") {
    PhaseMap map = build_phase_map(OrbitParams::classical(Scalar(1), Scalar(2)));
    // Forward-evaluate the phase map at a generic exact separation point,
    // then reconstruct the separation pair from (p, L) alone.
    std::array<std::complex<double>, 4> pt{
        {{1.0, 0.0}, {2.0, 0.0}, {1.0 / 3.0, 0.0}, {0.2, 0.0}}};
    auto p_val = eval3(map.p, pt);
    auto L_val = eval3(map.L, pt);

    RoundTrip rt = separation_roundtrip(map, p_val, L_val);
    CHECK(rt.max_rel_error < 1e-12);
    // Roots are reported in a deterministic order; both inputs appear.
    double found1 = std::min(std::abs(rt.z[0] - pt[0]), std::abs(rt.z[1] - pt[0]));
    double found2 = std::min(std::abs(rt.z[0] - pt[1]), std::abs(rt.z[1] - pt[1]));
    CHECK(found1 < 1e-9);
    CHECK(found2 < 1e-9);
}

TEST_CASE("degenerate separation roots are rejected") {
    PhaseMap map = build_phase_map(OrbitParams::classical(Scalar(1), Scalar(2)));
    // p = (-i/2, 1, 1/2), L = (0, 1, 0) satisfies p.p = 1 and 2(p,L) = 2
    // exactly, yet the separation quadratic degenerates to (i/2) z^2 with a
    // double root at the excluded point z = 0.
    std::array<std::complex<double>, 3> p_val{
        {{0.0, -0.5}, {1.0, 0.0}, {0.5, 0.0}}};
    std::array<std::complex<double>, 3> L_val{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}};
    CHECK_THROWS_AS((void)separation_roundtrip(map, p_val, L_val), degenerate_roots);

    // A point that violates the orbit equations is a precondition error.
    std::array<std::complex<double>, 3> off{{{5.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
    CHECK_THROWS_AS((void)separation_roundtrip(map, off, L_val), precondition_error);
}
