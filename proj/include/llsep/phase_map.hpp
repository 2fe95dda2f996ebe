#pragma once
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "llsep/rational_expr.hpp"

namespace llsep {

// Coadjoint-orbit data. c0 and c1 fix the two Casimir levels; a quantized
// orbit additionally carries (a, J) with c0 = a^2 and c1 = 2a(J+1).
struct OrbitParams {
    Scalar c0{0};
    Scalar c1{0};
    std::optional<Rational> a;
    std::optional<long> J;

    static OrbitParams classical(const Scalar& c0, const Scalar& c1) { return {c0, c1, {}, {}}; }
    // Throws precondition_error unless c0 = a^2, c1 = 2a(J+1), J >= 0.
    static OrbitParams quantized(const Rational& a, long J);
};

// The six dynamic variables as exact rational expressions in (z1,z2,w1,w2)
// with the orbit parameters bound.
struct PhaseMap {
    OrbitParams orbit;
    std::array<RationalExpr, 3> p;
    std::array<RationalExpr, 3> L;
};

PhaseMap build_phase_map(const OrbitParams& orbit);

// {f,g} = sum_k (df/dz_k dg/dw_k - df/dw_k dg/dz_k), exact.
RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g);

struct BracketResidual {
    std::string name;      // e.g. "{p1,L2} - sigma*p3"
    RationalExpr residual;
    bool ok;
};

struct BracketReport {
    int sigma = +1;               // global orientation fixed on {L1,L2}
    bool sign_determined = true;  // false: mismatch beyond a global sign
    std::vector<BracketResidual> residuals;  // all 15 brackets
    bool all_ok() const;
};

// Check all 15 brackets among {p1,p2,p3,L1,L2,L3} against
// {p_k,p_l} = 0, {p_k,L_l} = sigma*eps_klj p_j, {L_k,L_l} = sigma*eps_klj L_j.
BracketReport verify_e3_brackets(const PhaseMap& map);

// Lax entries as polynomials in the spectral parameter:
// mu1 = p1 + L1 z, mu2 = p2 + L2 z, mu3 = p3 + L3 z + z^2/2.
struct LaxPolynomials {
    std::vector<RationalExpr> mu1, mu2, mu3;  // ascending powers of z
};
LaxPolynomials build_lax(const PhaseMap& map);

struct HamiltonianReport {
    RationalExpr h0, h1, h2, h3;   // p.p, 2(p,L), L.L + p3, L3
    bool h0_is_c0, h1_is_c1;
    // Coefficients of mu.mu(z) = mu1^2 + mu2^2 + mu3^2, ascending in z,
    // checked against c0 + c1 z + h2 z^2 + h3 z^3 + z^4/4.
    std::array<RationalExpr, 5> lax_coeff;
    std::array<bool, 5> lax_coeff_ok;
    bool all_ok() const;
};
HamiltonianReport orbit_and_hamiltonians(const PhaseMap& map);

// Exact separation identities:
//   mu1 + i mu3 = (i/2)(z - z1)(z - z2)   (as coefficients in z)
//   i mu2(z_k) / z_k^2 = w_k
struct SeparationIdentityReport {
    bool quadratic_coeffs_ok;  // both nontrivial coefficients of mu1 + i mu3
    bool w_reconstruction_ok;  // k = 1 and, by symmetry, k = 2
};
SeparationIdentityReport verify_separation_identities(const PhaseMap& map);

// Residual z^4 w^2 + (z^4/4 + h3 z^3 + h2 z^2 + c1 z + c0), which vanishes
// exactly when (z,w) is a separation pair of a phase point (then
// mu2(z_k)^2 = P(z_k) and w_k = i mu2(z_k)/z_k^2). Throws precondition_error
// at z = 0.
Scalar spectral_curve_residual(const Scalar& z, const Scalar& w, const OrbitParams& orbit,
                               const Scalar& h2, const Scalar& h3);

// Numeric round trip (p,L) -> (z,w) -> (p,L).
struct RoundTrip {
    std::array<std::complex<double>, 2> z;
    std::array<std::complex<double>, 2> w;
    double max_rel_error;  // against the input (p,L) after mapping back
};
// pre: the point satisfies the orbit equations to 1e-10; throws
// degenerate_roots when the separation roots collide or vanish.
RoundTrip separation_roundtrip(const PhaseMap& map,
                               const std::array<std::complex<double>, 3>& p_val,
                               const std::array<std::complex<double>, 3>& L_val);

} // namespace llsep
