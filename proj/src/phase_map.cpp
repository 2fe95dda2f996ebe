#include "llsep/phase_map.hpp"

#include <cmath>

#include "llsep/errors.hpp"

namespace llsep {

namespace {

int levi_civita(int k, int l, int j) {
    if (k == l || l == j || k == j) return 0;
    // parity of the permutation (k,l,j) of (0,1,2)
    return ((l - k + 3) % 3 == 1) ? +1 : -1;
}

RationalExpr var(Var v) { return RationalExpr::variable(v); }

} // namespace

OrbitParams OrbitParams::quantized(const Rational& a, long J) {
    if (J < 0) throw precondition_error("quantized orbit requires integer J >= 0");
    OrbitParams o;
    o.a = a;
    o.J = J;
    o.c0 = Scalar(a * a);
    o.c1 = Scalar(2 * a * Rational(J + 1));
    return o;
}

PhaseMap build_phase_map(const OrbitParams& orbit) {
    const RationalExpr z1 = var(Z1), z2 = var(Z2), w1 = var(W1), w2 = var(W2);
    const RationalExpr c0{orbit.c0}, c1{orbit.c1};
    const RationalExpr I{Scalar::i()};
    const RationalExpr quarter{Scalar(Rational(1, 4))};

    const RationalExpr zz = z1 * z2;
    const RationalExpr diff = z1 - z2;
    const RationalExpr grad = z1 * w1 - z2 * w2;        // z1 w1 - z2 w2
    const RationalExpr gradsq = z1 * z1 * w1 * w1 - z2 * z2 * w2 * w2;
    const RationalExpr X = zz * grad * grad / (diff * diff);

    PhaseMap m;
    m.orbit = orbit;
    m.p[0] = I * (zz * quarter - c0 / zz - X);
    m.p[1] = I * zz * grad / diff;
    m.p[2] = zz * quarter + c0 / zz + X;
    m.L[0] = I * (-(z1 + z2) * quarter - c1 / zz - c0 * (z1 + z2) / (zz * zz) + gradsq / diff);
    m.L[1] = -I * (z1 * z1 * w1 - z2 * z2 * w2) / diff;
    m.L[2] = -(z1 + z2) * quarter + c1 / zz + c0 * (z1 + z2) / (zz * zz) - gradsq / diff;
    return m;
}

RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g) {
    return f.derivative(Z1) * g.derivative(W1) - f.derivative(W1) * g.derivative(Z1) +
           f.derivative(Z2) * g.derivative(W2) - f.derivative(W2) * g.derivative(Z2);
}

bool BracketReport::all_ok() const {
    if (!sign_determined) return false;
    for (const auto& r : residuals)
        if (!r.ok) return false;
    return true;
}

BracketReport verify_e3_brackets(const PhaseMap& map) {
    BracketReport rep;

    // Orientation: a uniform sign flip corresponds to w -> -w, so the single
    // global sign is fixed empirically on {L1,L2} = sigma*L3 and then frozen
    // for every other bracket.
    RationalExpr l12 = poisson_bracket(map.L[0], map.L[1]);
    if ((l12 - map.L[2]).is_zero()) {
        rep.sigma = +1;
    } else if ((l12 + map.L[2]).is_zero()) {
        rep.sigma = -1;
    } else {
        rep.sigma = +1;
        rep.sign_determined = false;
    }
    const Scalar sig(rep.sigma);

    auto record = [&](const std::string& name, const RationalExpr& residual) {
        rep.residuals.push_back({name, residual, residual.is_zero()});
    };

    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l)
            record("{p" + std::to_string(k + 1) + ",p" + std::to_string(l + 1) + "}",
                   poisson_bracket(map.p[k], map.p[l]));

    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l) {
            RationalExpr expect(0);
            for (int j = 0; j < 3; ++j)
                if (int e = levi_civita(k, l, j))
                    expect += RationalExpr(Scalar(e) * sig) * map.L[j];
            record("{L" + std::to_string(k + 1) + ",L" + std::to_string(l + 1) +
                       "} - sigma*eps*L",
                   poisson_bracket(map.L[k], map.L[l]) - expect);
        }

    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            RationalExpr expect(0);
            for (int j = 0; j < 3; ++j)
                if (int e = levi_civita(k, l, j))
                    expect += RationalExpr(Scalar(e) * sig) * map.p[j];
            record("{p" + std::to_string(k + 1) + ",L" + std::to_string(l + 1) +
                       "} - sigma*eps*p",
                   poisson_bracket(map.p[k], map.L[l]) - expect);
        }

    return rep;
}

LaxPolynomials build_lax(const PhaseMap& map) {
    LaxPolynomials lax;
    lax.mu1 = {map.p[0], map.L[0]};
    lax.mu2 = {map.p[1], map.L[1]};
    lax.mu3 = {map.p[2], map.L[2], RationalExpr(Scalar(Rational(1, 2)))};
    return lax;
}

HamiltonianReport orbit_and_hamiltonians(const PhaseMap& map) {
    HamiltonianReport rep;
    rep.h0 = map.p[0] * map.p[0] + map.p[1] * map.p[1] + map.p[2] * map.p[2];
    RationalExpr pL = map.p[0] * map.L[0] + map.p[1] * map.L[1] + map.p[2] * map.L[2];
    rep.h1 = RationalExpr(2) * pL;
    rep.h2 = map.L[0] * map.L[0] + map.L[1] * map.L[1] + map.L[2] * map.L[2] + map.p[2];
    rep.h3 = map.L[2];

    rep.h0_is_c0 = (rep.h0 - RationalExpr(map.orbit.c0)).is_zero();
    rep.h1_is_c1 = (rep.h1 - RationalExpr(map.orbit.c1)).is_zero();

    // mu.mu(z), coefficient by coefficient in the spectral parameter.
    LaxPolynomials lax = build_lax(map);
    auto accum = [&](const std::vector<RationalExpr>& mu) {
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (std::size_t j = 0; j < mu.size(); ++j) rep.lax_coeff[i + j] += mu[i] * mu[j];
    };
    for (auto& c : rep.lax_coeff) c = RationalExpr(0);
    accum(lax.mu1);
    accum(lax.mu2);
    accum(lax.mu3);

    const RationalExpr targets[5] = {RationalExpr(map.orbit.c0), RationalExpr(map.orbit.c1),
                                     rep.h2, rep.h3, RationalExpr(Scalar(Rational(1, 4)))};
    for (int k = 0; k < 5; ++k) rep.lax_coeff_ok[k] = (rep.lax_coeff[k] - targets[k]).is_zero();
    return rep;
}

bool HamiltonianReport::all_ok() const {
    if (!h0_is_c0 || !h1_is_c1) return false;
    for (bool ok : lax_coeff_ok)
        if (!ok) return false;
    return true;
}

SeparationIdentityReport verify_separation_identities(const PhaseMap& map) {
    const RationalExpr z1 = var(Z1), z2 = var(Z2);
    const RationalExpr I{Scalar::i()};
    const RationalExpr half{Scalar(Rational(1, 2))};

    // mu1 + i mu3 = (i/2) z^2 - (i/2)(z1+z2) z + (i/2) z1 z2
    RationalExpr lin = map.L[0] + I * map.L[2];   // coefficient of z
    RationalExpr cst = map.p[0] + I * map.p[2];   // constant coefficient
    bool quad_ok = (lin + I * half * (z1 + z2)).is_zero() && (cst - I * half * z1 * z2).is_zero();

    // w_k = i mu2(z_k) / z_k^2, checked exactly for both k.
    RationalExpr w1rec = I * (map.p[1] + map.L[1] * z1) / (z1 * z1);
    RationalExpr w2rec = I * (map.p[1] + map.L[1] * z2) / (z2 * z2);
    bool w_ok = (w1rec - var(W1)).is_zero() && (w2rec - var(W2)).is_zero();

    return {quad_ok, w_ok};
}

Scalar spectral_curve_residual(const Scalar& z, const Scalar& w, const OrbitParams& orbit,
                               const Scalar& h2, const Scalar& h3) {
    if (z.is_zero()) throw precondition_error("spectral_curve_residual requires z != 0");
    Scalar z2 = z * z;
    Scalar z3 = z2 * z;
    Scalar z4 = z2 * z2;
    Scalar P = z4 * Scalar(Rational(1, 4)) + h3 * z3 + h2 * z2 + orbit.c1 * z + orbit.c0;
    return z4 * w * w + P;
}

RoundTrip separation_roundtrip(const PhaseMap& map,
                               const std::array<std::complex<double>, 3>& p_val,
                               const std::array<std::complex<double>, 3>& L_val) {
    using C = std::complex<double>;
    constexpr double kOrbitTol = 1e-10;
    constexpr double kDegenerate = 1e-8;

    C pp = p_val[0] * p_val[0] + p_val[1] * p_val[1] + p_val[2] * p_val[2];
    C pL = p_val[0] * L_val[0] + p_val[1] * L_val[1] + p_val[2] * L_val[2];
    C c0 = map.orbit.c0.to_complex();
    C c1 = map.orbit.c1.to_complex();
    if (std::abs(pp - c0) > kOrbitTol || std::abs(2.0 * pL - c1) > kOrbitTol)
        throw precondition_error("(p,L) point violates the orbit equations");

    // Roots of mu1 + i mu3 = (i/2) z^2 + (L1 + i L3) z + (p1 + i p3).
    const C I(0.0, 1.0);
    C A = I * 0.5;
    C B = L_val[0] + I * L_val[2];
    C Cc = p_val[0] + I * p_val[2];
    C disc = std::sqrt(B * B - 4.0 * A * Cc);
    C r1 = (-B + disc) / (2.0 * A);
    C r2 = (-B - disc) / (2.0 * A);
    // Lexicographic labeling by (real, imaginary); everything downstream is
    // symmetric under the pair swap.
    if (r2.real() < r1.real() || (r2.real() == r1.real() && r2.imag() < r1.imag()))
        std::swap(r1, r2);

    if (std::abs(r1 - r2) < kDegenerate || std::abs(r1) < kDegenerate ||
        std::abs(r2) < kDegenerate)
        throw degenerate_roots("separation roots collide or vanish");

    auto wk = [&](C z) { return I * (p_val[1] + L_val[1] * z) / (z * z); };
    RoundTrip rt;
    rt.z = {r1, r2};
    rt.w = {wk(r1), wk(r2)};

    std::array<C, kNumVars> pt{rt.z[0], rt.z[1], rt.w[0], rt.w[1]};
    double err = 0.0;
    for (int k = 0; k < 3; ++k) {
        C pv = map.p[k].eval_complex(pt);
        C Lv = map.L[k].eval_complex(pt);
        err = std::max(err, std::abs(pv - p_val[k]) / std::max(1.0, std::abs(p_val[k])));
        err = std::max(err, std::abs(Lv - L_val[k]) / std::max(1.0, std::abs(L_val[k])));
    }
    rt.max_rel_error = err;
    return rt;
}

} // namespace llsep
