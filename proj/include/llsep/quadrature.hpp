#pragma once
#include <complex>
#include <vector>

#include "llsep/numeric_flow.hpp"
#include "llsep/scalar.hpp"

namespace llsep {

// Two-dimensional inner-product integral
//   I(eps) = int_[eps,R]^2 conj(pref_m) pref_n (z1 z2)^(J-1) e^-(z1+z2) dz1 dz2
// where pref_k is the polynomial part of the closed-form level-k vector; the
// exponential-singularity factors of the wavefunctions cancel against the
// generic weight, so the same integrand serves every a.
struct QuadratureSpec {
    double epsilon{1e-3};
    double R{40.0};
    int nodes{512};  // minimum Gauss-Legendre nodes per axis
    long J{1}, m{1}, n{1};
    Rational a{0};
};

// One integral value; composite 16-point Gauss-Legendre panels placed in log
// space (the integrand spans many decades near the lower cutoff). `parallel`
// distributes rows across threads; row partials are reduced in fixed order,
// so the result is bitwise identical to the serial one.
std::complex<double> inner_product_value(const QuadratureSpec& spec, bool parallel = false);

struct ProbeReport {
    std::vector<double> eps_ladder;             // descending
    std::vector<std::complex<double>> values;   // I(eps) per rung
    double slope{0};        // log-log fit of |I| vs eps over the last rungs
    int fit_points{0};
    bool monotone{true};    // |I| moves one way along the ladder
    bool log_flagged{false};  // grows, and a quadratic in log(1/eps) explains the
                              // values far better than any power law
};

// Repeat the integral along a geometric epsilon ladder and fit the
// divergence exponent. For the diagonal entry at a = 0 the integrand behaves
// as (z1 z2)^(-J-1) e^-(z1+z2) near the origin, so the expected slope is -2J
// in the two-dimensional value, i.e. -J per axis.
ProbeReport inner_product_probe(long J, long m, long n, const Rational& a,
                                const std::vector<double>& eps_ladder, double R = 40.0,
                                int nodes = 512, bool parallel = false);

// Per-axis exponent reading of a two-dimensional slope.
inline double per_axis_exponent(double slope2d) { return slope2d / 2.0; }

} // namespace llsep
