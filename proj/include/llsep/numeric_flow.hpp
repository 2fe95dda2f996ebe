#pragma once
#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "llsep/phase_map.hpp"

namespace llsep {

// Flat compiled form of a rational expression for fast repeated complex
// evaluation (term lists with integer exponents; no symbolic work at
// evaluation time).
class CompiledRat {
public:
    CompiledRat() = default;
    explicit CompiledRat(const RationalExpr& e);

    // Throws near_pole when |denominator| < pole_eps.
    std::complex<double> eval(const std::array<std::complex<double>, kNumVars>& point,
                              double pole_eps = 1e-12) const;

private:
    struct Term {
        std::array<int, kNumVars> e;
        std::complex<double> c;
    };
    std::vector<Term> num_, den_;
};

using FlowState = std::array<std::complex<double>, kNumVars>;  // (z1, z2, w1, w2)

// Hamiltonian vector field dz_k/dt = dH/dw_k, dw_k/dt = -dH/dz_k with the
// gradients computed exactly and only then compiled, plus the four conserved
// observers h0..h3.
struct FlowSystem {
    std::array<CompiledRat, 4> rhs;
    CompiledRat ham;
    std::array<CompiledRat, 4> observer;  // h0, h1, h2, h3

    static FlowSystem from_hamiltonian(const RationalExpr& H,
                                       const std::array<RationalExpr, 4>& observers);
};

struct TrajectoryPoint {
    double t;
    FlowState y;
    std::array<std::complex<double>, 4> h;
};

struct ConservationReport {
    std::array<double, 4> max_rel_drift{};  // per observer, relative to t = 0
    double worst() const;
};

struct FlowRun {
    std::vector<TrajectoryPoint> trajectory;  // every sample_every-th step + endpoints
    ConservationReport conservation;
    bool completed{false};  // false: stopped near the singular set
    double t_reached{0};
    std::size_t steps{0};
};

// Fixed-step RK4. The singular set (z1 = z2, z_k = 0, or a blown-up state)
// is monitored every step; an approach aborts the run, which is returned as
// a partial report with completed = false.
FlowRun integrate_flow(const FlowSystem& sys, const FlowState& initial, double t_end,
                       double dt, std::size_t sample_every = 10);

// A batch of independent runs; `parallel` distributes states across threads.
// Per-state arithmetic is identical either way, so results match bitwise.
std::vector<FlowRun> integrate_batch(const FlowSystem& sys,
                                     const std::vector<FlowState>& initials, double t_end,
                                     double dt, bool parallel);

// sup-norm distance between flowing tau under A then B and B then A.
double flow_commutativity(const FlowSystem& A, const FlowSystem& B, const FlowState& x,
                          double tau, double dt);

// Deterministic complex initial states built on real invariant curves whose
// quartic has four separated real roots for the given (c0, c1), so the
// underlying real motion is confined to two disjoint bands away from the
// singular set; small imaginary perturbations are then added. Falls back to
// plain boxes when no such curve is found (portable generator: raw 32-bit
// draws scaled by 2^-32).
std::vector<FlowState> sample_initial_states(std::size_t count, std::uint32_t seed, double c0,
                                             double c1);

struct OrderTest {
    std::array<double, 3> drift;  // at dt, dt/2, dt/4
    double ratio_coarse;          // drift[0]/drift[1], ~16 for 4th order
    double ratio_fine;            // drift[1]/drift[2]
};

// Conservation drift of the nontrivial observers (h2, h3) across three step
// sizes; the drift of the identically-constant h0, h1 is pure roundoff and
// is excluded from the ratio.
OrderTest convergence_order(const FlowSystem& sys, const FlowState& initial, double t_end,
                            double dt0);

// Max |exact gradient - centered difference| of the Hamiltonian over the
// four variables at one point.
double fd_gradient_check(const FlowSystem& sys, const FlowState& point, double step = 1e-5);

// Columns: t, re/im of z1, z2, w1, w2, re/im of h0..h3.
void write_trajectory_csv(std::ostream& os, const FlowRun& run);

} // namespace llsep
