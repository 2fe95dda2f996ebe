// Compares the serial reference implementations of the two heavy numeric
// kernels with their OpenMP variants: the 2D quadrature (rows distributed
// across threads, fixed-order reduction) and the flow batch (states
// distributed across threads). Parallel results must match the serial ones
// bitwise; timings are informational.
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstring>

#include "llsep/numeric_flow.hpp"
#include "llsep/phase_map.hpp"
#include "llsep/quadrature.hpp"

using namespace llsep;
using Clock = std::chrono::steady_clock;

namespace {

double ms(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

bool bits_equal(std::complex<double> x, std::complex<double> y) {
    return std::memcmp(&x, &y, sizeof x) == 0;
}

} // namespace

int main() {
    int exit_code = 0;

    {
        QuadratureSpec spec;
        spec.epsilon = 2.5e-4;
        spec.R = 40.0;
        spec.nodes = 2048;
        spec.J = 3;
        spec.m = 3;
        spec.n = 3;

        auto t0 = Clock::now();
        auto serial = inner_product_value(spec, false);
        auto t1 = Clock::now();
        auto parallel = inner_product_value(spec, true);
        auto t2 = Clock::now();

        const double ts = ms(t0, t1), tp = ms(t1, t2);
        const bool same = bits_equal(serial, parallel);
        std::printf("quadrature J=3 diagonal, %d+ nodes/axis:\n", spec.nodes);
        std::printf("  serial   %8.1f ms\n", ts);
        std::printf("  parallel %8.1f ms  (speedup %.2fx)\n", tp, ts / tp);
        std::printf("  bitwise identical: %s\n", same ? "yes" : "NO");
        if (!same) exit_code = 1;
    }

    {
        auto map = build_phase_map(
            OrbitParams::classical(Scalar(1), Scalar(Rational(-15, 4))));
        auto ham = orbit_and_hamiltonians(map);
        std::array<RationalExpr, 4> obs{ham.h0, ham.h1, ham.h2, ham.h3};
        auto sys = FlowSystem::from_hamiltonian(ham.h2, obs);
        auto states = sample_initial_states(32, 20240817u, 1.0, -3.75);

        auto t0 = Clock::now();
        auto serial = integrate_batch(sys, states, 1.0, 1e-3, false);
        auto t1 = Clock::now();
        auto parallel = integrate_batch(sys, states, 1.0, 1e-3, true);
        auto t2 = Clock::now();

        const double ts = ms(t0, t1), tp = ms(t1, t2);
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i) {
            same = serial[i].steps == parallel[i].steps &&
                   serial[i].trajectory.size() == parallel[i].trajectory.size();
            for (std::size_t k = 0; same && k < serial[i].trajectory.size(); ++k)
                for (int v = 0; v < kNumVars; ++v)
                    same = same && bits_equal(serial[i].trajectory[k].y[v],
                                              parallel[i].trajectory[k].y[v]);
        }
        std::printf("flow batch, 32 states x 1000 steps:\n");
        std::printf("  serial   %8.1f ms\n", ts);
        std::printf("  parallel %8.1f ms  (speedup %.2fx)\n", tp, ts / tp);
        std::printf("  bitwise identical: %s\n", same ? "yes" : "NO");
        if (!same) exit_code = 1;
    }

    return exit_code;
}
