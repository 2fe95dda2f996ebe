#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "llsep/errors.hpp"
#include "llsep/numeric_flow.hpp"
#include "llsep/quadrature.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

using namespace llsep;

namespace {

PhaseMap default_map() {
    return build_phase_map(
        OrbitParams::classical(Scalar(1), Scalar(Rational(-15, 4))));
}

std::array<RationalExpr, 4> observers(const PhaseMap& map) {
    HamiltonianReport rep = orbit_and_hamiltonians(map);
    return {rep.h0, rep.h1, rep.h2, rep.h3};
}

FlowSystem h3_system(const PhaseMap& map) {
    HamiltonianReport rep = orbit_and_hamiltonians(map);
    return FlowSystem::from_hamiltonian(rep.h3, observers(map));
}

FlowSystem h2_system(const PhaseMap& map) {
    HamiltonianReport rep = orbit_and_hamiltonians(map);
    return FlowSystem::from_hamiltonian(rep.h2, observers(map));
}

}  // namespace

TEST_CASE("compiled expressions match symbolic evaluation") {
    PhaseMap map = default_map();
    std::array<std::complex<double>, kNumVars> pt{
        {{0.9, 0.05}, {2.7, -0.1}, {0.3, 0.02}, {-0.2, 0.01}}};
    for (int k = 0; k < 3; ++k) {
        CompiledRat cp(map.p[k]);
        CompiledRat cL(map.L[k]);
        CHECK(std::abs(cp.eval(pt) - map.p[k].eval_complex(pt)) < 1e-13);
        CHECK(std::abs(cL.eval(pt) - map.L[k].eval_complex(pt)) < 1e-13);
    }

    // The pole guard carries over to the compiled form.
    RationalExpr f(LaurentPoly(1),
                   LaurentPoly::variable(Var::Z1) - LaurentPoly::variable(Var::Z2));
    CompiledRat cf(f);
    std::array<std::complex<double>, kNumVars> close{
        {{1.0, 0.0}, {1.0 + 1e-14, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
    CHECK_THROWS_AS((void)cf.eval(close), near_pole);
}

TEST_CASE("exact gradients agree with finite differences") {
    PhaseMap map = default_map();
    FlowSystem sys = h2_system(map);
    auto states = sample_initial_states(3, 20240817u, 1.0, -3.75);
    REQUIRE(states.size() == 3);
    for (const auto& s : states) {
        CHECK(fd_gradient_check(sys, s) < 1e-6);
    }
}

TEST_CASE("deterministic initial-state sampling") {
    auto a = sample_initial_states(10, 20240817u, 1.0, -3.75);
    auto b = sample_initial_states(10, 20240817u, 1.0, -3.75);
    REQUIRE(a.size() == 10);
    CHECK(a == b);

    auto c = sample_initial_states(10, 7u, 1.0, -3.75);
    CHECK(a != c);

    for (const auto& s : a) {
        CHECK(std::abs(s[0] - s[1]) > 0.5);
        CHECK(std::abs(s[0]) > 0.3);
        CHECK(std::abs(s[1]) > 0.3);
        CHECK(std::abs(s[0].imag()) < 0.05);
        CHECK(std::abs(s[2].imag()) < 0.05);
    }

    CHECK(sample_initial_states(1, 1u, 0.0, 0.0).size() == 1);
}

TEST_CASE("conservation along both nontrivial flows") {
    PhaseMap map = default_map();
    FlowSystem f3 = h3_system(map);
    FlowSystem f2 = h2_system(map);
    auto states = sample_initial_states(10, 20240817u, 1.0, -3.75);

    for (const auto& sys : {&f3, &f2}) {
        for (const auto& s : states) {
            FlowRun run = integrate_flow(*sys, s, 1.0, 1e-3);
            CHECK(run.completed);
            CHECK(run.steps == 1000);
            CHECK(run.t_reached == doctest::Approx(1.0));
            CHECK(run.conservation.worst() <= 1e-8);
            // 1 initial point + every 10th step.
            CHECK(run.trajectory.size() == 101);
        }
    }

    // The generator of its own flow is conserved to roundoff.
    FlowRun self = integrate_flow(f3, states[0], 1.0, 1e-3);
    CHECK(self.conservation.max_rel_drift[3] <= 1e-12);
}

TEST_CASE("integration near the singular set aborts cleanly") {
    PhaseMap map = default_map();
    FlowSystem sys = h3_system(map);
    FlowState collide{{{1.0, 0.0}, {1.0 + 5e-7, 0.0}, {0.1, 0.0}, {0.1, 0.0}}};
    FlowRun run = integrate_flow(sys, collide, 1.0, 1e-3);
    CHECK(!run.completed);
    CHECK(run.t_reached < 1.0);
}

TEST_CASE("fourth-order convergence of the conserved drift") {
    PhaseMap map = default_map();
    FlowSystem sys = h3_system(map);
    auto states = sample_initial_states(1, 20240817u, 1.0, -3.75);
    OrderTest ord = convergence_order(sys, states[0], 1.0, 0.05);
    CHECK(ord.ratio_coarse > 8.0);
    CHECK(ord.ratio_coarse < 32.0);
    CHECK(ord.ratio_fine > 8.0);
    CHECK(ord.ratio_fine < 32.0);
    CHECK(ord.drift[0] > ord.drift[1]);
    CHECK(ord.drift[1] > ord.drift[2]);
}

TEST_CASE("commuting invariant flows") {
    PhaseMap map = default_map();
    FlowSystem f3 = h3_system(map);
    FlowSystem f2 = h2_system(map);
    auto states = sample_initial_states(3, 20240817u, 1.0, -3.75);

    for (const auto& s : states) {
        CHECK(flow_commutativity(f2, f3, s, 0.1, 1e-4) <= 1e-6);
    }
    // Degenerate comparisons vanish identically.
    CHECK(flow_commutativity(f2, f3, states[0], 0.0, 1e-4) == 0.0);
    CHECK(flow_commutativity(f3, f3, states[0], 0.1, 1e-4) <= 1e-12);

    FlowState collide{{{1.0, 0.0}, {1.0 + 5e-7, 0.0}, {0.1, 0.0}, {0.1, 0.0}}};
    CHECK_THROWS_AS((void)flow_commutativity(f2, f3, collide, 0.1, 1e-4), singularity_hit);
}

TEST_CASE("batched runs are bitwise reproducible") {
    PhaseMap map = default_map();
    FlowSystem sys = h3_system(map);
    auto states = sample_initial_states(6, 20240817u, 1.0, -3.75);

    auto serial = integrate_batch(sys, states, 0.5, 1e-3, false);
    auto parallel = integrate_batch(sys, states, 0.5, 1e-3, true);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].trajectory.size() == parallel[i].trajectory.size());
        CHECK(serial[i].completed == parallel[i].completed);
        for (std::size_t k = 0; k < serial[i].trajectory.size(); ++k) {
            CHECK(serial[i].trajectory[k].t == parallel[i].trajectory[k].t);
            CHECK(serial[i].trajectory[k].y == parallel[i].trajectory[k].y);
            CHECK(serial[i].trajectory[k].h == parallel[i].trajectory[k].h);
        }
    }
}

TEST_CASE("trajectory export") {
    PhaseMap map = default_map();
    FlowSystem sys = h3_system(map);
    auto states = sample_initial_states(1, 20240817u, 1.0, -3.75);
    FlowRun run = integrate_flow(sys, states[0], 0.1, 1e-3);

    std::ostringstream os;
    write_trajectory_csv(os, run);
    std::istringstream is(os.str());
    std::string line;
    std::size_t lines = 0;
    std::size_t fields = 0;
    while (std::getline(is, line)) {
        if (lines == 0) {
            fields = 1;
            for (char ch : line) fields += (ch == ',');
        }
        ++lines;
    }
    CHECK(lines == run.trajectory.size() + 1);  // header + samples
    CHECK(fields == 17);                        // t + 8 state + 8 observer columns
}

TEST_CASE("inner-product quadrature") {
    // Convergent entry: J = 2 diagonal at a = 0 against a denser reference.
    QuadratureSpec spec;
    spec.J = 2;
    spec.m = 2;
    spec.n = 2;
    spec.epsilon = 1e-3;
    spec.R = 40.0;
    spec.nodes = 256;
    auto coarse = inner_product_value(spec);
    QuadratureSpec fine = spec;
    fine.nodes = 512;
    auto refined = inner_product_value(fine);
    CHECK(std::abs(coarse - refined) / std::abs(refined) < 1e-6);

    // Serial and parallel panel sums agree bitwise.
    auto par = inner_product_value(fine, true);
    CHECK(refined.real() == par.real());
    CHECK(refined.imag() == par.imag());
}

TEST_CASE("divergence exponent probes") {
    const std::vector<double> ladder = {2e-2, 1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};

    ProbeReport p1 = inner_product_probe(1, 1, 1, Rational(0), ladder, 40.0, 256);
    CHECK(p1.fit_points >= 3);
    CHECK(per_axis_exponent(p1.slope) == doctest::Approx(-1.0).epsilon(0.1));
    CHECK(p1.monotone);
    CHECK(!p1.log_flagged);

    ProbeReport p2 = inner_product_probe(2, 2, 2, Rational(0), ladder, 40.0, 256);
    CHECK(per_axis_exponent(p2.slope) == doctest::Approx(-2.0).epsilon(0.1));
    CHECK(!p2.log_flagged);

    // The scalar entry diverges logarithmically instead of as a power law.
    ProbeReport p0 = inner_product_probe(0, 0, 0, Rational(0), ladder, 40.0, 256);
    CHECK(p0.log_flagged);
}
