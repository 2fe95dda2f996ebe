#pragma once
#include <optional>
#include <string>
#include <vector>

#include "llsep/diff_op.hpp"
#include "llsep/phase_map.hpp"

namespace llsep {

// Quantized generators in separation variables: second-order differential
// operators in (z1,z2) with exact rational coefficients and the orbit
// parameters bound. Basis: L3, L+ = L1 + iL2, L- = L1 - iL2 and likewise
// for p. h3 coincides with L3; h2 is an independent second-order operator.
struct E3Generators {
    OrbitParams orbit;
    DiffOperator L3, Lp, Lm;
    DiffOperator p3, pp, pm;
    DiffOperator h2, h3;
};

E3Generators build_generators(const OrbitParams& orbit);

// One commutation-relation clause. A clause may bundle several commutators
// (e.g. "[p3,p+/-]" covers both signs); `residual` keeps the first failing
// commutator, or the zero operator when the clause holds.
struct RelationResult {
    std::string name;
    DiffOperator residual;
    bool ok;
};

struct CommutatorReport {
    std::vector<RelationResult> relations;  // 9 clauses covering all 15 pairs
    bool hamiltonians_commute;              // [h2, h3] = 0
    DiffOperator h_residual;
    bool all_ok() const;
};

CommutatorReport verify_e3_commutators(const E3Generators& gen);

// Exact operator Casimirs:
//   p3^2 + (p+ p- + p- p+)/2          = c0 * Id
//   p3 L3 + (p+ L- + p- L+)/2         = (c1/2) * Id
// plus the identification h2 = L3^2 + (L+ L- + L- L+)/2 + p3, exact.
struct CasimirReport {
    bool c0_ok;
    Scalar c0_value;  // scalar multiple of Id actually found (0 if not scalar)
    bool c1_ok;
    Scalar c1_value;
    bool h2_is_casimir_combo;
    bool all_ok() const { return c0_ok && c1_ok && h2_is_casimir_combo; }
};

CasimirReport casimir_report(const E3Generators& gen);

// nullopt unless op is exactly a constant multiple of the identity.
std::optional<Scalar> as_scalar_multiple_of_identity(const DiffOperator& op);

} // namespace llsep
