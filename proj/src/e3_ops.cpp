#include "llsep/e3_ops.hpp"

namespace llsep {

namespace {

RationalExpr rv(Var v) { return RationalExpr::variable(v); }

// -1/4 - c1/z^3 - c0/z^4 (the scalar potential entering L3 and h2)
RationalExpr potential_U(Var z, const Scalar& c0, const Scalar& c1) {
    return RationalExpr(Scalar(Rational(-1, 4))) -
           RationalExpr(c1) * RationalExpr::variable(z, -3) -
           RationalExpr(c0) * RationalExpr::variable(z, -4);
}

// -1/4 + c1/z^3 + c0/z^4 (the scalar potential entering L+/-)
RationalExpr potential_V(Var z, const Scalar& c0, const Scalar& c1) {
    return RationalExpr(Scalar(Rational(-1, 4))) +
           RationalExpr(c1) * RationalExpr::variable(z, -3) +
           RationalExpr(c0) * RationalExpr::variable(z, -4);
}

DiffOperator build_L3(const Scalar& c0, const Scalar& c1) {
    RationalExpr z1 = rv(Z1), z2 = rv(Z2);
    RationalExpr d = z1 - z2;
    RationalExpr a1 = z1 * z1 / d;
    RationalExpr a2 = z2 * z2 / d;
    return DiffOperator::from_terms({
        {{2, 0}, a1},
        {{0, 2}, -a2},
        {{0, 0}, a1 * potential_U(Z1, c0, c1) - a2 * potential_U(Z2, c0, c1)},
    });
}

DiffOperator build_Ls(int s, const Scalar& c0, const Scalar& c1) {
    RationalExpr z1 = rv(Z1), z2 = rv(Z2);
    RationalExpr d = z1 - z2;
    RationalExpr I{Scalar::i()};
    RationalExpr sgn{Scalar(s)};
    RationalExpr a1 = z1 * z1 / d;
    RationalExpr a2 = z2 * z2 / d;
    return DiffOperator::from_terms({
        {{2, 0}, -I * a1},
        {{0, 2}, I * a2},
        {{1, 0}, -sgn * I * a1},
        {{0, 1}, sgn * I * a2},
        {{0, 0}, I * a1 * potential_V(Z1, c0, c1) - I * a2 * potential_V(Z2, c0, c1)},
    });
}

DiffOperator build_p3(const Scalar& c0) {
    RationalExpr z1 = rv(Z1), z2 = rv(Z2);
    RationalExpr d = z1 - z2;
    RationalExpr d2 = d * d, d3 = d2 * d;
    RationalExpr zz = z1 * z2;
    RationalExpr two{2};
    return DiffOperator::from_terms({
        {{2, 0}, -z1 * z1 * z1 * z2 / d2},
        {{0, 2}, -z1 * z2 * z2 * z2 / d2},
        {{1, 1}, two * z1 * z1 * z2 * z2 / d2},
        {{1, 0}, two * z1 * z1 * z2 * z2 / d3},
        {{0, 1}, -two * z1 * z1 * z2 * z2 / d3},
        {{0, 0}, zz * RationalExpr(Scalar(Rational(1, 4))) + RationalExpr(c0) / zz},
    });
}

DiffOperator build_ps(int s, const Scalar& c0) {
    RationalExpr z1 = rv(Z1), z2 = rv(Z2);
    RationalExpr d = z1 - z2;
    RationalExpr d2 = d * d, d3 = d2 * d;
    RationalExpr zz = z1 * z2;
    RationalExpr I{Scalar::i()};
    RationalExpr sgn{Scalar(s)};
    RationalExpr two{2};
    return DiffOperator::from_terms({
        {{2, 0}, I * z1 * z1 * z1 * z2 / d2},
        {{0, 2}, I * z1 * z2 * z2 * z2 / d2},
        {{1, 1}, -two * I * z1 * z1 * z2 * z2 / d2},
        {{1, 0}, I * (-two * z1 * z1 * z2 * z2 / d3 + sgn * z1 * z1 * z2 / d)},
        {{0, 1}, I * (two * z1 * z1 * z2 * z2 / d3 - sgn * z1 * z2 * z2 / d)},
        {{0, 0}, I * (zz * RationalExpr(Scalar(Rational(1, 4))) - RationalExpr(c0) / zz)},
    });
}

DiffOperator build_h2(const Scalar& c0, const Scalar& c1) {
    RationalExpr z1 = rv(Z1), z2 = rv(Z2);
    RationalExpr d = z1 - z2;
    RationalExpr b1 = z1 * z1 * z2 / d;
    RationalExpr b2 = z1 * z2 * z2 / d;
    return DiffOperator::from_terms({
        {{2, 0}, -b1},
        {{0, 2}, b2},
        {{0, 0}, -b1 * potential_U(Z1, c0, c1) + b2 * potential_U(Z2, c0, c1)},
    });
}

} // namespace

E3Generators build_generators(const OrbitParams& orbit) {
    E3Generators g;
    g.orbit = orbit;
    g.L3 = build_L3(orbit.c0, orbit.c1);
    g.Lp = build_Ls(+1, orbit.c0, orbit.c1);
    g.Lm = build_Ls(-1, orbit.c0, orbit.c1);
    g.p3 = build_p3(orbit.c0);
    g.pp = build_ps(+1, orbit.c0);
    g.pm = build_ps(-1, orbit.c0);
    g.h2 = build_h2(orbit.c0, orbit.c1);
    g.h3 = g.L3;
    return g;
}

bool CommutatorReport::all_ok() const {
    if (!hamiltonians_commute) return false;
    for (const auto& r : relations)
        if (!r.ok) return false;
    return true;
}

CommutatorReport verify_e3_commutators(const E3Generators& g) {
    CommutatorReport rep;

    // One clause = one or more (commutator, expected) pairs.
    struct Pair {
        DiffOperator lhs;
        DiffOperator expected;
    };
    auto clause = [&](const std::string& name, const std::vector<Pair>& pairs) {
        RelationResult r;
        r.name = name;
        r.ok = true;
        for (const auto& pr : pairs) {
            DiffOperator res = pr.lhs - pr.expected;
            if (!res.is_zero()) {
                r.ok = false;
                r.residual = res;
                break;
            }
        }
        rep.relations.push_back(std::move(r));
    };

    const DiffOperator zero;
    const Scalar two(2);

    clause("[L3,L+/-] = +/-L+/-", {{commutator(g.L3, g.Lp), g.Lp},
                                   {commutator(g.L3, g.Lm), Scalar(-1) * g.Lm}});
    clause("[L+,L-] = 2L3", {{commutator(g.Lp, g.Lm), two * g.L3}});
    clause("[p3,p+/-] = 0", {{commutator(g.p3, g.pp), zero}, {commutator(g.p3, g.pm), zero}});
    clause("[p+,p-] = 0", {{commutator(g.pp, g.pm), zero}});
    clause("[L3,p+/-] = +/-p+/-", {{commutator(g.L3, g.pp), g.pp},
                                   {commutator(g.L3, g.pm), Scalar(-1) * g.pm}});
    clause("[p3,L+/-] = +/-p+/-", {{commutator(g.p3, g.Lp), g.pp},
                                   {commutator(g.p3, g.Lm), Scalar(-1) * g.pm}});
    clause("[L+,p-] = 2p3", {{commutator(g.Lp, g.pm), two * g.p3}});
    clause("[p+,L-] = 2p3", {{commutator(g.pp, g.Lm), two * g.p3}});
    clause("[L3,p3] = [L+,p+] = [L-,p-] = 0", {{commutator(g.L3, g.p3), zero},
                                               {commutator(g.Lp, g.pp), zero},
                                               {commutator(g.Lm, g.pm), zero}});

    rep.h_residual = commutator(g.h2, g.h3);
    rep.hamiltonians_commute = rep.h_residual.is_zero();
    return rep;
}

std::optional<Scalar> as_scalar_multiple_of_identity(const DiffOperator& op) {
    if (op.is_zero()) return Scalar(0);
    const auto& terms = op.terms();
    if (terms.size() != 1) return std::nullopt;
    const auto& [order, coeff] = *terms.begin();
    if (order != DiffOperator::Order{0, 0}) return std::nullopt;
    return coeff.as_constant();
}

CasimirReport casimir_report(const E3Generators& g) {
    CasimirReport rep;
    const Scalar half(Rational(1, 2));

    DiffOperator cas0 =
        compose(g.p3, g.p3) + half * (compose(g.pp, g.pm) + compose(g.pm, g.pp));
    auto v0 = as_scalar_multiple_of_identity(cas0);
    rep.c0_value = v0.value_or(Scalar(0));
    rep.c0_ok = v0.has_value() && *v0 == g.orbit.c0;

    DiffOperator cas1 =
        compose(g.p3, g.L3) + half * (compose(g.pp, g.Lm) + compose(g.pm, g.Lp));
    auto v1 = as_scalar_multiple_of_identity(cas1);
    rep.c1_value = v1.value_or(Scalar(0));
    rep.c1_ok = v1.has_value() && *v1 == g.orbit.c1 * half;

    DiffOperator Lsq =
        compose(g.L3, g.L3) + half * (compose(g.Lp, g.Lm) + compose(g.Lm, g.Lp));
    rep.h2_is_casimir_combo = (g.h2 - (Lsq + g.p3)).is_zero();
    return rep;
}

} // namespace llsep
