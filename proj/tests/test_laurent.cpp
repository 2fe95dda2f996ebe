#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "llsep/errors.hpp"
#include "llsep/laurent.hpp"

#include <complex>

using namespace llsep;

namespace {

LaurentPoly z1() { return LaurentPoly::variable(Var::Z1); }
LaurentPoly z2() { return LaurentPoly::variable(Var::Z2); }
LaurentPoly w1() { return LaurentPoly::variable(Var::W1); }
LaurentPoly w2() { return LaurentPoly::variable(Var::W2); }

}  // namespace

TEST_CASE("ring arithmetic") {
    LaurentPoly s = z1() + z2();
    LaurentPoly sq = s * s;
    LaurentPoly expect = z1() * z1() + Scalar(2) * z1() * z2() + z2() * z2();
    CHECK(sq == expect);
    CHECK(sq.term_count() == 3);

    // Negative exponents multiply cleanly back to 1.
    LaurentPoly inv1 = LaurentPoly::monomial({-1, 0, 0, 0}, Scalar(1));
    CHECK((inv1 * z1()).is_one());

    // Cancellation drops stored terms entirely.
    LaurentPoly diff = sq - sq;
    CHECK(diff.is_zero());
    CHECK(diff.term_count() == 0);

    LaurentPoly mixed = LaurentPoly::monomial({2, -1, 0, 0}, Scalar(Rational(1, 2))) -
                        Scalar(2) * w1() + LaurentPoly(Scalar(Rational(1, 2)));
    CHECK(mixed.term_count() == 3);
    CHECK(!mixed.is_constant());
    CHECK(-mixed + mixed == LaurentPoly());
}

TEST_CASE("constants") {
    LaurentPoly c{Scalar(Rational(-7, 3))};
    CHECK(c.is_constant());
    REQUIRE(c.as_constant().has_value());
    CHECK(*c.as_constant() == Scalar(Rational(-7, 3)));
    CHECK(LaurentPoly().is_zero());
    CHECK(LaurentPoly().is_constant());
    CHECK(!LaurentPoly().as_constant().has_value());
    CHECK(!z1().as_constant().has_value());
}

TEST_CASE("partial derivatives on Laurent exponents") {
    LaurentPoly p = LaurentPoly::monomial({-2, 0, 0, 0}, Scalar(1));
    LaurentPoly d = p.derivative(Var::Z1);
    CHECK(d == LaurentPoly::monomial({-3, 0, 0, 0}, Scalar(-2)));

    // d/dz1 (z1*z2 + w1) = z2; the w1 term dies.
    LaurentPoly q = z1() * z2() + w1();
    CHECK(q.derivative(Var::Z1) == z2());
    CHECK(q.derivative(Var::W2).is_zero());
}

TEST_CASE("swapping both canonical pairs") {
    LaurentPoly p = z1() * z1() * w1() + Scalar(3) * z2();
    LaurentPoly s = p.swap_pairs();
    CHECK(s == z2() * z2() * w2() + Scalar(3) * z1());
    CHECK(s.swap_pairs() == p);
}

TEST_CASE("exponent range helpers") {
    LaurentPoly p = LaurentPoly::monomial({-2, 1, 0, 0}, Scalar(1)) +
                    LaurentPoly::monomial({3, -4, 0, 0}, Scalar(1));
    auto lo = p.min_exponents();
    CHECK(lo[0] == -2);
    CHECK(lo[1] == -4);
    CHECK(lo[2] == 0);
    CHECK(lo[3] == 0);

    // shift divides by the monomial, so shifting by the minimum exponent
    // vector clears all negative exponents.
    LaurentPoly cleared = p.shift(lo);
    auto lo2 = cleared.min_exponents();
    CHECK(lo2[0] == 0);
    CHECK(lo2[1] == 0);
    CHECK(cleared == LaurentPoly::monomial({0, 5, 0, 0}, Scalar(1)) +
                         LaurentPoly::monomial({5, 0, 0, 0}, Scalar(1)));

    auto lead = p.leading_term();  // lexicographically largest exponent vector
    CHECK(lead.first[0] == 3);
    CHECK(lead.first[1] == -4);
    CHECK(lead.second == Scalar(1));
}

TEST_CASE("scalar substitution") {
    LaurentPoly p = LaurentPoly::monomial({-1, 0, 0, 0}, Scalar(1)) + z2();
    LaurentPoly at2 = p.substitute_scalar(Var::Z1, Scalar(2));
    CHECK(at2 == LaurentPoly(Scalar(Rational(1, 2))) + z2());
    CHECK_THROWS_AS((void)p.substitute_scalar(Var::Z1, Scalar(0)), division_by_zero);
    // Zero is fine when the variable only appears with nonnegative exponent.
    CHECK(z2().substitute_scalar(Var::Z2, Scalar(0)).is_zero());
}

TEST_CASE("floating evaluation matches exact arithmetic") {
    LaurentPoly p = z1() * z1() * w1() - Scalar(Rational(1, 2)) * z2() +
                    LaurentPoly::monomial({0, -2, 0, 0}, Scalar(3));
    std::array<std::complex<double>, 4> pt{{{2.0, 0.0}, {3.0, 0.0}, {0.5, 0.0}, {-1.0, 0.0}}};
    std::complex<double> v = p.eval_complex(pt);
    // 4*0.5 - 3/2 + 3/9
    CHECK(std::abs(v - std::complex<double>(2.0 - 1.5 + 1.0 / 3.0, 0.0)) < 1e-14);

    LaurentPoly exact = p.substitute_scalar(Var::Z1, Scalar(2))
                            .substitute_scalar(Var::Z2, Scalar(3))
                            .substitute_scalar(Var::W1, Scalar(Rational(1, 2)))
                            .substitute_scalar(Var::W2, Scalar(-1));
    REQUIRE(exact.as_constant().has_value());
    CHECK(std::abs(v - exact.as_constant()->to_complex()) < 1e-15);
}

TEST_CASE("render and parse round trip") {
    LaurentPoly p = LaurentPoly::monomial({2, -1, 0, 0}, Scalar(1)) - Scalar(2) * w1() +
                    LaurentPoly(Scalar(Rational(1, 2)));
    std::string text = p.render();
    LaurentPoly back = LaurentPoly::parse(text);
    CHECK(back == p);

    CHECK(LaurentPoly::parse("z1^2*z2^-1 - 2*w1 + 1/2") == p);
    CHECK(LaurentPoly::parse("0").is_zero());
    CHECK(LaurentPoly::parse("i*z1 - i*z1").is_zero());
    CHECK(LaurentPoly::parse("-z1") == Scalar(-1) * z1());
    CHECK(LaurentPoly::parse("3/2*i*w2^3") ==
          LaurentPoly::monomial({0, 0, 0, 3}, Scalar(Rational(0), Rational(3, 2))));

    CHECK(LaurentPoly().render() == "0");

    CHECK_THROWS_AS((void)LaurentPoly::parse(""), parse_error);
    CHECK_THROWS_AS((void)LaurentPoly::parse("z3"), parse_error);
    CHECK_THROWS_AS((void)LaurentPoly::parse("z1^"), parse_error);
    CHECK_THROWS_AS((void)LaurentPoly::parse("1 +"), parse_error);
}

TEST_CASE("exact division certificates") {
    LaurentPoly a = z1() * z1() - z2() * z2();
    LaurentPoly b = z1() - z2();
    auto q = exact_div(a, b);
    REQUIRE(q.has_value());
    CHECK(*q == z1() + z2());
    CHECK(*q * b == a);

    // Dividing by a monomial always succeeds in the Laurent ring.
    auto inv = exact_div(LaurentPoly(1), z1());
    REQUIRE(inv.has_value());
    CHECK(*inv == LaurentPoly::monomial({-1, 0, 0, 0}, Scalar(1)));

    // A product divides by either factor.
    LaurentPoly f = z1() * w2() + LaurentPoly(3);
    LaurentPoly g = z2() * z2() - Scalar(Rational(1, 4)) * w1();
    auto h = exact_div(f * g, g);
    REQUIRE(h.has_value());
    CHECK(*h == f);

    // Monomial divisors never fail; cross-variable quotients pick up
    // negative exponents.
    auto cross = exact_div(z1(), z2());
    REQUIRE(cross.has_value());
    CHECK(*cross == LaurentPoly::monomial({1, -1, 0, 0}, Scalar(1)));
    CHECK(!exact_div(z1() + LaurentPoly(1), z1() - LaurentPoly(1)).has_value());
    CHECK(!exact_div(z1() * z1() + z2(), z1() + z2()).has_value());
    CHECK_THROWS_AS((void)exact_div(z1(), LaurentPoly()), division_by_zero);
    // 0 / q = 0 exactly.
    auto zero = exact_div(LaurentPoly(), b);
    REQUIRE(zero.has_value());
    CHECK(zero->is_zero());
}
