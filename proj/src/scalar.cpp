#include "llsep/scalar.hpp"

#include <cstddef>

#include "llsep/errors.hpp"

namespace llsep {

Scalar Scalar::i_pow(long k) {
    long r = ((k % 4) + 4) % 4;
    switch (r) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

Scalar Scalar::inv() const {
    Rational n = re_ * re_ + im_ * im_;
    if (n == 0) throw division_by_zero("Scalar::inv of zero");
    return Scalar(re_ / n, -im_ / n);
}

Scalar Scalar::pow_int(long e) const {
    if (e < 0) return inv().pow_int(-e);
    Scalar acc(1);
    Scalar base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

std::string render_rational(const Rational& v) {
    return v.get_str();
}

std::string Scalar::render() const {
    if (im_ == 0) return render_rational(re_);
    std::string im_part;
    if (im_ == 1) im_part = "i";
    else if (im_ == -1) im_part = "-i";
    else im_part = render_rational(im_) + "*i";
    if (re_ == 0) return im_part;
    std::string joined = render_rational(re_);
    if (im_part[0] != '-') joined += "+";
    joined += im_part;
    return "(" + joined + ")";
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal");
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational v(text);
            v.canonicalize();
            return v;
        }
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in rational literal: " + text);
        Rational v(num, den);
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational literal: " + text);
    }
}

std::optional<Rational> rational_sqrt(const Rational& v) {
    if (v < 0) return std::nullopt;
    if (v == 0) return Rational(0);
    const mpz_class& num = v.get_num();
    const mpz_class& den = v.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

Rational factorial(long n) {
    Rational acc(1);
    for (long k = 2; k <= n; ++k) acc *= k;
    return acc;
}

} // namespace llsep
