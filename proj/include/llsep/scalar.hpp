#pragma once
#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace llsep {

using Rational = mpq_class;

// Gaussian rational: re + im*i with exact rational parts, i^2 = -1.
// mpq_class keeps every rational in lowest terms with positive denominator.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(int v) : re_(v), im_(0) {}                 // NOLINT: implicit by design
    Scalar(long v) : re_(v), im_(0) {}                // NOLINT
    Scalar(const Rational& re) : re_(re), im_(0) {}   // NOLINT
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }
    // i^k for any integer k
    static Scalar i_pow(long k);

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    Scalar inv() const;                 // throws division_by_zero on 0
    Scalar pow_int(long e) const;       // negative e inverts first

    std::complex<double> to_complex() const {
        return {re_.get_d(), im_.get_d()};
    }

    // "3/2", "-1", "i", "-2/3*i", "(1/2-3*i)" -- mirrors render()
    std::string render() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
    Scalar& operator+=(const Scalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Scalar& operator-=(const Scalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    Rational re_, im_;
};

// Parse "p/q" or "p" (optional sign) into an exact rational.
Rational parse_rational(const std::string& text);

// Exact square root of a nonnegative rational, if it exists.
std::optional<Rational> rational_sqrt(const Rational& v);

// n! as an exact rational (n >= 0).
Rational factorial(long n);

std::string render_rational(const Rational& v);

} // namespace llsep
