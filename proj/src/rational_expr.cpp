#include "llsep/rational_expr.hpp"

#include "llsep/errors.hpp"

namespace llsep {

namespace {

LaurentPoly z1_minus_z2() {
    return LaurentPoly::variable(Z1) - LaurentPoly::variable(Z2);
}

} // namespace

RationalExpr::RationalExpr(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw division_by_zero("RationalExpr with zero denominator");
    normalize();
}

void RationalExpr::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(Scalar(1));
        return;
    }
    // Strip the largest common monomial factor: x^g with
    // g = componentwise min of the two minimum-exponent vectors.
    ExpVec mn = num_.min_exponents();
    ExpVec md = den_.min_exponents();
    ExpVec g;
    bool nontrivial = false;
    for (int v = 0; v < kNumVars; ++v) {
        g[v] = std::min(mn[v], md[v]);
        nontrivial |= (g[v] != 0);
    }
    if (nontrivial) {
        num_ = num_.shift(g);
        den_ = den_.shift(g);
    }
    // Monomial denominator divides out entirely.
    if (den_.term_count() == 1) {
        num_ = *exact_div(num_, den_);
        den_ = LaurentPoly(Scalar(1));
        return;
    }
    // Full collapse when the fraction is secretly polynomial.
    if (auto q = exact_div(num_, den_)) {
        num_ = *q;
        den_ = LaurentPoly(Scalar(1));
        return;
    }
    // The only non-monomial denominator factor arising in this domain is
    // (z1 - z2); cancel any common powers of it.
    const LaurentPoly d = z1_minus_z2();
    for (;;) {
        auto qn = exact_div(num_, d);
        if (!qn) break;
        auto qd = exact_div(den_, d);
        if (!qd) break;
        num_ = *qn;
        den_ = *qd;
        if (den_.term_count() == 1) {
            num_ = *exact_div(num_, den_);
            den_ = LaurentPoly(Scalar(1));
            return;
        }
    }
    // Monic denominator fixes the common scalar content.
    const Scalar lead = den_.leading_term().second;
    if (!lead.is_one()) {
        Scalar inv = lead.inv();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

std::optional<Scalar> RationalExpr::as_constant() const {
    if (num_.is_zero()) return Scalar(0);
    auto n = num_.as_constant();
    auto d = den_.as_constant();
    if (n && d) return *n / *d;
    // Non-collapsed equal polynomials: decide c = num/den via the leading
    // coefficient and verify exactly.
    Scalar c = num_.leading_term().second / den_.leading_term().second;
    if (num_ == den_ * c) return c;
    return std::nullopt;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
    if (a.den_ == b.den_) return RationalExpr(a.num_ + b.num_, a.den_);
    return RationalExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) {
    if (a.den_ == b.den_) return RationalExpr(a.num_ - b.num_, a.den_);
    return RationalExpr(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalExpr operator-(const RationalExpr& a) {
    RationalExpr r = a;
    r.num_ = -r.num_;
    return r;
}

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
    return RationalExpr(a.num_ * b.num_, a.den_ * b.den_);
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
    if (b.num_.is_zero()) throw division_by_zero("RationalExpr division by zero");
    return RationalExpr(a.num_ * b.den_, a.den_ * b.num_);
}

bool RationalExpr::equals(const RationalExpr& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

RationalExpr RationalExpr::derivative(Var v) const {
    if (den_.is_one()) return RationalExpr(num_.derivative(v));
    return RationalExpr(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

RationalExpr RationalExpr::substitute(const std::map<Var, RationalExpr>& bindings) const {
    auto subst_poly = [&](const LaurentPoly& p) {
        RationalExpr acc(Scalar(0));
        for (const auto& [e, c] : p.terms()) {
            RationalExpr term{c};
            for (int v = 0; v < kNumVars; ++v) {
                if (e[v] == 0) continue;
                auto it = bindings.find(static_cast<Var>(v));
                RationalExpr base = (it != bindings.end())
                                        ? it->second
                                        : RationalExpr::variable(static_cast<Var>(v));
                if (e[v] < 0) {
                    if (base.is_zero())
                        throw division_by_zero(std::string("binding for ") + kVarNames[v] +
                                               " annihilates a denominator");
                    base = RationalExpr(1) / base;
                }
                int k = e[v] < 0 ? -e[v] : e[v];
                for (int t = 0; t < k; ++t) term *= base;
            }
            acc += term;
        }
        return acc;
    };
    RationalExpr n = subst_poly(num_);
    RationalExpr d = subst_poly(den_);
    if (d.is_zero())
        throw division_by_zero("substitution annihilates the denominator");
    return n / d;
}

RationalExpr RationalExpr::substitute(Var v, const Scalar& value) const {
    return substitute({{v, RationalExpr(value)}});
}

Scalar RationalExpr::eval_exact(const std::array<Scalar, kNumVars>& point) const {
    auto eval_poly = [&](const LaurentPoly& p) {
        Scalar acc(0);
        for (const auto& [e, c] : p.terms()) {
            Scalar t = c;
            for (int v = 0; v < kNumVars; ++v) {
                if (e[v] == 0) continue;
                if (point[v].is_zero() && e[v] < 0)
                    throw division_by_zero(std::string("exact evaluation at ") + kVarNames[v] +
                                           " = 0 hits a negative exponent");
                t *= point[v].pow_int(e[v]);
            }
            acc += t;
        }
        return acc;
    };
    Scalar d = eval_poly(den_);
    if (d.is_zero()) throw division_by_zero("exact evaluation at a pole");
    return eval_poly(num_) / d;
}

std::complex<double> RationalExpr::eval_complex(
    const std::array<std::complex<double>, kNumVars>& point, double pole_eps) const {
    std::complex<double> d = den_.eval_complex(point);
    if (std::abs(d) < pole_eps) throw near_pole("denominator magnitude below threshold");
    return num_.eval_complex(point) / d;
}

std::string RationalExpr::render() const {
    if (den_.is_one()) return num_.render();
    return "(" + num_.render() + ") / (" + den_.render() + ")";
}

} // namespace llsep
