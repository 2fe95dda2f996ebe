#include "llsep/diff_op.hpp"

#include "llsep/errors.hpp"

namespace llsep {

namespace {

Rational binomial(int n, int k) {
    Rational acc(1);
    for (int t = 1; t <= k; ++t) {
        Rational step(n - k + t, t);
        step.canonicalize();
        acc *= step;
    }
    return acc;
}

} // namespace

RationalExpr ExpFactor::log_derivative(Var zk) const {
    // d/dz_k [ -(z1+z2)/2 + a/z1 + a/z2 ] = -1/2 - a/z_k^2
    LaurentPoly p(Scalar(Rational(-1, 2)));
    p += LaurentPoly::variable(zk, -2) * Scalar(-Rational(a));
    return RationalExpr(p);
}

WaveFunction WaveFunction::twisted_derivative(Var zk) const {
    return {pref_.derivative(zk) + exp_.log_derivative(zk) * pref_, exp_};
}

WaveFunction operator+(const WaveFunction& f, const WaveFunction& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (!(f.exp_ == g.exp_))
        throw precondition_error("wavefunction sum across different exponential factors");
    return {f.pref_ + g.pref_, f.exp_};
}

WaveFunction operator-(const WaveFunction& f, const WaveFunction& g) {
    if (g.is_zero()) return f;
    if (f.is_zero()) return {-g.pref_, g.exp_};
    if (!(f.exp_ == g.exp_))
        throw precondition_error("wavefunction difference across different exponential factors");
    return {f.pref_ - g.pref_, f.exp_};
}

DiffOperator DiffOperator::from_terms(const std::vector<std::pair<Order, RationalExpr>>& terms) {
    DiffOperator op;
    for (const auto& [o, c] : terms) op.add_term(o, c);
    return op;
}

void DiffOperator::add_term(const Order& o, const RationalExpr& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(o);
    if (it == terms_.end()) {
        terms_.emplace(o, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int DiffOperator::max_order() const {
    int m = 0;
    for (const auto& [o, c] : terms_) {
        (void)c;
        m = std::max(m, o[0] + o[1]);
    }
    return m;
}

DiffOperator operator+(const DiffOperator& A, const DiffOperator& B) {
    DiffOperator r = A;
    for (const auto& [o, c] : B.terms_) r.add_term(o, c);
    return r;
}

DiffOperator operator-(const DiffOperator& A, const DiffOperator& B) {
    DiffOperator r = A;
    for (const auto& [o, c] : B.terms_) r.add_term(o, -c);
    return r;
}

DiffOperator operator*(const Scalar& s, const DiffOperator& A) {
    DiffOperator r;
    for (const auto& [o, c] : A.terms_) r.add_term(o, c * RationalExpr(s));
    return r;
}

DiffOperator DiffOperator::scaled(const RationalExpr& c) const {
    DiffOperator r;
    for (const auto& [o, coeff] : terms_) r.add_term(o, coeff * c);
    return r;
}

bool DiffOperator::equals(const DiffOperator& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return false;
        if (!it->second.equals(jt->second)) return false;
    }
    return true;
}

WaveFunction DiffOperator::apply(const WaveFunction& f) const {
    WaveFunction acc(RationalExpr(0), f.exp_factor());
    for (const auto& [o, c] : terms_) {
        WaveFunction t = f;
        for (int k = 0; k < o[0]; ++k) t = t.twisted_derivative(Z1);
        for (int k = 0; k < o[1]; ++k) t = t.twisted_derivative(Z2);
        acc = acc + t.scaled(c);
    }
    return acc;
}

std::string DiffOperator::render() const {
    if (terms_.empty()) return "[0,0] 0\n";
    std::string out;
    for (const auto& [o, c] : terms_) {
        out += "[" + std::to_string(o[0]) + "," + std::to_string(o[1]) + "] " + c.render() + "\n";
    }
    return out;
}

DiffOperator compose(const DiffOperator& A, const DiffOperator& B) {
    DiffOperator out;
    for (const auto& [ao, ac] : A.terms()) {
        for (const auto& [bo, bc] : B.terms()) {
            // Push d^(a1,a2) through bc by the two-variable Leibniz rule.
            for (int k1 = 0; k1 <= ao[0]; ++k1) {
                for (int k2 = 0; k2 <= ao[1]; ++k2) {
                    RationalExpr c = bc;
                    for (int t = 0; t < k1; ++t) c = c.derivative(Z1);
                    for (int t = 0; t < k2; ++t) c = c.derivative(Z2);
                    if (c.is_zero()) continue;
                    Scalar coef(binomial(ao[0], k1) * binomial(ao[1], k2));
                    DiffOperator::Order o{ao[0] - k1 + bo[0], ao[1] - k2 + bo[1]};
                    out.add_term(o, ac * c * RationalExpr(coef));
                }
            }
        }
    }
    return out;
}

DiffOperator commutator(const DiffOperator& A, const DiffOperator& B) {
    return compose(A, B) - compose(B, A);
}

ClosureCheck symmetric_closure_check(const DiffOperator& op, const WaveFunction& f) {
    if (!f.is_symmetric())
        throw precondition_error("symmetric_closure_check requires a symmetric wavefunction");
    WaveFunction g = op.apply(f);
    if (!g.is_symmetric()) return {false, "image not symmetric: " + g.prefactor().render()};
    // The normalized prefactor of the image must have no surviving (z1 - z2)
    // factor in its denominator: the apparent pole of the coefficients has to
    // cancel on symmetric inputs.
    const LaurentPoly d = LaurentPoly::variable(Z1) - LaurentPoly::variable(Z2);
    if (exact_div(g.prefactor().den(), d).has_value())
        return {false, "surviving pole, denominator: " + g.prefactor().den().render()};
    return {true, ""};
}

} // namespace llsep
