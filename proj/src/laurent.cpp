#include "llsep/laurent.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "llsep/errors.hpp"

namespace llsep {

namespace {

ExpVec add_exp(const ExpVec& a, const ExpVec& b) {
    ExpVec r;
    for (int v = 0; v < kNumVars; ++v) r[v] = a[v] + b[v];
    return r;
}

ExpVec sub_exp(const ExpVec& a, const ExpVec& b) {
    ExpVec r;
    for (int v = 0; v < kNumVars; ++v) r[v] = a[v] - b[v];
    return r;
}

std::complex<double> cpow_int(const std::complex<double>& z, int e) {
    if (e < 0) return 1.0 / cpow_int(z, -e);
    std::complex<double> acc(1.0, 0.0), base = z;
    for (unsigned k = static_cast<unsigned>(e); k > 0; k >>= 1) {
        if (k & 1u) acc *= base;
        base *= base;
    }
    return acc;
}

} // namespace

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == ExpVec{0, 0, 0, 0} &&
           terms_.begin()->second.is_one();
}

std::optional<Scalar> LaurentPoly::as_constant() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [e, c] = *terms_.begin();
    if (e != ExpVec{0, 0, 0, 0}) return std::nullopt;
    return c;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || as_constant().has_value();
}

void LaurentPoly::add_term(const ExpVec& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(add_exp(ea, eb), ca * cb);
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const Scalar& s) {
    LaurentPoly r;
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
    return r;
}

LaurentPoly LaurentPoly::derivative(Var v) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        ExpVec de = e;
        de[v] -= 1;
        r.add_term(de, c * Scalar(e[v]));
    }
    return r;
}

LaurentPoly LaurentPoly::swap_pairs() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
        ExpVec se{e[Z2], e[Z1], e[W2], e[W1]};
        r.terms_.emplace(se, c);
    }
    return r;
}

ExpVec LaurentPoly::min_exponents() const {
    ExpVec m{0, 0, 0, 0};
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (first) {
            m = e;
            first = false;
            continue;
        }
        for (int v = 0; v < kNumVars; ++v) m[v] = std::min(m[v], e[v]);
    }
    return m;
}

LaurentPoly LaurentPoly::shift(const ExpVec& e) const {
    LaurentPoly r;
    for (const auto& [te, c] : terms_) r.terms_.emplace(sub_exp(te, e), c);
    return r;
}

const std::pair<const ExpVec, Scalar>& LaurentPoly::leading_term() const {
    return *terms_.rbegin();
}

LaurentPoly LaurentPoly::substitute_scalar(Var v, const Scalar& value) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
        if (e[v] < 0 && value.is_zero())
            throw division_by_zero(std::string("substitution of 0 for ") + kVarNames[v] +
                                   " hits a negative exponent");
        ExpVec re = e;
        re[v] = 0;
        r.add_term(re, c * value.pow_int(e[v]));
    }
    return r;
}

std::complex<double> LaurentPoly::eval_complex(
    const std::array<std::complex<double>, kNumVars>& point) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int v = 0; v < kNumVars; ++v)
            if (e[v] != 0) t *= cpow_int(point[v], e[v]);
        acc += t;
    }
    return acc;
}

std::optional<LaurentPoly> exact_div(const LaurentPoly& p, const LaurentPoly& q) {
    if (q.is_zero()) throw division_by_zero("exact_div by zero polynomial");
    if (p.is_zero()) return LaurentPoly();

    // Single-term divisor: monomial division is always exact in the Laurent ring.
    if (q.term_count() == 1) {
        const auto& [qe, qc] = *q.terms().begin();
        LaurentPoly r;
        Scalar qinv = qc.inv();
        for (const auto& [e, c] : p.terms()) r.add_term(sub_exp(e, qe), c * qinv);
        return r;
    }

    // Shift both operands into honest polynomials (componentwise minimum
    // exponent zero); the monomial shifts are units, so exactness transfers.
    ExpVec sp = p.min_exponents();
    ExpVec sq = q.min_exponents();
    LaurentPoly rem = p.shift(sp);
    LaurentPoly qq = q.shift(sq);

    // Greedy leading-term division in lex order. For an exact quotient the
    // leading term of the remainder is always divisible by lt(qq); a
    // non-divisible leading term certifies NotDivisible.
    LaurentPoly quot;
    const auto& [qe, qc] = qq.leading_term();
    Scalar qinv = qc.inv();
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.leading_term();
        ExpVec te = sub_exp(re, qe);
        bool ok = true;
        for (int v = 0; v < kNumVars; ++v)
            if (te[v] < 0) { ok = false; break; }
        if (!ok) return std::nullopt;
        LaurentPoly t = LaurentPoly::monomial(te, rc * qinv);
        quot += t;
        rem -= t * qq;
    }
    // Undo the shifts: p = x^sp * p', q = x^sq * q', so r = x^(sp-sq) * (p'/q').
    return quot.shift(sub_exp(sq, sp));
}

// ---- rendering -------------------------------------------------------------

namespace {

// Render one term; omit unit coefficients in front of nonempty monomials.
std::string render_term(const ExpVec& e, const Scalar& c) {
    std::string mono;
    for (int v = 0; v < kNumVars; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += kVarNames[v];
        if (e[v] != 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) return c.render();
    if (c.is_one()) return mono;
    if (c == Scalar(-1)) return "-" + mono;
    return c.render() + "*" + mono;
}

} // namespace

std::string LaurentPoly::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Descending lex order gives the conventional leading-term-first reading.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string t = render_term(it->first, it->second);
        if (out.empty()) {
            out = t;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

// ---- parsing ---------------------------------------------------------------

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }

    std::string number() {  // digits possibly followed by /digits
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw parse_error("expected digits at offset " + std::to_string(pos));
        if (pos < s.size() && s[pos] == '/') {
            std::size_t slash = pos++;
            std::size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (dstart == pos) { pos = slash; }  // trailing '/': not part of the number
        }
        return s.substr(start, pos - start);
    }

    int integer() {  // signed integer (for exponents)
        skip_ws();
        bool neg = eat('-');
        if (!neg) eat('+');
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw parse_error("expected integer at offset " + std::to_string(pos));
        int v = std::atoi(s.substr(start, pos - start).c_str());
        return neg ? -v : v;
    }

    std::optional<Var> var() {
        skip_ws();
        if (pos + 1 < s.size()) {
            for (int v = 0; v < kNumVars; ++v) {
                if (s.compare(pos, 2, kVarNames[v]) == 0) {
                    pos += 2;
                    return static_cast<Var>(v);
                }
            }
        }
        return std::nullopt;
    }
};

// rational with optional leading sign, or "i"
Scalar parse_atom_scalar(Lexer& lx) {
    bool neg = lx.eat('-');
    if (!neg) lx.eat('+');
    Scalar v;
    if (lx.peek() == 'i') {
        lx.eat('i');
        v = Scalar::i();
    } else {
        Rational r = parse_rational(lx.number());
        if (lx.peek() == '*' && lx.pos + 1 < lx.s.size() && lx.s[lx.pos + 1] == 'i') {
            lx.eat('*');
            lx.eat('i');
            v = Scalar(Rational(0), r);
        } else {
            v = Scalar(r);
        }
    }
    return neg ? -v : v;
}

// "(a+b*i)" | "a" | "i" | "-2/3*i"
Scalar parse_coefficient(Lexer& lx) {
    if (lx.peek() == '(') {
        lx.eat('(');
        Scalar first = parse_atom_scalar(lx);
        Scalar total = first;
        while (lx.peek() == '+' || lx.peek() == '-') total += parse_atom_scalar(lx);
        if (!lx.eat(')')) throw parse_error("missing ')' in coefficient");
        return total;
    }
    return parse_atom_scalar(lx);
}

} // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
    Lexer lx(text);
    LaurentPoly out;
    bool first = true;
    while (!lx.done()) {
        int sign = 1;
        if (!first || lx.peek() == '+' || lx.peek() == '-') {
            if (lx.eat('-')) sign = -1;
            else if (!lx.eat('+') && !first)
                throw parse_error("expected '+' or '-' between terms at offset " +
                                  std::to_string(lx.pos));
        }
        first = false;

        Scalar coeff(1);
        ExpVec exps{0, 0, 0, 0};
        bool any_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            char c = lx.peek();
            if (auto v = lx.var()) {
                int e = 1;
                if (lx.eat('^')) e = lx.integer();
                exps[*v] += e;
                any_factor = true;
            } else if (c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == 'i') {
                coeff *= parse_coefficient(lx);
                any_factor = true;
            } else {
                throw parse_error("expected factor at offset " + std::to_string(lx.pos));
            }
            expect_factor = lx.eat('*');
        }
        if (!any_factor) throw parse_error("empty term");
        out.add_term(exps, sign < 0 ? -coeff : coeff);
    }
    if (first) throw parse_error("empty polynomial text");
    return out;
}

} // namespace llsep
