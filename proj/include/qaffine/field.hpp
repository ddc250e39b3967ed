#pragma once

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qaffine/cyclotomic.hpp"

namespace qaffine {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

/// Sparse polynomial in one variable over Q(zeta_8); terms sorted by
/// ascending exponent, no zero coefficients.
class Poly {
public:
    using Term = std::pair<long, Cyclo>;

    Poly() = default;
    static Poly zero() { return Poly(); }
    static Poly constant(Cyclo c) {
        Poly p;
        if (!c.is_zero()) p.t_.emplace_back(0, std::move(c));
        return p;
    }
    static Poly monomial(long e, Cyclo c) {
        Poly p;
        if (!c.is_zero()) p.t_.emplace_back(e, std::move(c));
        return p;
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_one() const {
        return t_.size() == 1 && t_[0].first == 0 && t_[0].second == Cyclo::one();
    }
    bool is_monomial() const { return t_.size() == 1; }
    long degree() const { return t_.empty() ? -1 : t_.back().first; }
    long low_degree() const { return t_.empty() ? 0 : t_.front().first; }
    const Cyclo& leading() const { return t_.back().second; }

    Cyclo coeff(long e) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), e,
                                   [](const Term& t, long x) { return t.first < x; });
        if (it != t_.end() && it->first == e) return it->second;
        return Cyclo::zero();
    }

    bool operator==(const Poly& o) const {
        if (t_.size() != o.t_.size()) return false;
        for (size_t k = 0; k < t_.size(); ++k)
            if (t_[k].first != o.t_[k].first || t_[k].second != o.t_[k].second)
                return false;
        return true;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.t_) t.second = -t.second;
        return r;
    }

    Poly operator+(const Poly& o) const {
        Poly r;
        r.t_.reserve(t_.size() + o.t_.size());
        size_t a = 0, b = 0;
        while (a < t_.size() || b < o.t_.size()) {
            if (b == o.t_.size() || (a < t_.size() && t_[a].first < o.t_[b].first)) {
                r.t_.push_back(t_[a++]);
            } else if (a == t_.size() || o.t_[b].first < t_[a].first) {
                r.t_.push_back(o.t_[b++]);
            } else {
                Cyclo c = t_[a].second + o.t_[b].second;
                if (!c.is_zero()) r.t_.emplace_back(t_[a].first, std::move(c));
                ++a;
                ++b;
            }
        }
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        if (is_monomial()) return o.scaled_shifted(t_[0].second, t_[0].first);
        if (o.is_monomial()) return scaled_shifted(o.t_[0].second, o.t_[0].first);
        Poly r;
        for (const auto& ta : t_) r = r + o.scaled_shifted(ta.second, ta.first);
        return r;
    }

    Poly scaled_shifted(const Cyclo& c, long e) const {
        Poly r;
        if (c.is_zero()) return r;
        r.t_.reserve(t_.size());
        for (const auto& t : t_) r.t_.emplace_back(t.first + e, t.second * c);
        return r;
    }

    /// Quotient and remainder; coefficients live in a field.
    static std::pair<Poly, Poly> divrem(Poly a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero();
        Poly q;
        Cyclo lead_inv = b.leading().inverse();
        while (!a.is_zero() && a.degree() >= b.degree()) {
            long e = a.degree() - b.degree();
            Cyclo c = a.leading() * lead_inv;
            Poly m = Poly::monomial(e, c);
            q = q + m;
            a = a - b.scaled_shifted(c, e);
        }
        return {q, a};
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divrem(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.scaled_shifted(a.leading().inverse(), 0);  // monic
    }

    Cyclo eval(const Cyclo& x) const {
        // Horner over the sparse terms
        Cyclo acc;
        long prev = -1;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (prev < 0) {
                acc = it->second;
            } else {
                for (long k = 0; k < prev - it->first; ++k) acc *= x;
                acc += it->second;
            }
            prev = it->first;
        }
        if (prev < 0) return Cyclo::zero();
        Cyclo xp = Cyclo::one();
        for (long k = 0; k < prev; ++k) xp *= x;
        return acc * xp;
    }

private:
    std::vector<Term> t_;
};

inline int compare(const Poly& a, const Poly& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    for (size_t k = 0; k < ta.size(); ++k) {
        if (ta[k].first != tb[k].first) return ta[k].first < tb[k].first ? -1 : 1;
        int c = compare(ta[k].second, tb[k].second);
        if (c) return c;
    }
    return 0;
}

/// Exact element of K = Q(zeta_8)(s), s = q^{1/2}, kept in canonical form:
/// reduced fraction, monic denominator, nonnegative exponents.
class FieldElem {
public:
    FieldElem() : num_(), den_(Poly::constant(Cyclo::one())) {}
    FieldElem(long v) : num_(Poly::constant(Cyclo(v))), den_(Poly::constant(Cyclo::one())) {}
    FieldElem(Cyclo c) : num_(Poly::constant(std::move(c))), den_(Poly::constant(Cyclo::one())) {}

    static FieldElem zero() { return FieldElem(); }
    static FieldElem one() { return FieldElem(1); }
    static FieldElem rational(const Rational& r) { return FieldElem(Cyclo(r)); }
    static FieldElem zeta(long k = 1) { return FieldElem(Cyclo::zeta_pow(k)); }

    /// s^k for any integer k.
    static FieldElem s_pow(long k) {
        FieldElem r;
        if (k >= 0) {
            r.num_ = Poly::monomial(k, Cyclo::one());
        } else {
            r.num_ = Poly::constant(Cyclo::one());
            r.den_ = Poly::monomial(-k, Cyclo::one());
        }
        return r;
    }
    /// q^k = s^{2k}.
    static FieldElem q_pow(long k) { return s_pow(2 * k); }

    static FieldElem make(Poly num, Poly den) {
        FieldElem r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        r.canonicalize();
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    bool operator==(const FieldElem& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem operator-() const {
        FieldElem r = *this;
        r.num_ = -r.num_;
        return r;
    }

    FieldElem operator+(const FieldElem& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        FieldElem r;
        if (den_ == o.den_) {
            r.num_ = num_ + o.num_;
            r.den_ = den_;
        } else {
            r.num_ = num_ * o.den_ + o.num_ * den_;
            r.den_ = den_ * o.den_;
        }
        r.canonicalize();
        return r;
    }
    FieldElem operator-(const FieldElem& o) const { return *this + (-o); }

    FieldElem operator*(const FieldElem& o) const {
        if (is_zero() || o.is_zero()) return FieldElem();
        FieldElem r;
        r.num_ = num_ * o.num_;
        r.den_ = den_ * o.den_;
        r.canonicalize();
        return r;
    }

    FieldElem inverse() const {
        if (is_zero()) throw DivisionByZero();
        FieldElem r;
        r.num_ = den_;
        r.den_ = num_;
        r.canonicalize();
        return r;
    }

    FieldElem operator/(const FieldElem& o) const {
        if (o.is_zero()) throw DivisionByZero();
        return *this * o.inverse();
    }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

    FieldElem pow(long e) const {
        if (e == 0) return one();
        if (e < 0) return inverse().pow(-e);
        FieldElem base = *this, acc = one();
        while (e) {
            if (e & 1) acc *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return acc;
    }

    /// Substitute s = v (exact rational); throws on a pole.
    Cyclo eval_at(const Rational& v) const {
        Cyclo x(v);
        Cyclo d = den_.eval(x);
        if (d.is_zero()) throw DivisionByZero();
        return num_.eval(x) * d.inverse();
    }

    std::string str() const;
    static FieldElem parse(const std::string& text);

private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(Cyclo::one());
            return;
        }
        if (!den_.is_one()) {
            if (den_.is_zero()) throw DivisionByZero();
            // pull out the common power of s cheaply
            long shift = std::min(num_.low_degree(), den_.low_degree());
            if (shift > 0) {
                num_ = num_.scaled_shifted(Cyclo::one(), -shift);
                den_ = den_.scaled_shifted(Cyclo::one(), -shift);
            }
            if (!den_.is_monomial()) {
                Poly g = Poly::gcd(num_, den_);
                if (!g.is_one() && !(g.degree() == 0)) {
                    num_ = Poly::divrem(num_, g).first;
                    den_ = Poly::divrem(den_, g).first;
                }
            }
            Cyclo lead = den_.leading();
            if (lead != Cyclo::one()) {
                Cyclo inv = lead.inverse();
                num_ = num_.scaled_shifted(inv, 0);
                den_ = den_.scaled_shifted(inv, 0);
            }
        }
    }

    Poly num_, den_;
};

inline FieldElem operator*(long a, const FieldElem& b) { return FieldElem(a) * b; }

inline int compare(const FieldElem& a, const FieldElem& b) {
    int c = compare(a.num(), b.num());
    if (c) return c;
    return compare(a.den(), b.den());
}

// ---------------------------------------------------------------------------
// text form: polynomial in s over Q(zeta), zeta written "z", e.g. "(s^4-1)/s^2"

namespace detail {

inline std::string poly_str(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& ts = p.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.str();
        bool composite = cs.find('+') != std::string::npos ||
                         cs.find('-', 1) != std::string::npos;
        std::string piece;
        if (e == 0) {
            piece = composite ? "(" + cs + ")" : cs;
        } else {
            std::string spow = e == 1 ? "s" : "s^" + std::to_string(e);
            if (composite)
                piece = "(" + cs + ")*" + spow;
            else if (cs == "1")
                piece = spow;
            else if (cs == "-1")
                piece = "-" + spow;
            else
                piece = cs + "*" + spow;
        }
        if (!out.empty() && piece[0] != '-') out += "+";
        out += piece;
    }
    return out;
}

class ScalarParser {
public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    FieldElem run() {
        FieldElem v = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    FieldElem expr() {
        skip();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip();
        }
        FieldElem v = term();
        if (neg) v = -v;
        for (;;) {
            skip();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                FieldElem rhs = term_after_sign(c == '-');
                v += rhs;
            } else {
                return v;
            }
        }
    }
    FieldElem term_after_sign(bool neg) {
        FieldElem v = term();
        return neg ? -v : v;
    }
    FieldElem term() {
        FieldElem v = factor();
        for (;;) {
            skip();
            char c = peek();
            if (c == '*') {
                get();
                v *= factor();
            } else if (c == '/') {
                get();
                FieldElem d = factor();
                if (d.is_zero()) throw DivisionByZero();
                v /= d;
            } else {
                return v;
            }
        }
    }
    FieldElem factor() {
        skip();
        char c = peek();
        FieldElem v;
        if (c == '(') {
            get();
            v = expr();
            skip();
            if (get() != ')') fail("expected ')'");
        } else if (c == 's' || c == 'z') {
            get();
            v = (c == 's') ? FieldElem::s_pow(1) : FieldElem::zeta(1);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            v = FieldElem::rational(Rational(integer()));
        } else {
            fail("unexpected character");
        }
        skip();
        if (peek() == '^') {
            get();
            skip();
            bool neg = false;
            if (peek() == '-') {
                get();
                neg = true;
            }
            long e = integer();
            v = v.pow(neg ? -e : e);
        }
        return v;
    }
    long integer() {
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
        return v;
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("scalar parse error at position " +
                                    std::to_string(pos_) + ": " + why);
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline std::string FieldElem::str() const {
    std::string n = detail::poly_str(num_);
    if (den_.is_one()) return n;
    std::string d = detail::poly_str(den_);
    bool nwrap = num_.terms().size() > 1;
    bool dwrap = den_.terms().size() > 1 || !den_.is_monomial() ||
                 d.find('*') != std::string::npos;
    std::string out = nwrap ? "(" + n + ")" : n;
    out += "/";
    out += dwrap ? "(" + d + ")" : d;
    return out;
}

inline FieldElem FieldElem::parse(const std::string& text) {
    return detail::ScalarParser(text).run();
}

}  // namespace qaffine
