#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "qaffine/rational.hpp"

namespace qaffine {

/// Element of the 8th cyclotomic field Q(zeta), zeta = primitive 8th root of
/// unity, written a + b*zeta + c*zeta^2 + d*zeta^3 with zeta^4 = -1.
/// zeta^2 plays the role of sqrt(-1), zeta that of (-1)^{1/4}.
class Cyclo {
public:
    Cyclo() : c_{} {}
    Cyclo(long v) : c_{} { c_[0] = v; }
    Cyclo(const Rational& v) : c_{} { c_[0] = v; }

    static Cyclo zero() { return Cyclo(); }
    static Cyclo one() { return Cyclo(1); }

    /// zeta^k for any integer k (reduced mod 8, zeta^4 = -1).
    static Cyclo zeta_pow(long k) {
        Cyclo r;
        long m = ((k % 8) + 8) % 8;
        if (m < 4)
            r.c_[m] = 1;
        else
            r.c_[m - 4] = -1;
        return r;
    }

    const Rational& coeff(int i) const { return c_[i]; }
    Rational& coeff(int i) { return c_[i]; }

    bool is_zero() const {
        return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    /// True when the zeta and zeta^3 components vanish (element of Q(i)).
    bool in_gaussian_part() const { return c_[1] == 0 && c_[3] == 0; }

    bool operator==(const Cyclo& o) const { return c_ == o.c_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo operator-() const {
        Cyclo r;
        for (int i = 0; i < 4; ++i) r.c_[i] = -c_[i];
        return r;
    }

    Cyclo& operator+=(const Cyclo& o) {
        for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Cyclo& operator-=(const Cyclo& o) {
        for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Cyclo operator+(const Cyclo& o) const {
        Cyclo r = *this;
        r += o;
        return r;
    }
    Cyclo operator-(const Cyclo& o) const {
        Cyclo r = *this;
        r -= o;
        return r;
    }

    Cyclo operator*(const Cyclo& o) const {
        Cyclo r;
        for (int i = 0; i < 4; ++i) {
            if (c_[i] == 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (o.c_[j] == 0) continue;
                int k = i + j;
                if (k < 4)
                    r.c_[k] += c_[i] * o.c_[j];
                else
                    r.c_[k - 4] -= c_[i] * o.c_[j];
            }
        }
        return r;
    }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    /// Galois conjugate zeta -> zeta^k, k odd.
    Cyclo galois(int k) const {
        Cyclo r;
        for (int i = 0; i < 4; ++i) {
            if (c_[i] == 0) continue;
            int m = (i * k) % 8;
            if (m < 4)
                r.c_[m] += c_[i];
            else
                r.c_[m - 4] -= c_[i];
        }
        return r;
    }

    Cyclo inverse() const {
        if (is_zero()) throw std::domain_error("Cyclo: division by zero");
        // x^{-1} = prod of the three nontrivial conjugates / norm
        Cyclo p = galois(3) * galois(5) * galois(7);
        Cyclo n = *this * p;
        // the norm lands in Q
        if (!n.is_rational()) throw std::logic_error("Cyclo: norm not rational");
        Rational inv = n.c_[0].inverse();
        Cyclo r;
        for (int i = 0; i < 4; ++i) r.c_[i] = p.c_[i] * inv;
        return r;
    }

    Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

    std::string str() const;

private:
    std::array<Rational, 4> c_;  // 1, zeta, zeta^2, zeta^3 components
};

inline std::string Cyclo::str() const {
    static const char* pw[4] = {"", "z", "z^2", "z^3"};
    std::string out;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (c_[i] == 0) continue;
        Rational a = c_[i];
        bool neg = a.is_negative();
        if (neg) a = -a;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        std::string mag = a.get_str();
        if (i == 0) {
            out += mag;
        } else {
            if (mag != "1") out += mag + "*";
            out += pw[i];
        }
        first = false;
    }
    if (first) out = "0";
    return out;
}

/// Total order for use as a map key; no algebraic meaning.
inline int compare(const Cyclo& a, const Cyclo& b) {
    for (int i = 0; i < 4; ++i) {
        int c = a.coeff(i).cmp(b.coeff(i));
        if (c) return c;
    }
    return 0;
}

}  // namespace qaffine
