#pragma once

#include <cstdint>
#include <type_traits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qaffine {

/// Exact rational with an inline word-sized fast path and an automatic
/// promotion to GMP when intermediates overflow. Always canonical
/// (gcd-reduced, positive denominator).
class Rational {
public:
    Rational() = default;
    template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
    Rational(T v) : n_(static_cast<long long>(v)) {}
    Rational(long long num, long long den) : n_(num), d_(den) {
        if (d_ == 0) throw std::domain_error("Rational: zero denominator");
        normalize_small();
    }
    explicit Rational(const mpq_class& v) { set_big(v); }

    bool is_small() const { return !big_; }
    bool is_zero() const { return big_ ? *big_ == 0 : n_ == 0; }
    bool is_negative() const { return big_ ? *big_ < 0 : n_ < 0; }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class v(static_cast<long>(n_), static_cast<long>(d_));
        v.canonicalize();
        return v;
    }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        Rational r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }

    Rational operator+(const Rational& o) const {
        if (is_small() && o.is_small()) {
            long long num, t1, t2, den;
            if (!__builtin_mul_overflow(n_, o.d_, &t1) &&
                !__builtin_mul_overflow(o.n_, d_, &t2) &&
                !__builtin_add_overflow(t1, t2, &num) &&
                !__builtin_mul_overflow(d_, o.d_, &den)) {
                Rational r;
                r.n_ = num;
                r.d_ = den;
                r.normalize_small();
                return r;
            }
        }
        return Rational(mpq_class(to_mpq() + o.to_mpq()));
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }

    Rational operator*(const Rational& o) const {
        if (is_small() && o.is_small()) {
            // cross-reduce first so products stay in range longer
            long long g1 = std::gcd(n_ < 0 ? -n_ : n_, o.d_);
            long long g2 = std::gcd(o.n_ < 0 ? -o.n_ : o.n_, d_);
            long long a = n_ / (g1 ? g1 : 1), b = o.d_ / (g1 ? g1 : 1);
            long long c = o.n_ / (g2 ? g2 : 1), d = d_ / (g2 ? g2 : 1);
            long long num, den;
            if (!__builtin_mul_overflow(a, c, &num) &&
                !__builtin_mul_overflow(d, b, &den)) {
                Rational r;
                r.n_ = num;
                r.d_ = den;
                return r;  // already reduced
            }
        }
        return Rational(mpq_class(to_mpq() * o.to_mpq()));
    }

    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        if (o.is_small()) {
            Rational flip;
            flip.n_ = o.n_ < 0 ? -o.d_ : o.d_;
            flip.d_ = o.n_ < 0 ? -o.n_ : o.n_;
            return *this * flip;
        }
        return Rational(mpq_class(to_mpq() / o.to_mpq()));
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const {
        if (is_small() && o.is_small()) return n_ == o.n_ && d_ == o.d_;
        return to_mpq() == o.to_mpq();
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator==(long long v) const {
        if (is_small()) return d_ == 1 && n_ == v;
        return *big_ == static_cast<long>(v);
    }
    bool operator!=(long long v) const { return !(*this == v); }
    bool operator<(const Rational& o) const {
        if (is_small() && o.is_small()) {
            long long t1, t2;
            if (!__builtin_mul_overflow(n_, o.d_, &t1) &&
                !__builtin_mul_overflow(o.n_, d_, &t2))
                return t1 < t2;
        }
        return to_mpq() < o.to_mpq();
    }
    bool operator<(long long v) const { return *this < Rational(v); }
    bool operator>(long long v) const { return Rational(v) < *this; }

    Rational inverse() const { return Rational(1) / *this; }

    std::string get_str() const {
        if (big_) return big_->get_str();
        std::string s = std::to_string(n_);
        if (d_ != 1) s += "/" + std::to_string(d_);
        return s;
    }

    /// -1 / 0 / +1 three-way order for use in map keys.
    int cmp(const Rational& o) const {
        if (*this == o) return 0;
        return *this < o ? -1 : 1;
    }

private:
    void normalize_small() {
        if (d_ < 0) {
            n_ = -n_;
            d_ = -d_;
        }
        long long g = std::gcd(n_ < 0 ? -n_ : n_, d_);
        if (g > 1) {
            n_ /= g;
            d_ /= g;
        }
    }
    void set_big(const mpq_class& v) {
        if (v.get_num().fits_slong_p() && v.get_den().fits_slong_p()) {
            n_ = v.get_num().get_si();
            d_ = v.get_den().get_si();
            big_.reset();
        } else {
            big_ = std::make_shared<const mpq_class>(v);
        }
    }

    long long n_ = 0, d_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

inline Rational operator/(long long a, const Rational& b) { return Rational(a) / b; }
inline Rational operator*(long long a, const Rational& b) { return Rational(a) * b; }

}  // namespace qaffine
