#pragma once

#include <stdexcept>

#include "qaffine/field.hpp"

namespace qaffine {

struct DegenerateBase : std::domain_error {
    DegenerateBase() : std::domain_error("q-bracket base has z - z^{-1} = 0") {}
};
struct OutOfRange : std::out_of_range {
    explicit OutOfRange(const char* what) : std::out_of_range(what) {}
};

/// [k]_z = (z^k - z^{-k})/(z - z^{-1}), with [0]_z = 1.
inline FieldElem q_int(long k, const FieldElem& z) {
    if (z.is_zero()) throw DegenerateBase();
    if (k == 0) return FieldElem::one();
    FieldElem zi = z.inverse();
    FieldElem den = z - zi;
    if (den.is_zero()) throw DegenerateBase();
    return (z.pow(k) - zi.pow(k)) / den;
}

/// [k2/2]_z given a square root of z; exponent passed doubled.
inline FieldElem q_int_half(long k2, const FieldElem& z_half) {
    if (k2 == 0) return FieldElem::one();
    FieldElem z = z_half * z_half;
    FieldElem den = z - z.inverse();
    if (den.is_zero()) throw DegenerateBase();
    return (z_half.pow(k2) - z_half.pow(-k2)) / den;
}

inline FieldElem q_factorial(long n, const FieldElem& z) {
    FieldElem r = FieldElem::one();
    for (long i = 1; i <= n; ++i) r *= q_int(i, z);
    return r;
}

/// Gaussian binomial [N over k]_z.
inline FieldElem q_binom(long N, long k, const FieldElem& z) {
    if (k < 0 || k > N) throw OutOfRange("q_binom: need 0 <= k <= N");
    return q_factorial(N, z) / (q_factorial(N - k, z) * q_factorial(k, z));
}

/// {k}_b = (wp^k - wp^{-k})/(q_i - q_i^{-1}); exponent passed doubled and
/// taken against wp^{1/2} so half-integer braces stay exact.
inline FieldElem brace_general(long k2, const FieldElem& wp_half, const FieldElem& qi) {
    FieldElem den = qi - qi.inverse();
    if (den.is_zero()) throw DegenerateBase();
    return (wp_half.pow(k2) - wp_half.pow(-k2)) / den;
}

}  // namespace qaffine
