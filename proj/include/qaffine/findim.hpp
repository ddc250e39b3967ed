#pragma once

#include <optional>

#include "qaffine/root_data.hpp"

namespace qaffine {

struct FamilyMismatch : std::invalid_argument {
    FamilyMismatch() : std::invalid_argument("highest-weight data belongs to another family") {}
};
struct InsufficientOrder : std::runtime_error {
    InsufficientOrder() : std::runtime_error("series order too small to reconstruct") {}
};

/// Highest-weight eigenvalue series: up[i][r] = Upsilon^+_{i,r} and
/// um[i][r] = Upsilon^-_{i,-r} for r = 0..order, rows 1..n.
struct HighestWeightData {
    Family family;
    int n = 1;
    int order = 0;
    std::vector<std::vector<FieldElem>> up, um;
    FieldElem gamma_half = FieldElem::one();
};

/// Drinfeld polynomials P_i (coefficient lists, constant term 1) together
/// with the family constants of the classification theorem.
struct DrinfeldPolySet {
    Family family;
    int n = 1;
    std::vector<std::vector<FieldElem>> P;  // P[i][k], rows 1..n

    long deg(int i) const {
        const auto& p = P[i];
        long d = -1;
        for (size_t k = 0; k < p.size(); ++k)
            if (!p[k].is_zero()) d = (long)k;
        return d < 0 ? 0 : d;
    }
};

/// c_i of the classification theorem.
inline long hw_c(Family fam, int n, int i) {
    switch (fam) {
        case Family::osp1_2n_1: return i == n ? 2 : 1;
        case Family::sl1_2n_2: return 1;
        case Family::osp2_2n_2: return i == n ? 1 : 2;
        default: throw WrongFamily("highest-weight constants exist for super families");
    }
}
/// d_i of the classification theorem.
inline long hw_d(Family fam, int n, int i) {
    switch (fam) {
        case Family::osp1_2n_1: return 1;
        case Family::sl1_2n_2: return 1;
        case Family::osp2_2n_2: return i == n ? 1 : 2;
        default: throw WrongFamily("highest-weight constants exist for super families");
    }
}
/// t_i = (sqrt(-1) q^{1/2})^{(alpha_i, alpha_i)} at the sec3 normalisation.
inline FieldElem hw_t(Family fam, int n, int i) {
    RootDatum rd = build_datum(fam, n, Norm::sec3);
    return (FieldElem::zeta(2) * FieldElem::s_pow(1)).pow(rd.len(i));
}
/// (-1)^{n-i} of the classification condition (super side).
inline FieldElem hw_sign(int n, int i) {
    return FieldElem(((n - i) % 2) ? -1 : 1);
}

namespace detail {

/// Coefficients of N(x)/D(x) at x = 0 up to the given order; D(0) != 0.
inline std::vector<FieldElem> series_div(const std::vector<FieldElem>& N,
                                         const std::vector<FieldElem>& D,
                                         int order) {
    if (D.empty() || D[0].is_zero()) throw DivisionByZero();
    FieldElem d0 = D[0].inverse();
    std::vector<FieldElem> out(order + 1, FieldElem::zero());
    for (int k = 0; k <= order; ++k) {
        FieldElem acc = k < (int)N.size() ? N[k] : FieldElem::zero();
        for (int m = 1; m <= k && m < (int)D.size(); ++m) acc -= D[m] * out[k - m];
        out[k] = acc * d0;
    }
    return out;
}

/// Substitute c x^d into a polynomial: returns coefficients in x.
inline std::vector<FieldElem> subst(const std::vector<FieldElem>& P,
                                    const FieldElem& cfac, long d) {
    long deg = (long)P.size() - 1;
    std::vector<FieldElem> out(deg * d + 1, FieldElem::zero());
    FieldElem cp = FieldElem::one();
    for (long k = 0; k <= deg; ++k) {
        out[k * d] = P[k] * cp;
        cp *= cfac;
    }
    return out;
}

/// Reverse a polynomial of the given degree (expansion variable 1/x).
inline std::vector<FieldElem> reversed(const std::vector<FieldElem>& P, long deg) {
    std::vector<FieldElem> out(deg + 1, FieldElem::zero());
    for (long k = 0; k <= deg && k < (long)P.size(); ++k) out[deg - k] = P[k];
    return out;
}

}  // namespace detail

/// Expand the classification condition
///   Upsilon^+_i(x) = t_i^{c_i deg} P_i(eps t_i^{-2c_i} x^{d_i}) / P_i(eps x^{d_i})
/// at 0 (plus series) and at infinity (minus series).
inline HighestWeightData hw_from_polys(const DrinfeldPolySet& polys, int order) {
    if (order < 0) throw OutOfRange("hw_from_polys: order must be >= 0");
    HighestWeightData hw;
    hw.family = polys.family;
    hw.n = polys.n;
    hw.order = order;
    hw.up.assign(polys.n + 1, {});
    hw.um.assign(polys.n + 1, {});
    for (int i = 1; i <= polys.n; ++i) {
        long c = hw_c(polys.family, polys.n, i), d = hw_d(polys.family, polys.n, i);
        FieldElem t = hw_t(polys.family, polys.n, i);
        FieldElem eps = hw_sign(polys.n, i);
        long deg = polys.deg(i);
        FieldElem lead = t.pow(c * deg);
        std::vector<FieldElem> num = detail::subst(polys.P[i], eps * t.pow(-2 * c), d);
        std::vector<FieldElem> den = detail::subst(polys.P[i], eps, d);
        hw.up[i] = detail::series_div(num, den, order);
        for (auto& v : hw.up[i]) v *= lead;
        // at infinity: reverse both polynomials (variable 1/x)
        std::vector<FieldElem> rnum = detail::reversed(num, deg * d);
        std::vector<FieldElem> rden = detail::reversed(den, deg * d);
        hw.um[i] = detail::series_div(rnum, rden, order);
        for (auto& v : hw.um[i]) v *= lead;
    }
    return hw;
}

/// The translation between the super and dual highest-weight series:
/// Upsilon^+_{i,r} = (-1)^{(n-i) r c} Upsilon'^+_{i,r} (either direction).
inline HighestWeightData translate_hw(const HighestWeightData& data, Family target) {
    Family from = data.family;
    if (dual_of(from) != target) throw FamilyMismatch();
    Family super = is_super(from) ? from : target;
    RootDatum rd = build_datum(super, data.n, Norm::sec3);
    AuxConstants aux = aux_constants(rd);
    HighestWeightData out = data;
    out.family = target;
    for (int i = 1; i <= data.n; ++i)
        for (int r = 0; r <= data.order; ++r) {
            FieldElem sign = o_pow(aux, i, r, data.n);
            out.up[i][r] = data.up[i][r] * sign;
            out.um[i][r] = data.um[i][r] * sign.inverse();
        }
    return out;
}

/// Multiply-back oracle for the classification condition at 0 and infinity,
/// plus the Upsilon^+_{i,0} Upsilon^-_{i,0} = 1 constraint.
inline bool check_hw_consistency(const HighestWeightData& hw,
                                 const DrinfeldPolySet& polys, int order,
                                 std::string* why = nullptr) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    if (order > hw.order) return fail("order exceeds the stored series");
    // the dual families satisfy the same condition without the (-1)^{n-i}
    bool dual = !is_super(hw.family);
    Family super = dual ? dual_of(hw.family) : hw.family;
    for (int i = 1; i <= hw.n; ++i) {
        long c = hw_c(super, hw.n, i), d = hw_d(super, hw.n, i);
        FieldElem t = hw_t(super, hw.n, i);
        FieldElem eps = dual ? FieldElem::one() : hw_sign(hw.n, i);
        long deg = polys.deg(i);
        FieldElem lead = t.pow(c * deg);
        std::vector<FieldElem> num = detail::subst(polys.P[i], eps * t.pow(-2 * c), d);
        std::vector<FieldElem> den = detail::subst(polys.P[i], eps, d);
        // at 0: up * den == lead * num, coefficientwise to the order
        for (int m = 0; m <= order; ++m) {
            FieldElem acc;
            for (int k = 0; k <= m && k < (int)den.size(); ++k)
                acc += den[k] * hw.up[i][m - k];
            FieldElem want =
                m < (int)num.size() ? num[m] * lead : FieldElem::zero();
            if (!(acc == want))
                return fail("plus series inconsistent at row " + std::to_string(i) +
                            " order " + std::to_string(m));
        }
        // at infinity
        std::vector<FieldElem> rnum = detail::reversed(num, deg * d);
        std::vector<FieldElem> rden = detail::reversed(den, deg * d);
        for (int m = 0; m <= order; ++m) {
            FieldElem acc;
            for (int k = 0; k <= m && k < (int)rden.size(); ++k)
                acc += rden[k] * hw.um[i][m - k];
            FieldElem want =
                m < (int)rnum.size() ? rnum[m] * lead : FieldElem::zero();
            if (!(acc == want))
                return fail("minus series inconsistent at row " + std::to_string(i) +
                            " order " + std::to_string(m));
        }
        if (!(hw.up[i][0] * hw.um[i][0]).is_one())
            return fail("Upsilon^+_0 Upsilon^-_0 != 1 at row " + std::to_string(i));
    }
    return true;
}

struct ClassifyVerdict {
    bool satisfies = false;
    std::optional<DrinfeldPolySet> polys;
    std::string obstruction;
};

/// Rational reconstruction of the Drinfeld polynomials from the plus series,
/// trying degrees 0..order/2 and verifying the full condition.
inline ClassifyVerdict classify_check(const HighestWeightData& hw) {
    ClassifyVerdict v;
    DrinfeldPolySet polys;
    polys.family = hw.family;
    polys.n = hw.n;
    polys.P.assign(hw.n + 1, {FieldElem::one()});
    int order = hw.order;
    for (int i = 1; i <= hw.n; ++i) {
        long c = hw_c(hw.family, hw.n, i), d = hw_d(hw.family, hw.n, i);
        FieldElem t = hw_t(hw.family, hw.n, i);
        FieldElem eps = hw_sign(hw.n, i);
        bool found = false;
        for (long D = 0; 2 * D <= order && !found; ++D) {
            // the r=0 coefficient is forced to t^{cD}
            if (!(hw.up[i][0] == t.pow(c * D))) continue;
            // unknowns p_1..p_D; equations from S(x) P(eps x^d) = lead P(eps u x^d)
            // with u = t^{-2c}; row m: sum_k p_k eps^k (S_{m-dk} - lead u^k [dk==m]) = lead [m==0] - S_m
            long rows = order + 1;
            std::vector<std::vector<FieldElem>> M(rows,
                                                  std::vector<FieldElem>(D + 1));
            FieldElem lead = t.pow(c * D), u = t.pow(-2 * c);
            for (long m = 0; m < rows; ++m) {
                for (long k = 1; k <= D; ++k) {
                    FieldElem a;
                    if (m - d * k >= 0) a += hw.up[i][m - d * k];
                    if (d * k == m) a -= lead * u.pow(k);
                    M[m][k - 1] = a * eps.pow(k);
                }
                FieldElem b;
                if (m == 0) b += lead;
                b -= hw.up[i][m];
                M[m][D] = b;  // augmented column
            }
            // Gaussian elimination
            long rank = 0;
            for (long col = 0; col < D && rank < rows; ++col) {
                long piv = -1;
                for (long r = rank; r < rows; ++r)
                    if (!M[r][col].is_zero()) {
                        piv = r;
                        break;
                    }
                if (piv < 0) continue;
                std::swap(M[rank], M[piv]);
                FieldElem inv = M[rank][col].inverse();
                for (long cc = col; cc <= D; ++cc) M[rank][cc] *= inv;
                for (long r = 0; r < rows; ++r) {
                    if (r == rank || M[r][col].is_zero()) continue;
                    FieldElem f = M[r][col];
                    for (long cc = col; cc <= D; ++cc) M[r][cc] -= f * M[rank][cc];
                }
                ++rank;
            }
            if (rank < D) throw InsufficientOrder();
            bool consistent = true;
            for (long r = rank; r < rows; ++r)
                if (!M[r][D].is_zero()) consistent = false;
            if (!consistent) continue;
            std::vector<FieldElem> P(D + 1, FieldElem::zero());
            P[0] = FieldElem::one();
            for (long k = 1; k <= D; ++k) P[k] = M[k - 1][D];
            polys.P[i] = P;
            // verify the full condition including the minus series
            DrinfeldPolySet probe = polys;
            HighestWeightData rebuilt = hw_from_polys(probe, order);
            bool ok = true;
            for (int m = 0; m <= order && ok; ++m)
                ok = rebuilt.up[i][m] == hw.up[i][m] && rebuilt.um[i][m] == hw.um[i][m];
            found = ok;
        }
        if (!found) {
            if (!(hw.up[i][0] == FieldElem::one()) &&
                !([&] {
                    for (long D = 0; 2 * D <= order; ++D)
                        if (hw.up[i][0] == hw_t(hw.family, hw.n, i)
                                               .pow(hw_c(hw.family, hw.n, i) * D))
                            return true;
                    return false;
                }()))
                v.obstruction = "row " + std::to_string(i) +
                                ": Upsilon^+_{i,0} is not an admissible power of t_i";
            else
                v.obstruction =
                    "row " + std::to_string(i) + ": no polynomial matches the series";
            return v;
        }
    }
    v.satisfies = true;
    v.polys = polys;
    return v;
}

// ---------------------------------------------------------------------------
// the explicit 2-dimensional type-s module of the rank-1 quantum supergroup

using Matrix2 = std::array<std::array<FieldElem, 2>, 2>;

inline Matrix2 m2_mul(const Matrix2& a, const Matrix2& b) {
    Matrix2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            FieldElem acc;
            for (int k = 0; k < 2; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}
inline Matrix2 m2_add(const Matrix2& a, const Matrix2& b) {
    Matrix2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}
inline Matrix2 m2_scale(const FieldElem& c, const Matrix2& a) {
    Matrix2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = c * a[i][j];
    return r;
}
inline bool m2_eq(const Matrix2& a, const Matrix2& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!(a[i][j] == b[i][j])) return false;
    return true;
}

struct Osp12Rep {
    Matrix2 E, F, K, Kinv;
};

/// The smallest type-s irreducible module: E, F, K as displayed, with
/// sqrt(-1) realised as zeta^2.
inline Osp12Rep osp12_rep() {
    FieldElem i2 = FieldElem::zeta(2);
    FieldElem s = FieldElem::s_pow(1);
    Osp12Rep m;
    m.E = {{{FieldElem::zero(), i2 / (s - s.inverse())},
            {FieldElem::zero(), FieldElem::zero()}}};
    m.F = {{{FieldElem::zero(), FieldElem::zero()},
            {FieldElem::one(), FieldElem::zero()}}};
    m.K = {{{i2 * s, FieldElem::zero()}, {FieldElem::zero(), i2 * s.inverse()}}};
    m.Kinv = {{{(i2 * s).inverse(), FieldElem::zero()},
               {FieldElem::zero(), (i2 * s.inverse()).inverse()}}};
    return m;
}

/// Twist by iota_eps at the rank-1 level: K -> eps K, E -> eps E, F -> F.
inline Osp12Rep twist_osp12(const Osp12Rep& m, int eps) {
    Osp12Rep t = m;
    FieldElem e(eps);
    t.K = m2_scale(e, m.K);
    t.Kinv = m2_scale(e, m.Kinv);  // eps^{-1} = eps
    t.E = m2_scale(e, m.E);
    return t;
}

}  // namespace qaffine
