#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qaffine/qseries.hpp"

namespace qaffine {

enum class Family {
    osp1_2n_1,  // osp(1|2n)^(1)
    sl1_2n_2,   // sl(1|2n)^(2)
    osp2_2n_2,  // osp(2|2n)^(2)
    A2n_2,      // A_{2n}^(2)
    Bn_1,       // B_n^(1)
    Dnp1_2      // D_{n+1}^(2)
};

inline bool is_super(Family f) {
    return f == Family::osp1_2n_1 || f == Family::sl1_2n_2 || f == Family::osp2_2n_2;
}

inline Family dual_of(Family f) {
    switch (f) {
        case Family::osp1_2n_1: return Family::A2n_2;
        case Family::sl1_2n_2: return Family::Bn_1;
        case Family::osp2_2n_2: return Family::Dnp1_2;
        case Family::A2n_2: return Family::osp1_2n_1;
        case Family::Bn_1: return Family::sl1_2n_2;
        case Family::Dnp1_2: return Family::osp2_2n_2;
    }
    throw std::logic_error("bad family");
}

inline std::string family_name(Family f) {
    switch (f) {
        case Family::osp1_2n_1: return "osp1|2n^(1)";
        case Family::sl1_2n_2: return "sl1|2n^(2)";
        case Family::osp2_2n_2: return "osp2|2n^(2)";
        case Family::A2n_2: return "A2n^(2)";
        case Family::Bn_1: return "Bn^(1)";
        case Family::Dnp1_2: return "Dn+1^(2)";
    }
    throw std::logic_error("bad family");
}

inline Family family_from_name(const std::string& s) {
    for (Family f : {Family::osp1_2n_1, Family::sl1_2n_2, Family::osp2_2n_2,
                     Family::A2n_2, Family::Bn_1, Family::Dnp1_2})
        if (family_name(f) == s) return f;
    throw std::invalid_argument("unknown family: " + s);
}

/// Normalisation of the bilinear form. Sec3: (alpha_n,alpha_n)=1 everywhere.
/// Sec4: (alpha_n,alpha_n)=2 for osp(2|2n)^(2), 1 otherwise.
enum class Norm { sec3, sec4 };

struct UnsupportedRank : std::invalid_argument {
    UnsupportedRank() : std::invalid_argument("rank must be >= 1") {}
};
struct IndexOutOfRange : std::out_of_range {
    IndexOutOfRange() : std::out_of_range("node index out of range") {}
};
struct WrongFamily : std::invalid_argument {
    explicit WrongFamily(const char* w) : std::invalid_argument(w) {}
};

/// Root data for one family at one normalisation: Gram matrix of the simple
/// roots (indices 0..n), Cartan matrix, parities, deformation scalars.
struct RootDatum {
    Family family;
    int n = 1;
    Norm norm = Norm::sec4;
    long d = 1;                              // (eps_i, eps_j) = d delta_ij
    std::vector<std::vector<long>> gram;     // (alpha_i, alpha_j), 0..n
    std::vector<std::vector<long>> cartan;   // a_ij
    std::vector<bool> odd;                   // node parity
    FieldElem wp, wp_half;                   // super families: wp = (-1)^{1/l(alpha_n)} q
    FieldElem t_half;                        // dual families: t^{1/2}, default zeta^2 s

    long len(int i) const { return gram.at(i).at(i); }  // l(alpha_i) = (alpha_i,alpha_i)
    long a(int i, int j) const { return cartan.at(i).at(j); }

    /// q_i = q^{(alpha_i,alpha_i)/2} = s^{(alpha_i,alpha_i)}.
    FieldElem q_i(int i) const { return FieldElem::s_pow(len(i)); }
    /// t_i = (t^{1/2})^{(alpha_i,alpha_i)}.
    FieldElem t_i(int i) const { return t_half.pow(len(i)); }

    /// Mode index set I_g: for osp(2|2n)^(2) the pairs (i, odd r) with i<n
    /// are excluded; everything else is allowed.
    bool mode_allowed(int i, long r) const {
        if (i < 1 || i > n) return false;
        if (family == Family::osp2_2n_2 || family == Family::Dnp1_2)
            return i == n || r % 2 == 0;
        return true;
    }

    /// Finite-part pairing, doubled: 2*(alpha_i, beta) for beta in the
    /// alpha-basis (indices 1..n, stored 0-based).
    long pair2(int i, const std::vector<int>& beta) const {
        long acc = 0;
        for (int j = 1; j <= n; ++j) acc += gram[i][j] * beta[j - 1];
        return 2 * acc;
    }

    /// 2*(alpha_i, lambda_1) with lambda_1 = alpha_1 + ... + alpha_n.
    long pair2_lambda1(int i) const {
        long acc = 0;
        for (int j = 1; j <= n; ++j) acc += gram[i][j];
        return 2 * acc;
    }
    /// 2*(alpha_i, lambda_n) = delta_{i,n} d.
    long pair2_lambdan(int i) const { return i == n ? d : 0; }
};

inline RootDatum build_datum(Family fam, int n, Norm norm) {
    if (n < 1) throw UnsupportedRank();
    RootDatum rd;
    rd.family = fam;
    rd.n = n;
    rd.norm = norm;
    bool long_n = (fam == Family::osp2_2n_2 || fam == Family::Dnp1_2);
    rd.d = (norm == Norm::sec4 && long_n) ? 2 : 1;

    // Simple roots in eps-coordinates (finite part); alpha_0 via the negative
    // of the relevant highest weight. Coordinates are doubled so the sl/osp2
    // half-expressions stay integral: vec[k] = 2 * (coefficient of eps_k).
    auto eps = [&](int k) {
        std::vector<long> v(n, 0);
        v[k - 1] = 2;
        return v;
    };
    std::vector<std::vector<long>> roots(n + 1, std::vector<long>(n, 0));
    for (int i = 1; i < n; ++i) {
        roots[i] = eps(i);
        roots[i][i] -= 2;  // eps_i - eps_{i+1}
    }
    roots[n] = eps(n);
    switch (fam) {
        case Family::osp1_2n_1:
        case Family::A2n_2:
            roots[0] = std::vector<long>(n, 0);
            roots[0][0] = -4;  // -2 eps_1
            break;
        case Family::sl1_2n_2:
        case Family::Bn_1:
            if (n == 1) {
                roots[0] = eps(1);
                roots[0][0] = -2;  // -eps_1
            } else {
                roots[0] = std::vector<long>(n, 0);
                roots[0][0] = -2;
                roots[0][1] = -2;  // -eps_1 - eps_2
            }
            break;
        case Family::osp2_2n_2:
        case Family::Dnp1_2:
            roots[0] = std::vector<long>(n, 0);
            roots[0][0] = -2;  // -eps_1
            break;
    }

    rd.gram.assign(n + 1, std::vector<long>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            long acc = 0;
            for (int k = 0; k < n; ++k) acc += roots[i][k] * roots[j][k];
            // (alpha_i,alpha_j) = d/4 * <doubled coords>
            if ((acc * rd.d) % 4 != 0) throw std::logic_error("non-integral Gram entry");
            rd.gram[i][j] = acc * rd.d / 4;
        }

    rd.cartan.assign(n + 1, std::vector<long>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            long num = 2 * rd.gram[i][j];
            if (num % rd.gram[i][i] != 0) throw std::logic_error("non-integral Cartan entry");
            rd.cartan[i][j] = num / rd.gram[i][i];
        }

    rd.odd.assign(n + 1, false);
    if (is_super(fam)) {
        rd.odd[n] = true;
        if (fam == Family::osp2_2n_2) rd.odd[0] = true;
    }

    // wp = (-1)^{1/l(alpha_n)} q, wp^{1/2} = (-1)^{1/(2 l(alpha_n))} q^{1/2},
    // with (-1)^{1/2} = zeta^2 and (-1)^{1/4} = zeta.
    long ln = rd.gram[n][n];
    if (ln == 1) {
        rd.wp = FieldElem::zeta(4) * FieldElem::q_pow(1);        // -q
        rd.wp_half = FieldElem::zeta(2) * FieldElem::s_pow(1);   // zeta^2 s
    } else if (ln == 2) {
        rd.wp = FieldElem::zeta(2) * FieldElem::q_pow(1);        // zeta^2 q
        rd.wp_half = FieldElem::zeta(1) * FieldElem::s_pow(1);   // zeta s
    } else {
        throw std::logic_error("unexpected l(alpha_n)");
    }
    rd.t_half = FieldElem::zeta(2) * FieldElem::s_pow(1);
    return rd;
}

/// Structure constants u_{i,j,r} of the super families.
inline FieldElem u_coeff(const RootDatum& rd, int i, int j, long r) {
    if (i < 1 || i > rd.n || j < 1 || j > rd.n) throw IndexOutOfRange();
    if (!is_super(rd.family)) throw WrongFamily("u_coeff needs a super family");
    if (r == 0) return FieldElem::zero();
    auto spow = [](long e) { return FieldElem::s_pow(e); };
    long ln = rd.len(rd.n);
    switch (rd.family) {
        case Family::osp1_2n_1:
            if (i == rd.n && j == rd.n)
                return spow(4 * r * ln) - spow(-4 * r * ln) - spow(2 * r * ln) +
                       spow(-2 * r * ln);
            // q_i^{r a_ij} = s^{2 r (alpha_i,alpha_j)}
            return spow(2 * r * rd.gram[i][j]) - spow(-2 * r * rd.gram[i][j]);
        case Family::sl1_2n_2: {
            if (i == rd.n && j == rd.n) {
                FieldElem v = spow(2 * r * ln) - spow(-2 * r * ln);
                return (r % 2 == 0) ? v : -v;
            }
            return spow(2 * r * rd.gram[i][j]) - spow(-2 * r * rd.gram[i][j]);
        }
        case Family::osp2_2n_2: {
            if (i == rd.n && j == rd.n) {
                FieldElem v = spow(2 * r * ln) - spow(-2 * r * ln);
                return (r % 2 == 0) ? v : -v;
            }
            if (r % 2 != 0) return FieldElem::zero();
            // (1+(-1)^r)(q_i^{r a_ij/2} - ...) = 2(s^{r(alpha_i,alpha_j)} - ...)
            return 2 * (spow(r * rd.gram[i][j]) - spow(-r * rd.gram[i][j]));
        }
        default: break;
    }
    throw std::logic_error("unreachable");
}

/// Structure constants u'_{i,j,r} of the dual (non-super) families.
inline FieldElem u_prime_coeff(const RootDatum& rd, int i, int j, long r) {
    if (i < 1 || i > rd.n || j < 1 || j > rd.n) throw IndexOutOfRange();
    if (is_super(rd.family)) throw WrongFamily("u_prime_coeff needs a dual family");
    if (r == 0) return FieldElem::zero();
    auto tpow = [&](long e2) { return rd.t_half.pow(e2); };  // t^{e2/2}
    long ln = rd.len(rd.n);
    switch (rd.family) {
        case Family::A2n_2: {
            if (i == rd.n && j == rd.n) {
                FieldElem sign = (r % 2 == 0) ? FieldElem(-1) : FieldElem(1);
                return (tpow(2 * r * ln) - tpow(-2 * r * ln)) *
                       (tpow(2 * r * ln) + tpow(-2 * r * ln) + sign);
            }
            // t_i^{r a_ij} = t^{r (alpha_i,alpha_j)}
            return tpow(2 * r * rd.gram[i][j]) - tpow(-2 * r * rd.gram[i][j]);
        }
        case Family::Bn_1:
            return tpow(2 * r * rd.gram[i][j]) - tpow(-2 * r * rd.gram[i][j]);
        case Family::Dnp1_2: {
            if (i == rd.n && j == rd.n) return tpow(2 * r * ln) - tpow(-2 * r * ln);
            if (r % 2 != 0) return FieldElem::zero();
            // t_i^{r a_ij / 2} = t^{r (alpha_i,alpha_j) / 2}
            return 2 * (tpow(r * rd.gram[i][j]) - tpow(-r * rd.gram[i][j]));
        }
        default: break;
    }
    throw std::logic_error("unreachable");
}

/// Taylor coefficients g_{ij,0..order} of f_ij(z)/h_ij(z) at z=0.
inline std::vector<FieldElem> g_series(const RootDatum& rd, int i, int j, int order) {
    if (i < 1 || i > rd.n || j < 1 || j > rd.n) throw IndexOutOfRange();
    if (order < 0) throw OutOfRange("g_series: order must be >= 0");
    long aij = rd.gram[i][j];  // (alpha_i, alpha_j)
    auto qp2 = [](long e2) { return FieldElem::s_pow(e2); };           // q^{e2/2}
    auto mqp2 = [](long e2) {                                          // (-q)^{e2/2}
        return (FieldElem::zeta(2) * FieldElem::s_pow(1)).pow(e2);
    };
    // f, h as coefficient vectors in z (degree <= 2)
    std::vector<FieldElem> f, h;
    auto lin = [](const FieldElem& c) {  // c z - 1
        return std::vector<FieldElem>{FieldElem(-1), c};
    };
    auto lin2 = [](const FieldElem& c) {  // z - c
        return std::vector<FieldElem>{-c, FieldElem::one()};
    };
    auto mul = [](const std::vector<FieldElem>& a, const std::vector<FieldElem>& b) {
        std::vector<FieldElem> r(a.size() + b.size() - 1, FieldElem::zero());
        for (size_t p = 0; p < a.size(); ++p)
            for (size_t q = 0; q < b.size(); ++q) r[p + q] += a[p] * b[q];
        return r;
    };
    bool nn = (i == rd.n && j == rd.n);
    switch (rd.family) {
        case Family::osp1_2n_1:
            if (nn) {
                f = mul(lin(qp2(4 * aij)), lin(qp2(-2 * aij)));
                h = mul(lin2(qp2(4 * aij)), lin2(qp2(-2 * aij)));
            } else {
                f = lin(qp2(2 * aij));
                h = lin2(qp2(2 * aij));
            }
            break;
        case Family::osp2_2n_2:
            if (nn) {
                f = lin(mqp2(2 * aij));
                h = lin2(mqp2(2 * aij));
            } else {
                f = mul(lin(qp2(aij)), lin(mqp2(aij)));
                h = mul(lin2(qp2(aij)), lin2(mqp2(aij)));
            }
            break;
        case Family::sl1_2n_2:
            if (nn) {
                f = lin(mqp2(2 * aij));
                h = lin2(mqp2(2 * aij));
            } else {
                f = lin(qp2(2 * aij));
                h = lin2(qp2(2 * aij));
            }
            break;
        default:
            throw WrongFamily("g_series is defined for the super families");
    }
    // series division f/h to the requested order; h(0) != 0
    if (h[0].is_zero()) throw std::logic_error("h_ij(0) vanished");
    FieldElem h0inv = h[0].inverse();
    std::vector<FieldElem> g(order + 1, FieldElem::zero());
    for (int k = 0; k <= order; ++k) {
        FieldElem acc = (k < (int)f.size()) ? f[k] : FieldElem::zero();
        for (int m = 1; m <= k && m < (int)h.size(); ++m) acc -= h[m] * g[k - m];
        g[k] = acc * h0inv;
    }
    return g;
}

/// Odds and ends shared by Sections 3-5: the sign surjection o(i), the
/// exponent c(g), the Serre-(A) shift, gamma_g, and the representation
/// scalars of the vacuum constructions.
struct AuxConstants {
    std::vector<int> o;          // o(i) = (-1)^{n-i}, index 1..n
    int c2 = 2;                  // c(g) doubled: 1 for osp(2|2n)^(2), else 2
    std::vector<long> gamma_g;   // exponent of gamma_i in gamma_g, index 1..n
    std::vector<FieldElem> varpi, varrho;  // Theorem 4.4 scalars, index 1..n
    std::vector<FieldElem> vartheta;       // Theorem 4.6 scalars, index 1..n
};

/// Serre (A) shift theta for a concrete (i,j).
inline long serre_theta(const RootDatum& rd, int i, int j) {
    if ((rd.family == Family::osp2_2n_2 || rd.family == Family::Dnp1_2) &&
        !(i == rd.n && j == rd.n))
        return 2;
    return 1;
}

/// o(i)^{c r} as an exact scalar (4th root of unity when c = 1/2).
inline FieldElem o_pow(const AuxConstants& aux, int i, long r, int n) {
    long e = 2L * (n - i) * r * aux.c2;  // (-1)^{(n-i) r c} = zeta^{4 (n-i) r c}
    return FieldElem::zeta(e);
}

inline AuxConstants aux_constants(const RootDatum& rd) {
    AuxConstants aux;
    aux.o.assign(rd.n + 1, 0);
    for (int i = 1; i <= rd.n; ++i) aux.o[i] = ((rd.n - i) % 2 == 0) ? 1 : -1;
    aux.c2 = (rd.family == Family::osp2_2n_2 || rd.family == Family::Dnp1_2) ? 1 : 2;

    aux.gamma_g.assign(rd.n + 1, 0);
    switch (rd.family) {
        case Family::osp1_2n_1:
        case Family::A2n_2:
            for (int i = 1; i <= rd.n; ++i) aux.gamma_g[i] = 2;
            break;
        case Family::sl1_2n_2:
        case Family::Bn_1:
            aux.gamma_g[1] = 1;
            for (int i = 2; i <= rd.n; ++i) aux.gamma_g[i] = 2;
            break;
        case Family::osp2_2n_2:
        case Family::Dnp1_2:
            for (int i = 1; i <= rd.n; ++i) aux.gamma_g[i] = 1;
            break;
    }

    aux.varpi.assign(rd.n + 1, FieldElem::one());
    aux.varrho.assign(rd.n + 1, FieldElem::one());
    aux.vartheta.assign(rd.n + 1, FieldElem::one());
    if (is_super(rd.family)) {
        for (int i = 1; i <= rd.n; ++i) {
            // varpi_i = wp^{-1/2} exactly when the i-th current is
            // half-integer moded: l(alpha_n) odd and no Clifford factor
            // absorbing the half power (the sl family carries one).
            if (i == rd.n && rd.len(rd.n) % 2 == 1 && rd.family != Family::sl1_2n_2)
                aux.varpi[i] = rd.wp_half.inverse();
            FieldElem brace = brace_general(rd.len(i), rd.wp_half, rd.q_i(i));
            if (rd.family == Family::osp2_2n_2 && i != rd.n)
                aux.varrho[i] = -FieldElem::rational(Rational(1, 2)) * brace;
            else
                aux.varrho[i] = -brace;
        }
        // Theorem 4.6 scalars (vacuum-q variants, osp1 and sl only): the
        // n-node value is derived from the relation suite; see vertex.hpp.
        if (rd.family == Family::osp1_2n_1) {
            FieldElem sqrt_mq = FieldElem::zeta(2) * FieldElem::s_pow(1);  // sqrt(-q)
            aux.vartheta[rd.n] = (sqrt_mq - sqrt_mq.inverse()) /
                                 (rd.q_i(rd.n) - rd.q_i(rd.n).inverse());
        } else if (rd.family == Family::sl1_2n_2) {
            FieldElem qn = rd.q_i(rd.n);
            aux.vartheta[rd.n] = (qn + qn.inverse()) / (qn - qn.inverse());
        }
    }
    return aux;
}

}  // namespace qaffine
