#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qaffine/root_data.hpp"

namespace qaffine {

struct ExcludedMode : std::domain_error {
    ExcludedMode() : std::domain_error("mode outside the family's index set") {}
};
struct WrongModeParity : std::domain_error {
    WrongModeParity() : std::domain_error("Clifford mode has wrong half-integrality") {}
};

enum class Shift { none, lambda1, lambdaN };
enum class CliffordKind { none, ns, ramond };

/// One Fock basis state: a kappa-monomial, a lattice point beta (alpha-basis
/// coordinates) with an optional weight shift, and a Clifford monomial stored
/// as strictly decreasing negative modes (doubled, so NS modes are odd ints).
struct BasisState {
    std::vector<std::pair<std::pair<int, long>, int>> kappa;  // ((i, r<0), mult)
    std::vector<int> beta;
    Shift shift = Shift::none;
    std::vector<long> cliff2;

    long energy2() const {
        long e = 0;
        for (const auto& [mode, mult] : kappa) e += 2 * (-mode.second) * mult;
        for (long m2 : cliff2) e += -m2;
        return e;
    }
    int cliff_degree() const { return (int)cliff2.size(); }

    bool operator==(const BasisState& o) const {
        return kappa == o.kappa && beta == o.beta && shift == o.shift &&
               cliff2 == o.cliff2;
    }
    bool operator<(const BasisState& o) const {
        long ea = energy2(), eb = o.energy2();
        if (ea != eb) return ea < eb;
        if (kappa != o.kappa) return kappa < o.kappa;
        if (beta != o.beta) return beta < o.beta;
        if (shift != o.shift) return (int)shift < (int)o.shift;
        return cliff2 < o.cliff2;
    }

    std::string str() const {
        std::ostringstream os;
        bool lead = true;
        for (const auto& [mode, mult] : kappa) {
            if (!lead) os << ".";
            os << "k[" << mode.first << "," << mode.second << "]";
            if (mult > 1) os << "^" << mult;
            lead = false;
        }
        if (lead) os << "1";
        os << "|e(";
        for (size_t j = 0; j < beta.size(); ++j) {
            if (j) os << ",";
            os << beta[j];
        }
        os << ")";
        if (shift == Shift::lambda1) os << "+L1";
        if (shift == Shift::lambdaN) os << "+Ln";
        if (!cliff2.empty()) {
            os << "|";
            for (size_t j = 0; j < cliff2.size(); ++j) {
                if (j) os << ".";
                if (cliff2[j] % 2 == 0)
                    os << "t(" << cliff2[j] / 2 << ")";
                else
                    os << "f(" << cliff2[j] << "/2)";
            }
        }
        return os.str();
    }
};

using FockVector = std::map<BasisState, FieldElem>;

inline void add_term(FockVector& v, const BasisState& b, const FieldElem& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = v.emplace(b, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}
inline void add_scaled(FockVector& v, const FockVector& w, const FieldElem& c) {
    if (c.is_zero()) return;
    for (const auto& [b, x] : w) add_term(v, b, x * c);
}
inline FockVector scaled(const FockVector& w, const FieldElem& c) {
    FockVector v;
    add_scaled(v, w, c);
    return v;
}
inline FockVector vsum(const FockVector& a, const FockVector& b) {
    FockVector v = a;
    add_scaled(v, b, FieldElem::one());
    return v;
}
inline FockVector vdiff(const FockVector& a, const FockVector& b) {
    FockVector v = a;
    add_scaled(v, b, FieldElem(-1));
    return v;
}
inline FockVector unit(const BasisState& b) {
    FockVector v;
    v.emplace(b, FieldElem::one());
    return v;
}
inline std::string render(const FockVector& v) {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& [b, c] : v) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + b.str();
    }
    return out;
}

/// A linear operator given by its action on basis states.
struct ModeOp {
    int parity = 0;  // 0 even, 1 odd
    std::function<FockVector(const BasisState&)> act;

    FockVector operator()(const BasisState& b) const { return act(b); }
    FockVector operator()(const FockVector& v) const {
        FockVector out;
        for (const auto& [b, c] : v) add_scaled(out, act(b), c);
        return out;
    }
};

inline ModeOp op_zero() {
    return ModeOp{0, [](const BasisState&) { return FockVector{}; }};
}
inline ModeOp op_identity() {
    return ModeOp{0, [](const BasisState& b) { return unit(b); }};
}
inline ModeOp op_scalar(FieldElem c) {
    return ModeOp{0, [c](const BasisState& b) { return scaled(unit(b), c); }};
}
inline ModeOp op_scale(FieldElem c, ModeOp a) {
    return ModeOp{a.parity, [c, a](const BasisState& b) { return scaled(a.act(b), c); }};
}
inline ModeOp op_add(ModeOp x, ModeOp y) {
    int p = (x.parity == y.parity) ? x.parity : -1;
    if (p < 0) throw std::logic_error("adding operators of different parity");
    return ModeOp{p, [x, y](const BasisState& b) { return vsum(x.act(b), y.act(b)); }};
}
/// x after y (apply y first).
inline ModeOp op_compose(ModeOp x, ModeOp y) {
    return ModeOp{(x.parity + y.parity) % 2,
                  [x, y](const BasisState& b) { return x(y.act(b)); }};
}
/// [x, y]_a = x y - (-1)^{[x][y]} a y x.
inline ModeOp op_bracket(ModeOp x, ModeOp y, FieldElem a) {
    FieldElem c = (x.parity && y.parity) ? a : -a;
    return op_add(op_compose(x, y), op_scale(c, op_compose(y, x)));
}
inline ModeOp op_supercomm(ModeOp x, ModeOp y) {
    return op_bracket(std::move(x), std::move(y), FieldElem::one());
}

// ---------------------------------------------------------------------------
// kappa / Heisenberg layer

inline BasisState with_kappa(const BasisState& b, int i, long r) {
    BasisState out = b;
    std::pair<int, long> key{i, r};
    auto it = out.kappa.begin();
    while (it != out.kappa.end() && it->first < key) ++it;
    if (it != out.kappa.end() && it->first == key)
        it->second += 1;
    else
        out.kappa.insert(it, {key, 1});
    return out;
}

/// Pairing scalar of the annihilation mode H_i(m), m>0, against kappa_{j,-m}:
/// u_{i,j,m} (P^m - P^{-m}) / (m (q_i - q_i^{-1}) (q_j - q_j^{-1})),
/// P given through its square root.
inline FieldElem heisenberg_pair(const RootDatum& rd, const FieldElem& P_half,
                                 int i, int j, long m) {
    FieldElem u = u_coeff(rd, i, j, m);
    if (u.is_zero()) return u;
    FieldElem num = P_half.pow(2 * m) - P_half.pow(-2 * m);
    FieldElem den = FieldElem(m) * (rd.q_i(i) - rd.q_i(i).inverse()) *
                    (rd.q_i(j) - rd.q_i(j).inverse());
    return u * num / den;
}

/// H_i(s) on a single basis state: s<0 multiplies by kappa_{i,s}, s>0 is the
/// derivation pairing against the stored modes.
inline FockVector H_state(const RootDatum& rd, const FieldElem& P_half, int i,
                          long s, const BasisState& b) {
    if (s == 0 || !rd.mode_allowed(i, s)) throw ExcludedMode();
    FockVector out;
    if (s < 0) {
        add_term(out, with_kappa(b, i, s), FieldElem::one());
        return out;
    }
    for (size_t t = 0; t < b.kappa.size(); ++t) {
        const auto& [mode, mult] = b.kappa[t];
        if (mode.second != -s) continue;
        FieldElem c = FieldElem(mult) * heisenberg_pair(rd, P_half, i, mode.first, s);
        if (c.is_zero()) continue;
        BasisState nb = b;
        if (mult == 1)
            nb.kappa.erase(nb.kappa.begin() + t);
        else
            nb.kappa[t].second -= 1;
        add_term(out, nb, c);
    }
    return out;
}

inline ModeOp heisenberg_op(const RootDatum& rd, FieldElem P_half, int i, long s) {
    return ModeOp{0, [&rd, P_half, i, s](const BasisState& b) {
                      return H_state(rd, P_half, i, s, b);
                  }};
}

inline FockVector H_action(const RootDatum& rd, const FieldElem& P_half, int i,
                           long s, const FockVector& v) {
    FockVector out;
    for (const auto& [b, c] : v) add_scaled(out, H_state(rd, P_half, i, s, b), c);
    return out;
}

// ---------------------------------------------------------------------------
// lattice layer

/// 2*(alpha_i, beta + shift).
inline long pair2_state(const RootDatum& rd, int i, const BasisState& b) {
    long p = rd.pair2(i, b.beta);
    if (b.shift == Shift::lambda1) p += rd.pair2_lambda1(i);
    if (b.shift == Shift::lambdaN) p += rd.pair2_lambdan(i);
    return p;
}

/// sigma_i sign (-1)^{(alpha_i, beta)}; the distinguished shift does not
/// contribute (its pairing may be half-integral).
inline int sigma_sign(const RootDatum& rd, int i, const BasisState& b) {
    long p2 = rd.pair2(i, b.beta);
    return (((p2 / 2) % 2) + 2) % 2 ? -1 : 1;
}

/// Phi_i = prod_{k=i..n} sigma_k (identity for i > n).
inline int phi_sign(const RootDatum& rd, int i, const BasisState& b) {
    int s = 1;
    for (int k = i; k <= rd.n; ++k) s *= sigma_sign(rd, k, b);
    return s;
}

/// 2-cocycle C(alpha, beta) for alpha, beta in the alpha-basis.
inline int cocycle_sign(const RootDatum& rd, const std::vector<int>& alpha,
                        const std::vector<int>& beta) {
    long e = 0;
    for (int i = 1; i <= rd.n; ++i) {
        if (alpha[i - 1] == 0) continue;
        for (int j = i; j <= rd.n; ++j) {
            if (beta[j - 1] == 0) continue;
            long cij = rd.gram[i][j] + rd.gram[i][i] * rd.gram[j][j];
            e += (long)alpha[i - 1] * beta[j - 1] * cij;
        }
    }
    return ((e % 2) + 2) % 2 ? -1 : 1;
}

inline BasisState with_beta_shift(const BasisState& b, int i, int dir) {
    BasisState out = b;
    out.beta[i - 1] += dir;
    return out;
}

/// Plain lattice multiplication e^alpha.
inline ModeOp lattice_exp_op(const RootDatum& rd, std::vector<int> alpha) {
    return ModeOp{0, [&rd, alpha](const BasisState& b) {
                      BasisState nb = b;
                      for (int j = 0; j < rd.n; ++j) nb.beta[j] += alpha[j];
                      return unit(nb);
                  }};
}
/// Cocycle-extended lattice multiplication.
inline ModeOp cocycle_exp_op(const RootDatum& rd, std::vector<int> alpha) {
    return ModeOp{0, [&rd, alpha](const BasisState& b) {
                      int s = cocycle_sign(rd, alpha, b.beta);
                      BasisState nb = b;
                      for (int j = 0; j < rd.n; ++j) nb.beta[j] += alpha[j];
                      return scaled(unit(nb), FieldElem(s));
                  }};
}
inline ModeOp sigma_op(const RootDatum& rd, int i) {
    return ModeOp{0, [&rd, i](const BasisState& b) {
                      return scaled(unit(b), FieldElem(sigma_sign(rd, i, b)));
                  }};
}
inline ModeOp phi_op(const RootDatum& rd, int i) {
    return ModeOp{0, [&rd, i](const BasisState& b) {
                      return scaled(unit(b), FieldElem(phi_sign(rd, i, b)));
                  }};
}

// ---------------------------------------------------------------------------
// Clifford layer

/// Action of the mode m2/2 of the q-deformed Clifford algebra (NS: m2 odd,
/// Ramond: m2 even). Negative modes create, positive modes contract with
/// value base^{|m|} + base^{-|m|}, and the Ramond zero mode acts as the
/// degree parity (so the defining anticommutators hold on every state).
inline FockVector clifford_state(CliffordKind kind, const FieldElem& base_half,
                                 long m2, const BasisState& b) {
    if (kind == CliffordKind::none) throw WrongModeParity();
    if (kind == CliffordKind::ns && m2 % 2 == 0) throw WrongModeParity();
    if (kind == CliffordKind::ramond && m2 % 2 != 0) throw WrongModeParity();
    FockVector out;
    if (m2 == 0) {
        int s = b.cliff_degree() % 2 ? -1 : 1;
        add_term(out, b, FieldElem(s));
        return out;
    }
    if (m2 < 0) {
        size_t pos = 0;
        while (pos < b.cliff2.size() && b.cliff2[pos] > m2) ++pos;
        if (pos < b.cliff2.size() && b.cliff2[pos] == m2) return out;  // square = 0
        BasisState nb = b;
        nb.cliff2.insert(nb.cliff2.begin() + pos, m2);
        add_term(out, nb, FieldElem(pos % 2 ? -1 : 1));
        return out;
    }
    for (size_t pos = 0; pos < b.cliff2.size(); ++pos) {
        if (b.cliff2[pos] != -m2) continue;
        FieldElem c = base_half.pow(m2) + base_half.pow(-m2);
        BasisState nb = b;
        nb.cliff2.erase(nb.cliff2.begin() + pos);
        add_term(out, nb, (pos % 2 ? -c : c));
        break;
    }
    return out;
}

inline ModeOp clifford_op(CliffordKind kind, FieldElem base_half, long m2) {
    return ModeOp{1, [kind, base_half, m2](const BasisState& b) {
                      return clifford_state(kind, base_half, m2, b);
                  }};
}

// ---------------------------------------------------------------------------
// space specification and basis enumeration

enum class LatticeSigns { phi, cocycle };
enum class ParityBasis { lattice, clifford };
/// Linking of the lattice coset (beta_n mod 2) with the Clifford degree.
enum class PairingLink { none, coset_matches_degree, coset_opposite_degree };

struct SpaceSpec {
    const RootDatum* rd = nullptr;
    CliffordKind cliff = CliffordKind::none;
    FieldElem cliff_base_half;           // square root of the deformation base
    LatticeSigns signs = LatticeSigns::phi;
    ParityBasis parity = ParityBasis::lattice;
    PairingLink link = PairingLink::none;
    Shift shift = Shift::none;
    bool q0_lattice = false;             // restrict beta to the even-sum sublattice rule

    bool admits(const BasisState& b) const {
        int coset = ((b.beta[rd->n - 1] % 2) + 2) % 2;
        int deg = b.cliff_degree() % 2;
        switch (link) {
            case PairingLink::none: break;
            case PairingLink::coset_matches_degree:
                if (coset != deg) return false;
                break;
            case PairingLink::coset_opposite_degree:
                if (coset == deg) return false;
                break;
        }
        return true;
    }

    /// Parity of a basis state as an element of the superspace.
    int state_parity(const BasisState& b) const {
        if (parity == ParityBasis::clifford) return b.cliff_degree() % 2;
        // eps-coordinate sum of beta is its alpha_n coordinate mod 2
        return ((b.beta[rd->n - 1] % 2) + 2) % 2;
    }
};

namespace detail {

inline void enumerate_kappa(const RootDatum& rd, long budget2,
                            std::pair<int, long> min_mode, BasisState& cur,
                            std::vector<BasisState>& out) {
    out.push_back(cur);
    for (int i = min_mode.first; i <= rd.n; ++i) {
        long rstart = (i == min_mode.first) ? min_mode.second : -1;
        for (long r = rstart; 2 * (-r) <= budget2; --r) {
            if (!rd.mode_allowed(i, r)) continue;
            std::vector<BasisState> sub;
            BasisState nb = with_kappa(cur, i, r);
            enumerate_kappa(rd, budget2 - 2 * (-r), {i, r}, nb, sub);
            for (auto& s : sub) out.push_back(std::move(s));
        }
    }
}

inline void enumerate_cliff(CliffordKind kind, long budget2, long next2,
                            std::vector<long>& cur,
                            std::vector<std::vector<long>>& out) {
    out.push_back(cur);
    for (long m2 = next2; -m2 <= budget2; m2 -= 2) {
        cur.push_back(m2);
        enumerate_cliff(kind, budget2 + m2, m2 - 2, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// All basis states with energy <= max_energy2/2 and |beta_j| <= lattice_ball,
/// respecting the space's pairing constraint; sorted (energy, lexicographic).
inline std::vector<BasisState> enumerate_basis(const SpaceSpec& spec,
                                               long max_energy2, int lattice_ball) {
    const RootDatum& rd = *spec.rd;
    std::vector<BasisState> kappas;
    BasisState seed;
    seed.beta.assign(rd.n, 0);
    seed.shift = spec.shift;
    detail::enumerate_kappa(rd, max_energy2, {1, -1}, seed, kappas);

    std::vector<std::vector<long>> cliffs;
    if (spec.cliff == CliffordKind::none) {
        cliffs.push_back({});
    } else {
        std::vector<long> cur;
        long first = spec.cliff == CliffordKind::ns ? -1 : -2;
        detail::enumerate_cliff(spec.cliff, max_energy2, first, cur, cliffs);
    }

    std::vector<BasisState> out;
    std::vector<int> beta(rd.n, -lattice_ball);
    for (;;) {
        for (const auto& kb : kappas) {
            long left = max_energy2 - kb.energy2();
            for (const auto& cf : cliffs) {
                long ce = 0;
                for (long m2 : cf) ce += -m2;
                if (ce > left) continue;
                BasisState b = kb;
                b.beta = beta;
                b.cliff2 = cf;
                if (spec.q0_lattice && ((b.beta[rd.n - 1] % 2) + 2) % 2) continue;
                if (!spec.admits(b)) continue;
                out.push_back(std::move(b));
            }
        }
        int j = 0;
        while (j < rd.n && beta[j] == lattice_ball) beta[j++] = -lattice_ball;
        if (j == rd.n) break;
        ++beta[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Coefficient-extraction operators of exp(sum_{k>=1} a_k u^k) given the
/// level maps k |-> a_k O_k (all commuting): F_0 = id,
/// F_m = (1/m) sum_{k<=m} k a_k O_k F_{m-k}.
inline std::vector<FockVector> exp_series_layers(
    const std::function<FockVector(long, const FockVector&)>& level_apply,
    const BasisState& b, long max_m) {
    std::vector<FockVector> F(max_m + 1);
    F[0] = unit(b);
    for (long m = 1; m <= max_m; ++m) {
        FockVector acc;
        for (long k = 1; k <= m; ++k) {
            FockVector piece = level_apply(k, F[m - k]);
            add_scaled(acc, piece, FieldElem(k));
        }
        F[m] = scaled(acc, FieldElem::one() / FieldElem(m));
    }
    return F;
}

/// kappa-hat operator from eq-style generating series:
///   sign=+1, r>=0: gamma_img o [u^{-r}] exp(coupling * sum_{k>0} H(k) u^{-k})
///   sign=-1, r<=0: gamma_inv_img o [u^{-r}] exp(-coupling * sum_{k>0} H(-k) u^k)
/// Out-of-range r gives the zero operator.
inline ModeOp kappa_hat_op(FieldElem coupling,
                           std::function<ModeOp(long)> H_of, ModeOp gamma_img,
                           ModeOp gamma_inv_img, int sign, long r) {
    if ((sign > 0 && r < 0) || (sign < 0 && r > 0)) return op_zero();
    long depth = sign > 0 ? r : -r;
    FieldElem coup = sign > 0 ? coupling : -coupling;
    auto act = [=](const BasisState& b) {
        auto level = [&](long k, const FockVector& v) {
            FockVector out;
            ModeOp H = H_of(sign > 0 ? k : -k);
            for (const auto& [s, c] : v) add_scaled(out, H.act(s), c * coup);
            return out;
        };
        std::vector<FockVector> layers = exp_series_layers(level, b, depth);
        const ModeOp& g = sign > 0 ? gamma_img : gamma_inv_img;
        return g(layers[depth]);
    };
    return ModeOp{0, act};
}

}  // namespace qaffine
