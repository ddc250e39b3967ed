#pragma once

#include <memory>
#include <mutex>

#include "qaffine/fock.hpp"

namespace qaffine {

enum class RepVariant { vacuum_wp, vacuum_q, sl_Vn, osp2_V1, osp2_Vn };

inline std::string variant_name(RepVariant v) {
    switch (v) {
        case RepVariant::vacuum_wp: return "vacuum-wp";
        case RepVariant::vacuum_q: return "vacuum-q";
        case RepVariant::sl_Vn: return "Vn";
        case RepVariant::osp2_V1: return "V1-osp2";
        case RepVariant::osp2_Vn: return "Vn-osp2";
    }
    throw std::logic_error("bad variant");
}

inline RepVariant variant_from_name(const std::string& s) {
    for (RepVariant v : {RepVariant::vacuum_wp, RepVariant::vacuum_q,
                         RepVariant::sl_Vn, RepVariant::osp2_V1, RepVariant::osp2_Vn})
        if (variant_name(v) == s) return v;
    throw std::invalid_argument("unknown variant: " + s);
}

struct InvalidVariant : std::invalid_argument {
    explicit InvalidVariant(const std::string& w) : std::invalid_argument(w) {}
};

/// Single-constant mutations used by the sensitivity suite.
enum class Mutation {
    none,
    flip_u_sign,       // negate the Heisenberg pairing scalar
    drop_varpi_n,      // forget the varpi_n factor of gamma_n
    drop_lattice_sign, // force every Phi/cocycle sign to +1
    offset_shift,      // shift one vertex-operator mode offset by one unit
    wrong_theta        // exchange the Serre (A) shifts theta = 1 <-> 2
};

namespace detail {

struct RepCore {
    RootDatum rd;
    RepVariant tag = RepVariant::vacuum_wp;
    SpaceSpec space;
    Mutation mutation = Mutation::none;

    FieldElem gamma_half;              // scalar image of gamma^{1/2}
    FieldElem P_half;                  // Heisenberg deformation base^{1/2}
    bool q_denoms = false;             // false: {k}_{q_i}; true: [k]_{q_i} / [2k]_{q_n}
    std::vector<char> has_P;           // Clifford current attached to node, 1..n
    std::vector<long> off2p, off2m;    // doubled extraction offsets per node
    std::vector<FieldElem> varpi;      // gamma_i scalar factors
    std::vector<FieldElem> rho;        // folding scalar on xi^- images
    std::vector<FieldElem> scale;      // rescale factor on kappa and xi^+ images
    FieldElem hat_coupling_num;        // kappa-hat coupling; per node unless uniform
    bool uniform_coupling = false;
    int tminus_P_sign = -1;

    // precomputed tables
    std::vector<std::vector<FieldElem>> ef_denom;           // [i][k]
    std::vector<std::vector<std::vector<FieldElem>>> pair;  // [i][j][m]
    // ef_c[part][sgn_idx][i][k]: coefficients of the E (part 0) and F (part 1)
    // exponentials for sgn = +1 (idx 0) and -1 (idx 1)
    std::vector<std::vector<std::vector<std::vector<FieldElem>>>> ef_c;
    int kmax = 48;

    // memoised operator applications (shared across relation instances);
    // copies start with a fresh cache
    struct OpCache {
        std::mutex mu;
        std::map<std::tuple<int, int, long, BasisState>, FockVector> map;
        OpCache() = default;
        OpCache(const OpCache&) {}
        OpCache& operator=(const OpCache&) { return *this; }
    };
    mutable OpCache cache;

    FieldElem coupling(int i) const {
        if (uniform_coupling) return hat_coupling_num;
        return rd.q_i(i) - rd.q_i(i).inverse();
    }

    // E^{±}: exp(± sum P^{∓k/2}/D_i(k) H(-k) z^k); F^{±} carries the
    // opposite overall sign and H(k).
    FieldElem ef_coeff_slow(int i, long k, int part_is_F, int sgn) const {
        FieldElem num = P_half.pow(-sgn * k);
        FieldElem c = num / ef_denom[i][k];
        int s = part_is_F ? -sgn : sgn;
        return s > 0 ? c : -c;
    }
    const FieldElem& ef_coeff(int i, long k, int part_is_F, int sgn) const {
        return ef_c[part_is_F][sgn > 0 ? 0 : 1][i][k];
    }

    FieldElem pair_scalar(int i, int j, long m) const {
        FieldElem v = (m <= kmax) ? pair[i][j][m]
                                  : heisenberg_pair(rd, P_half, i, j, m);
        if (mutation == Mutation::flip_u_sign) v = -v;
        return v;
    }

    void build_tables() {
        int n = rd.n;
        ef_denom.assign(n + 1, {});
        for (int i = 1; i <= n; ++i) {
            ef_denom[i].assign(kmax + 1, FieldElem::one());
            for (long k = 1; k <= kmax; ++k) {
                if (!rd.mode_allowed(i, k)) continue;
                if (q_denoms) {
                    long kk = (i == n) ? 2 * k : k;
                    ef_denom[i][k] = q_int(kk, rd.q_i(i));
                } else {
                    ef_denom[i][k] = brace_general(2 * k, rd.wp_half, rd.q_i(i));
                }
            }
        }
        pair.assign(n + 1, {});
        for (int i = 1; i <= n; ++i) {
            pair[i].assign(n + 1, {});
            for (int j = 1; j <= n; ++j) {
                pair[i][j].assign(kmax + 1, FieldElem::zero());
                for (long m = 1; m <= kmax; ++m)
                    pair[i][j][m] = heisenberg_pair(rd, P_half, i, j, m);
            }
        }
        ef_c.assign(2, {});
        for (int part = 0; part < 2; ++part) {
            ef_c[part].assign(2, {});
            for (int sidx = 0; sidx < 2; ++sidx) {
                ef_c[part][sidx].assign(n + 1, {});
                for (int i = 1; i <= n; ++i) {
                    ef_c[part][sidx][i].assign(kmax + 1, FieldElem::zero());
                    for (long k = 1; k <= kmax; ++k) {
                        if (!rd.mode_allowed(i, k)) continue;
                        ef_c[part][sidx][i][k] =
                            ef_coeff_slow(i, k, part, sidx == 0 ? +1 : -1);
                    }
                }
            }
        }
    }

    /// H_i(s) using the precomputed pairing table (mutation included).
    FockVector H_fast(int i, long s, const BasisState& b) const {
        if (s == 0 || !rd.mode_allowed(i, s)) throw ExcludedMode();
        FockVector out;
        if (s < 0) {
            add_term(out, with_kappa(b, i, s), FieldElem::one());
            return out;
        }
        for (size_t t = 0; t < b.kappa.size(); ++t) {
            const auto& [mode, mult] = b.kappa[t];
            if (mode.second != -s) continue;
            FieldElem c = FieldElem(mult) * pair_scalar(i, mode.first, s);
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

    int lattice_sign(int i, int sgn, const BasisState& b) const {
        if (mutation == Mutation::drop_lattice_sign) return 1;
        if (space.signs == LatticeSigns::cocycle) {
            std::vector<int> alpha(rd.n, 0);
            alpha[i - 1] = sgn;
            return cocycle_sign(rd, alpha, b.beta);
        }
        return phi_sign(rd, sgn > 0 ? i : i + 1, b);
    }

    FieldElem gamma_diag(int i, int e, const BasisState& b) const {
        // gamma_i = varpi_i sigma_i wp^{alpha_i} (Phi spaces) or
        // varpi_i q^{alpha_i} (cocycle spaces), raised to e = +-1.
        FieldElem w = varpi[i];
        if (mutation == Mutation::drop_varpi_n && i == rd.n) w = FieldElem::one();
        long p2 = pair2_state(rd, i, b);
        FieldElem diag = q_denoms ? FieldElem::s_pow(p2) : rd.wp_half.pow(p2);
        FieldElem v = w * diag;
        if (space.signs == LatticeSigns::phi)
            v *= FieldElem(sigma_sign(rd, i, b));
        return e > 0 ? v : v.inverse();
    }
};

}  // namespace detail

/// A full representation assignment: images of every Drinfeld generator as
/// exact operators on the chosen Fock space. Immutable and cheap to copy.
class Rep {
public:
    Rep() = default;
    explicit Rep(std::shared_ptr<const detail::RepCore> core) : core_(std::move(core)) {}

    const RootDatum& datum() const { return core_->rd; }
    const SpaceSpec& space() const { return core_->space; }
    RepVariant tag() const { return core_->tag; }
    const FieldElem& gamma_half() const { return core_->gamma_half; }
    FieldElem gamma_pow_half(long e) const { return core_->gamma_half.pow(e); }
    const FieldElem& P_half() const { return core_->P_half; }
    long off2(int sgn, int i) const {
        return sgn > 0 ? core_->off2p[i] : core_->off2m[i];
    }
    const FieldElem& rho(int i) const { return core_->rho[i]; }
    const FieldElem& varpi(int i) const { return core_->varpi[i]; }
    FieldElem coupling(int i) const { return core_->coupling(i); }

    /// Image of kappa_{i,s} (s != 0): the Heisenberg mode, times any rescale.
    ModeOp kappa(int i, long s) const {
        auto c = core_;
        if (!c->rd.mode_allowed(i, s)) throw ExcludedMode();
        FieldElem f = c->scale[i];
        return ModeOp{0, [c, i, s, f](const BasisState& b) {
                          FockVector v = c->H_fast(i, s, b);
                          return f.is_one() ? v : scaled(v, f);
                      }};
    }

    ModeOp gamma_i(int i, int e) const {
        auto c = core_;
        return ModeOp{0, [c, i, e](const BasisState& b) {
                          return scaled(unit(b), c->gamma_diag(i, e, b));
                      }};
    }

    ModeOp sigma(int i) const { return sigma_op(core_->rd, i); }

    /// Image of xi^{sgn}_{i,r}: the vertex-operator mode, with the variant's
    /// xi^- folding scalar applied. Applications are memoised per state.
    ModeOp xi(int sgn, int i, long r) const {
        auto c = core_;
        if (i < 1 || i > c->rd.n) throw IndexOutOfRange();
        int parity = c->rd.odd[i] ? 1 : 0;
        FieldElem fold = sgn < 0 ? c->rho[i] : FieldElem::one();
        if (sgn > 0 && !c->scale[i].is_one()) fold = c->scale[i];
        return ModeOp{parity, [c, sgn, i, r, fold](const BasisState& b) {
                          std::tuple<int, int, long, BasisState> key{sgn, i, r, b};
                          {
                              std::lock_guard<std::mutex> lk(c->cache.mu);
                              auto it = c->cache.map.find(key);
                              if (it != c->cache.map.end())
                                  return fold.is_one() ? it->second
                                                       : scaled(it->second, fold);
                          }
                          FockVector v = x_mode_state(*c, sgn, i, r, b);
                          {
                              std::lock_guard<std::mutex> lk(c->cache.mu);
                              c->cache.map.emplace(std::move(key), v);
                          }
                          return fold.is_one() ? v : scaled(v, fold);
                      }};
    }

    /// Image of kappa-hat^{sgn}_{i,r} through the generating series.
    ModeOp kappa_hat(int sgn, int i, long r) const {
        auto c = core_;
        Rep self(core_);
        auto H_of = [self, i](long k) { return self.kappa(i, k); };
        ModeOp raw = kappa_hat_op(self.coupling(i), H_of, gamma_i(i, 1),
                                  gamma_i(i, -1), sgn, r);
        return ModeOp{0, [c, raw, sgn, i, r](const BasisState& b) {
                          std::tuple<int, int, long, BasisState> key{2 * sgn, i, r, b};
                          {
                              std::lock_guard<std::mutex> lk(c->cache.mu);
                              auto it = c->cache.map.find(key);
                              if (it != c->cache.map.end()) return it->second;
                          }
                          FockVector v = raw.act(b);
                          std::lock_guard<std::mutex> lk(c->cache.mu);
                          c->cache.map.emplace(std::move(key), v);
                          return v;
                      }};
    }

    /// Rescaled copy (kappa and xi^+ scaled by [l(alpha_i)/2]_q, kappa-hat
    /// series coupled uniformly by q - q^{-1}) or its inverse.
    Rep rescaled(bool to_sec3) const {
        auto nc = std::make_shared<detail::RepCore>(*core_);
        nc->space.rd = &nc->rd;
        for (int i = 1; i <= nc->rd.n; ++i) {
            FieldElem f = q_int_half(nc->rd.len(i), FieldElem::s_pow(1));
            if (!to_sec3) f = f.inverse();
            nc->scale[i] = nc->scale[i] * f;
        }
        nc->uniform_coupling = to_sec3;
        nc->hat_coupling_num = FieldElem::q_pow(1) - FieldElem::q_pow(-1);
        return Rep(nc);
    }

    Rep with_mutation(Mutation m) const {
        auto nc = std::make_shared<detail::RepCore>(*core_);
        nc->space.rd = &nc->rd;
        nc->mutation = m;
        if (m == Mutation::offset_shift) nc->off2p[nc->rd.n] += 2;
        return Rep(nc);
    }

    /// Drinfeld-level twist of Remark 4.7: gamma -> -gamma,
    /// xi^-_{i,k} -> (-1)^k xi^-_{i,k}, kappa_{i,k} -> (-1)^{|k|/2} kappa_{i,k}.
    struct Remark47;

private:
    static FockVector x_mode_state(const detail::RepCore& c, int sgn, int i,
                                   long r, const BasisState& b);

    std::shared_ptr<const detail::RepCore> core_;

    friend Rep assign_rep(Family, int, RepVariant, Mutation);
};

inline FockVector Rep::x_mode_state(const detail::RepCore& c, int sgn, int i,
                                    long r, const BasisState& b) {
    const RootDatum& rd = c.rd;
    long e2_star = -2 * r + (sgn > 0 ? c.off2p[i] : c.off2m[i]);
    long e2_T = sgn * pair2_state(rd, i, b) + rd.len(i);

    // F-part layers on the kappa content (annihilation level a contributes
    // z^{-a}); budget bounded by the state's kappa energy.
    long a_max = b.energy2() / 2;
    auto f_level = [&](long k, const FockVector& v) {
        FockVector out;
        if (!rd.mode_allowed(i, k)) return out;
        FieldElem coef = c.ef_coeff(i, k, 1, sgn);
        for (const auto& [s, x] : v) add_scaled(out, c.H_fast(i, k, s), x * coef);
        return out;
    };
    std::vector<FockVector> F = exp_series_layers(f_level, b, a_max);

    // Clifford branches: (s2, resulting state pieces) for the P(z) factor.
    struct CliffBranch {
        long s2;
        FockVector pieces;  // states with P(s) applied, before lattice/E parts
    };
    std::vector<CliffBranch> branches;
    bool hasP = c.has_P[i] != 0;

    FieldElem p_sign = FieldElem::one();
    if (hasP && sgn < 0 && c.tminus_P_sign < 0) p_sign = FieldElem(-1);

    // Raw branches are computed per F-layer term below; here we only list the
    // candidate modes. Creation depth is bounded by the extremal m2 >= 0 case.
    std::vector<long> cand;
    if (hasP) {
        long step = c.space.cliff == CliffordKind::ns ? 1 : 2;
        long start = c.space.cliff == CliffordKind::ns ? -1 : -2;
        long s2_min = e2_T - e2_star - 2 * a_max;
        for (long s2 = start; s2 >= s2_min; s2 -= 2) cand.push_back(s2);
        if (c.space.cliff == CliffordKind::ramond) cand.push_back(0);
        for (long m2 : b.cliff2) cand.push_back(-m2);
        (void)step;
    } else {
        cand.push_back(0);
    }

    FockVector out;
    for (long a = 0; a <= a_max; ++a) {
        if (F[a].empty()) continue;
        for (long s2 : cand) {
            long m2 = e2_star - e2_T + 2 * a + (hasP ? s2 : 0);
            if (m2 < 0 || m2 % 2 != 0) continue;
            long m = m2 / 2;
            for (const auto& [fs, fc] : F[a]) {
                // Clifford factor first (it commutes with the kappa parts).
                FockVector after_p;
                if (hasP) {
                    after_p = clifford_state(c.space.cliff, c.space.cliff_base_half,
                                             s2, fs);
                    if (after_p.empty()) continue;
                } else {
                    after_p = unit(fs);
                }
                for (const auto& [ps, pc] : after_p) {
                    // lattice shift and sign from the original beta
                    FieldElem lat(c.lattice_sign(i, sgn, ps));
                    BasisState shifted = with_beta_shift(ps, i, sgn);
                    // E-part of order m on the shifted state
                    auto e_level = [&](long k, const FockVector& v) {
                        FockVector o2;
                        if (!rd.mode_allowed(i, -k)) return o2;
                        FieldElem coef = c.ef_coeff(i, k, 0, sgn);
                        for (const auto& [s3, x3] : v)
                            add_term(o2, with_kappa(s3, i, -k), x3 * coef);
                        return o2;
                    };
                    std::vector<FockVector> E =
                        exp_series_layers(e_level, shifted, m);
                    add_scaled(out, E[m], fc * pc * lat * p_sign);
                }
            }
        }
    }
    return out;
}

/// Build the representation assignment for a variant. The scalar tables and
/// mode-offset splits are the ones the relation suite singles out; where they
/// differ from first-guess readings the campaign reports record them.
inline Rep assign_rep(Family fam, int n, RepVariant variant,
                      Mutation mutation = Mutation::none) {
    auto core = std::make_shared<detail::RepCore>();
    Norm norm = Norm::sec4;
    switch (variant) {
        case RepVariant::vacuum_wp:
        case RepVariant::sl_Vn:
        case RepVariant::osp2_V1:
        case RepVariant::osp2_Vn:
            norm = Norm::sec4;
            break;
        case RepVariant::vacuum_q:
            norm = Norm::sec3;
            break;
    }
    if (variant == RepVariant::vacuum_q && fam == Family::osp2_2n_2)
        throw InvalidVariant("vacuum-q exists for osp(1|2n)^(1) and sl(1|2n)^(2) only");
    if (variant == RepVariant::sl_Vn && fam != Family::sl1_2n_2)
        throw InvalidVariant("Vn is the sl(1|2n)^(2) level-1 module");
    if ((variant == RepVariant::osp2_V1 || variant == RepVariant::osp2_Vn) &&
        fam != Family::osp2_2n_2)
        throw InvalidVariant("V1/Vn-osp2 are osp(2|2n)^(2) level-1 modules");
    if (!is_super(fam)) throw InvalidVariant("representations exist for the super families");

    core->rd = build_datum(fam, n, norm);
    core->tag = variant;
    core->mutation = (mutation == Mutation::wrong_theta) ? Mutation::none : mutation;
    RootDatum& rd = core->rd;
    AuxConstants aux = aux_constants(rd);

    core->has_P.assign(n + 1, 0);
    core->off2p.assign(n + 1, 0);
    core->off2m.assign(n + 1, 0);
    core->scale.assign(n + 1, FieldElem::one());
    core->varpi = aux.varpi;
    core->rho.assign(n + 1, FieldElem::one());
    core->hat_coupling_num = FieldElem::one();

    SpaceSpec& sp = core->space;
    sp.rd = &core->rd;

    switch (variant) {
        case RepVariant::vacuum_wp:
            core->gamma_half = rd.wp_half;
            core->P_half = rd.wp_half;
            core->q_denoms = false;
            core->rho = aux.varrho;
            if (fam == Family::sl1_2n_2) {
                sp.cliff = CliffordKind::ns;
                sp.cliff_base_half = rd.wp_half;
                sp.parity = ParityBasis::clifford;
                sp.link = PairingLink::coset_matches_degree;
                core->has_P[n] = 1;
                core->rho[n] = -core->rho[n];  // relation-suite sign
            } else {
                sp.parity = ParityBasis::lattice;
            }
            if (rd.len(n) % 2 == 1 && fam != Family::sl1_2n_2) {
                core->off2p[n] = 1;
                core->off2m[n] = -1;
            }
            break;

        case RepVariant::vacuum_q:
            core->gamma_half = FieldElem::s_pow(1);
            core->P_half = FieldElem::s_pow(1);
            core->q_denoms = true;
            sp.signs = LatticeSigns::cocycle;
            for (int i = 1; i <= n; ++i) core->varpi[i] = FieldElem::one();
            if (fam == Family::osp1_2n_1) {
                sp.parity = ParityBasis::lattice;
                core->varpi[n] = FieldElem::zeta(2) * FieldElem::s_pow(1);  // sqrt(-q)
                core->off2p[n] = -1;
                core->off2m[n] = 1;
            } else {
                sp.cliff = CliffordKind::ns;
                sp.cliff_base_half = FieldElem::s_pow(1);
                sp.parity = ParityBasis::clifford;
                sp.link = PairingLink::coset_matches_degree;
                core->has_P[n] = 1;
            }
            core->rho[n] = aux.vartheta[n];
            break;

        case RepVariant::sl_Vn:
            core->gamma_half = rd.wp_half;
            core->P_half = rd.wp_half;
            core->q_denoms = false;
            core->rho = aux.varrho;
            sp.cliff = CliffordKind::ramond;
            sp.cliff_base_half = rd.wp_half;
            sp.parity = ParityBasis::clifford;
            sp.shift = Shift::lambdaN;
            core->has_P[n] = 1;
            break;

        case RepVariant::osp2_V1:
            core->gamma_half = rd.wp_half;
            core->P_half = rd.wp_half;
            core->q_denoms = false;
            core->rho = aux.varrho;
            sp.cliff = CliffordKind::ns;
            sp.cliff_base_half = rd.wp_half;
            sp.parity = ParityBasis::clifford;
            sp.link = PairingLink::coset_opposite_degree;
            core->has_P[n] = 1;
            core->rho[n] = -core->rho[n];
            core->off2p[n] = 1;
            core->off2m[n] = -1;
            break;

        case RepVariant::osp2_Vn:
            core->gamma_half = rd.wp_half;
            core->P_half = rd.wp_half;
            core->q_denoms = false;
            core->rho = aux.varrho;
            sp.cliff = CliffordKind::ramond;
            sp.cliff_base_half = rd.wp_half;
            sp.parity = ParityBasis::clifford;
            sp.shift = Shift::lambdaN;
            core->has_P[n] = 1;
            core->rho[n] = -core->rho[n];
            break;
    }

    core->build_tables();
    return Rep(core);
}

/// Vacuum representation of the sec3-normalised datum (used to drive the
/// quantum-correspondence checks for osp(2|2n)^(2), where Section 4's
/// normalisation differs from Section 3's).
inline Rep assign_vacuum_sec3(Family fam, int n) {
    if (fam != Family::osp2_2n_2) return assign_rep(fam, n, RepVariant::vacuum_wp);
    auto core = std::make_shared<detail::RepCore>();
    core->rd = build_datum(fam, n, Norm::sec3);
    core->tag = RepVariant::vacuum_wp;
    RootDatum& rd = core->rd;
    AuxConstants aux = aux_constants(rd);
    core->gamma_half = rd.wp_half;
    core->P_half = rd.wp_half;
    core->q_denoms = false;
    core->has_P.assign(n + 1, 0);
    core->off2p.assign(n + 1, 0);
    core->off2m.assign(n + 1, 0);
    core->scale.assign(n + 1, FieldElem::one());
    core->varpi = aux.varpi;
    core->rho = aux.varrho;
    core->hat_coupling_num = FieldElem::one();
    core->off2p[n] = 1;
    core->off2m[n] = -1;
    core->space.rd = &core->rd;
    core->space.parity = ParityBasis::lattice;
    core->build_tables();
    return Rep(core);
}

/// Highest-weight state of the variant (annihilated by the positive part of
/// the standard triangular decomposition).
inline BasisState highest_weight_state(const Rep& rep) {
    const RootDatum& rd = rep.datum();
    BasisState b;
    b.beta.assign(rd.n, 0);
    switch (rep.tag()) {
        case RepVariant::vacuum_wp:
            // the half-moded osp1 n-node shifts the annihilated lattice point
            if (rd.family == Family::osp1_2n_1)
                for (int j = 0; j < rd.n; ++j) b.beta[j] = 1;  // e^{lambda_1}
            break;
        case RepVariant::vacuum_q:
            break;
        case RepVariant::sl_Vn:
        case RepVariant::osp2_Vn:
            b.shift = Shift::lambdaN;
            break;
        case RepVariant::osp2_V1:
            for (int j = 0; j < rd.n; ++j) b.beta[j] = 1;  // e^{lambda_1}
            break;
    }
    return b;
}

}  // namespace qaffine
