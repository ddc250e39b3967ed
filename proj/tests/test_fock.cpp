#include <random>

#include <gtest/gtest.h>

#include "qaffine/fock.hpp"
#include "qaffine/vertex.hpp"

using namespace qaffine;

namespace {

BasisState vac(int n) {
    BasisState b;
    b.beta.assign(n, 0);
    return b;
}

// independent counting oracle: colored partitions over the allowed modes
long count_kappa_monomials(const RootDatum& rd, long energy) {
    std::vector<long> dp(energy + 1, 0);
    dp[0] = 1;
    for (int i = 1; i <= rd.n; ++i)
        for (long r = 1; r <= energy; ++r) {
            if (!rd.mode_allowed(i, -r)) continue;
            for (long e = r; e <= energy; ++e) dp[e] += dp[e - r];
        }
    long total = 0;
    for (long e = 0; e <= energy; ++e) total += dp[e];
    return total;
}

}  // namespace

TEST(Fock, EnumerateKappaCountsMatchPartitionOracle) {
    for (Family f : {Family::osp1_2n_1, Family::sl1_2n_2, Family::osp2_2n_2})
        for (int n : {1, 2}) {
            RootDatum rd = build_datum(f, n, Norm::sec4);
            SpaceSpec sp;
            sp.rd = &rd;
            for (long E = 0; E <= 6; ++E) {
                auto basis = enumerate_basis(sp, 2 * E, 0);
                EXPECT_EQ((long)basis.size(), count_kappa_monomials(rd, E))
                    << family_name(f) << " n=" << n << " E=" << E;
            }
        }
}

TEST(Fock, EnumerateExamples) {
    RootDatum rd = build_datum(Family::osp1_2n_1, 1, Norm::sec4);
    SpaceSpec sp;
    sp.rd = &rd;
    EXPECT_EQ(enumerate_basis(sp, 4, 0).size(), 4u);
    auto b0 = enumerate_basis(sp, 0, 0);
    ASSERT_EQ(b0.size(), 1u);
    EXPECT_EQ(b0[0], vac(1));
}

TEST(Fock, EnumeratePairedSpaceParityLink) {
    Rep rep = assign_rep(Family::sl1_2n_2, 2, RepVariant::vacuum_wp);
    auto basis = enumerate_basis(rep.space(), 4, 1);
    ASSERT_FALSE(basis.empty());
    bool saw_odd = false;
    for (const auto& b : basis) {
        int coset = ((b.beta[1] % 2) + 2) % 2;
        EXPECT_EQ(coset, b.cliff_degree() % 2);
        if (b.cliff_degree() == 1) saw_odd = true;
    }
    EXPECT_TRUE(saw_odd);
}

TEST(Fock, EnumerateWithCliffordCountsMatchOracle) {
    Rep rep = assign_rep(Family::sl1_2n_2, 1, RepVariant::vacuum_wp);
    const RootDatum& rd = rep.datum();
    for (long E2 = 0; E2 <= 12; E2 += 2) {
        auto basis = enumerate_basis(rep.space(), E2, 0);
        std::vector<long> kdp(E2 + 1, 0);
        kdp[0] = 1;
        for (int i = 1; i <= rd.n; ++i)
            for (long r2 = 2; r2 <= E2; r2 += 2) {
                if (!rd.mode_allowed(i, -r2 / 2)) continue;
                for (long e = r2; e <= E2; ++e) kdp[e] += kdp[e - r2];
            }
        std::vector<std::array<long, 2>> cdp(E2 + 1, {0, 0});
        cdp[0][0] = 1;
        for (long m2 = 1; m2 <= E2; m2 += 2)
            for (long e = E2; e >= m2; --e)
                for (int p = 0; p < 2; ++p) cdp[e][p] += cdp[e - m2][1 - p];
        long expect = 0;
        for (long ek = 0; ek <= E2; ++ek)
            for (long ec = 0; ec + ek <= E2; ++ec)
                expect += kdp[ek] * cdp[ec][0];  // ball 0: coset 0, even degree
        EXPECT_EQ((long)basis.size(), expect) << E2;
    }
}

TEST(Fock, DeterministicOrder) {
    RootDatum rd = build_datum(Family::osp1_2n_1, 2, Norm::sec4);
    SpaceSpec sp;
    sp.rd = &rd;
    auto a = enumerate_basis(sp, 6, 1);
    auto b = enumerate_basis(sp, 6, 1);
    EXPECT_EQ(a, b);
    for (size_t k = 1; k < a.size(); ++k) EXPECT_TRUE(a[k - 1] < a[k]);
}

TEST(Fock, HDerivationKillsConstants) {
    RootDatum rd = build_datum(Family::osp1_2n_1, 1, Norm::sec4);
    for (long s = 1; s <= 3; ++s)
        EXPECT_TRUE(H_state(rd, rd.wp_half, 1, s, vac(1)).empty());
}

TEST(Fock, HPairingExample) {
    RootDatum rd = build_datum(Family::osp1_2n_1, 1, Norm::sec4);
    BasisState b = with_kappa(vac(1), 1, -1);
    FockVector v = H_state(rd, rd.wp_half, 1, 1, b);
    ASSERT_EQ(v.size(), 1u);
    FieldElem expect = u_coeff(rd, 1, 1, 1) * (rd.wp - rd.wp.inverse()) /
                       ((rd.q_i(1) - rd.q_i(1).inverse()).pow(2));
    EXPECT_EQ(v.begin()->second, expect);
    EXPECT_EQ(v.begin()->first, vac(1));
}

TEST(Fock, HeisenbergCommutatorRelation) {
    for (Family f : {Family::osp1_2n_1, Family::sl1_2n_2, Family::osp2_2n_2})
        for (int n : {1, 2}) {
            RootDatum rd = build_datum(f, n, Norm::sec4);
            SpaceSpec sp;
            sp.rd = &rd;
            auto basis = enumerate_basis(sp, 8, 0);
            for (const FieldElem& P_half : {rd.wp_half, FieldElem::s_pow(1)}) {
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j)
                        for (long r = -3; r <= 3; ++r)
                            for (long s = -3; s <= 3; ++s) {
                                if (r == 0 || s == 0) continue;
                                if (!rd.mode_allowed(i, r) || !rd.mode_allowed(j, s))
                                    continue;
                                FieldElem expect =
                                    (r + s == 0)
                                        ? u_coeff(rd, i, j, r) *
                                              (P_half.pow(2 * r) - P_half.pow(-2 * r)) /
                                              (FieldElem(r) *
                                               (rd.q_i(i) - rd.q_i(i).inverse()) *
                                               (rd.q_i(j) - rd.q_i(j).inverse()))
                                        : FieldElem::zero();
                                for (const auto& b : basis) {
                                    FockVector ab = H_action(
                                        rd, P_half, i, r, H_state(rd, P_half, j, s, b));
                                    FockVector ba = H_action(
                                        rd, P_half, j, s, H_state(rd, P_half, i, r, b));
                                    EXPECT_EQ(vdiff(ab, ba), scaled(unit(b), expect))
                                        << family_name(f) << " i=" << i << " j=" << j
                                        << " r=" << r << " s=" << s << " on "
                                        << b.str();
                                }
                            }
            }
        }
}

TEST(Fock, ExcludedModeThrows) {
    RootDatum rd = build_datum(Family::osp2_2n_2, 2, Norm::sec4);
    EXPECT_THROW(H_state(rd, rd.wp_half, 1, 1, vac(2)), ExcludedMode);
    EXPECT_THROW(H_state(rd, rd.wp_half, 1, -3, vac(2)), ExcludedMode);
}

TEST(Fock, LatticeOpsExamples) {
    // Phi_i e^{+-alpha_j}: since sum_{k>=i} alpha_k = eps_i, the sign is
    // (-1)^{(eps_i, alpha_j)} = (-1)^{delta_{i,j} + delta_{i,j+1}}.
    RootDatum rd = build_datum(Family::osp1_2n_1, 2, Norm::sec4);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int sgn : {1, -1}) {
                BasisState b = vac(2);
                b.beta[j - 1] = sgn;
                int expect = ((i == j) + (i == j + 1)) % 2 ? -1 : 1;
                EXPECT_EQ(phi_sign(rd, i, b), expect) << i << "," << j;
            }
    BasisState b = vac(2);
    b.beta = {2, -1};
    EXPECT_EQ(phi_sign(rd, 1, b) * phi_sign(rd, 1, b), 1);
    // sigma_i crossing rule used by the correspondence: xi_i vs Phi_j gives
    // (-1)^{(alpha_i, eps_j)} = (-1)^{delta_{i,j} + delta_{i+1,j}}
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            long e = 0;
            for (int k = j; k <= 2; ++k) e += rd.gram[i][k];
            int expect = ((i == j) + (i + 1 == j)) % 2 ? -1 : 1;
            EXPECT_EQ((((e % 2) + 2) % 2) ? -1 : 1, expect);
        }
}

TEST(Fock, CocycleTable) {
    RootDatum rd = build_datum(Family::osp1_2n_1, 2, Norm::sec3);
    std::vector<int> zerovec(2, 0);
    std::vector<int> a1{1, 0}, a2{0, 1};
    EXPECT_EQ(cocycle_sign(rd, zerovec, a1), 1);
    EXPECT_EQ(cocycle_sign(rd, a1, zerovec), 1);
    EXPECT_EQ(cocycle_sign(rd, a2, a1), 1);  // i > j
    long e11 = rd.gram[1][1] + rd.gram[1][1] * rd.gram[1][1];
    EXPECT_EQ(cocycle_sign(rd, a1, a1), e11 % 2 ? -1 : 1);
    long e12 = rd.gram[1][2] + rd.gram[1][1] * rd.gram[2][2];
    EXPECT_EQ(cocycle_sign(rd, a1, a2), e12 % 2 ? -1 : 1);
}

TEST(Fock, CocycleBimultiplicative) {
    RootDatum rd = build_datum(Family::sl1_2n_2, 2, Norm::sec3);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int t = 0; t < 50; ++t) {
        std::vector<int> a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)},
            c{coord(rng), coord(rng)};
        std::vector<int> ab{a[0] + b[0], a[1] + b[1]};
        std::vector<int> bc{b[0] + c[0], b[1] + c[1]};
        EXPECT_EQ(cocycle_sign(rd, ab, c),
                  cocycle_sign(rd, a, c) * cocycle_sign(rd, b, c));
        EXPECT_EQ(cocycle_sign(rd, a, bc),
                  cocycle_sign(rd, a, b) * cocycle_sign(rd, a, c));
    }
}

TEST(Fock, CliffordSquareZero) {
    FieldElem base_half = FieldElem::zeta(2) * FieldElem::s_pow(1);
    BasisState b = vac(1);
    FockVector once = clifford_state(CliffordKind::ns, base_half, -3, b);
    ASSERT_EQ(once.size(), 1u);
    FockVector twice =
        clifford_state(CliffordKind::ns, base_half, -3, once.begin()->first);
    EXPECT_TRUE(twice.empty());
}

TEST(Fock, CliffordAnticommutators) {
    for (CliffordKind kind : {CliffordKind::ns, CliffordKind::ramond}) {
        FieldElem base_half = FieldElem::zeta(2) * FieldElem::s_pow(1);
        long step = 2;
        long lo = kind == CliffordKind::ns ? -7 : -6;
        std::vector<BasisState> states;
        states.push_back(vac(1));
        for (long m1 = lo; m1 < 0; m1 += step) {
            BasisState b1 = vac(1);
            b1.cliff2 = {m1};
            states.push_back(b1);
            for (long m2 = m1 + step; m2 < 0; m2 += step) {
                BasisState b2 = vac(1);
                b2.cliff2 = {m2, m1};
                states.push_back(b2);
                for (long m3 = m2 + step; m3 < 0; m3 += step) {
                    BasisState b3 = vac(1);
                    b3.cliff2 = {m3, m2, m1};
                    states.push_back(b3);
                }
            }
        }
        long first = kind == CliffordKind::ns ? -7 : -8;
        for (long r2 = first; r2 <= -first; r2 += 2) {
            for (long s2 = first; s2 <= -first; s2 += 2) {
                if (kind == CliffordKind::ramond && (r2 % 2 || s2 % 2)) continue;
                if (kind == CliffordKind::ns && (r2 % 2 == 0 || s2 % 2 == 0)) continue;
                FieldElem expect = (r2 + s2 == 0)
                                       ? base_half.pow(r2) + base_half.pow(s2)
                                       : FieldElem::zero();
                for (const auto& b : states) {
                    FockVector rs, sr;
                    for (const auto& [m, c] : clifford_state(kind, base_half, s2, b))
                        add_scaled(rs, clifford_state(kind, base_half, r2, m), c);
                    for (const auto& [m, c] : clifford_state(kind, base_half, r2, b))
                        add_scaled(sr, clifford_state(kind, base_half, s2, m), c);
                    EXPECT_EQ(vsum(rs, sr), scaled(unit(b), expect))
                        << (kind == CliffordKind::ns ? "NS" : "Ramond")
                        << " r2=" << r2 << " s2=" << s2 << " on " << b.str();
                }
            }
        }
    }
}

TEST(Fock, CliffordContractionExample) {
    FieldElem base_half = FieldElem::zeta(2) * FieldElem::s_pow(1);
    FieldElem expect = base_half + base_half.inverse();
    BasisState excited = vac(1);
    excited.cliff2 = {-3};
    for (const BasisState& b : {vac(1), excited}) {
        FockVector rs, sr;
        for (const auto& [m, c] : clifford_state(CliffordKind::ns, base_half, -1, b))
            add_scaled(rs, clifford_state(CliffordKind::ns, base_half, 1, m), c);
        for (const auto& [m, c] : clifford_state(CliffordKind::ns, base_half, 1, b))
            add_scaled(sr, clifford_state(CliffordKind::ns, base_half, -1, m), c);
        EXPECT_EQ(vsum(rs, sr), scaled(unit(b), expect));
    }
}

TEST(Fock, RamondZeroModeSquaresToOne) {
    FieldElem base_half = FieldElem::s_pow(1);
    BasisState b = vac(1);
    EXPECT_EQ(clifford_state(CliffordKind::ramond, base_half, 0, b), unit(b));
    b.cliff2 = {-2};
    FockVector tw;
    for (const auto& [m, c] : clifford_state(CliffordKind::ramond, base_half, 0, b))
        add_scaled(tw, clifford_state(CliffordKind::ramond, base_half, 0, m), c);
    EXPECT_EQ(tw, unit(b));
}

TEST(Fock, WrongModeParityThrows) {
    FieldElem base_half = FieldElem::s_pow(1);
    EXPECT_THROW(clifford_state(CliffordKind::ns, base_half, -2, vac(1)),
                 WrongModeParity);
    EXPECT_THROW(clifford_state(CliffordKind::ramond, base_half, -1, vac(1)),
                 WrongModeParity);
}

TEST(Fock, KappaHatExamples) {
    Rep rep = assign_rep(Family::osp1_2n_1, 1, RepVariant::vacuum_wp);
    const RootDatum& rd = rep.datum();
    for (long r = -3; r < 0; ++r) EXPECT_TRUE(rep.kappa_hat(+1, 1, r)(vac(1)).empty());
    for (int beta1 : {-2, -1, 0, 1, 2}) {
        BasisState b = vac(1);
        b.beta[0] = beta1;
        FockVector got = rep.kappa_hat(+1, 1, 0)(b);
        long p2 = rd.pair2(1, b.beta);
        int sgn = ((p2 / 2) % 2 + 2) % 2 ? -1 : 1;
        FieldElem expect = rep.varpi(1) * FieldElem(sgn) * rd.wp_half.pow(p2);
        EXPECT_EQ(got, scaled(unit(b), expect));
    }
    EXPECT_TRUE(rep.kappa_hat(+1, 1, 1)(vac(1)).empty());
    BasisState k1 = with_kappa(vac(1), 1, -1);
    FockVector got = rep.kappa_hat(+1, 1, 1)(k1);
    FieldElem pair = heisenberg_pair(rd, rd.wp_half, 1, 1, 1);
    FieldElem expect = (rd.q_i(1) - rd.q_i(1).inverse()) * pair * rep.varpi(1);
    EXPECT_EQ(got, scaled(unit(vac(1)), expect));
}

TEST(Fock, ModeOpLinearity) {
    Rep rep = assign_rep(Family::osp1_2n_1, 2, RepVariant::vacuum_wp);
    auto basis = enumerate_basis(rep.space(), 4, 1);
    std::mt19937 rng(11);
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
    ModeOp op = rep.xi(+1, 2, 0);
    for (int t = 0; t < 10; ++t) {
        const BasisState &v = basis[pick(rng)], &w = basis[pick(rng)];
        FieldElem a = FieldElem::s_pow(1) + FieldElem(2),
                  b = FieldElem::zeta(2) - FieldElem::s_pow(-1);
        FockVector lin;
        add_scaled(lin, unit(v), a);
        add_scaled(lin, unit(w), b);
        EXPECT_EQ(op(lin), vsum(scaled(op(v), a), scaled(op(w), b)));
    }
}
