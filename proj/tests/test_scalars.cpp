#include <random>

#include <gtest/gtest.h>

#include "qaffine/field.hpp"
#include "qaffine/qseries.hpp"

using namespace qaffine;

namespace {

FieldElem S() { return FieldElem::s_pow(1); }
FieldElem Q() { return FieldElem::q_pow(1); }

// small random element: Laurent polynomial in s with cyclotomic coefficients
FieldElem random_elem(std::mt19937& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> coef(-3, 3), expo(-3, 3), comp(0, 3),
        nterms(1, 3);
    for (;;) {
        FieldElem acc;
        int t = nterms(rng);
        for (int k = 0; k < t; ++k) {
            Cyclo c;
            c.coeff(comp(rng)) = coef(rng);
            acc += FieldElem(c) * FieldElem::s_pow(expo(rng));
        }
        if (!nonzero || !acc.is_zero()) return acc;
    }
}

// substitution oracle: compare rational functions through exact evaluation at
// several rational points (more than any degree in play)
bool agree_by_evaluation(const FieldElem& a, const FieldElem& b) {
    int hits = 0;
    for (long num = 2; num < 60 && hits < 40; ++num) {
        Rational v(num, 7);
        try {
            if (a.eval_at(v) != b.eval_at(v)) return false;
            ++hits;
        } catch (const DivisionByZero&) {
            continue;  // pole; try the next point
        }
    }
    return hits >= 40;
}

}  // namespace

TEST(Scalars, CycloBasics) {
    Cyclo z = Cyclo::zeta_pow(1);
    EXPECT_EQ(z * z * z * z, Cyclo(-1));          // zeta^4 = -1
    EXPECT_EQ(Cyclo::zeta_pow(2) * Cyclo::zeta_pow(2), Cyclo(-1));  // i^2 = -1
    Cyclo x = Cyclo(3) + Cyclo::zeta_pow(1) * Cyclo(2) - Cyclo::zeta_pow(3);
    EXPECT_EQ(x * x.inverse(), Cyclo::one());
}

TEST(Scalars, STimesSIsQ) {
    EXPECT_EQ(S() * S(), Q());
    EXPECT_EQ((S() * S()).str(), "s^2");
}

TEST(Scalars, SelfDivisionIsOne) {
    FieldElem x = Q() - Q().inverse();  // (s^4-1)/s^2
    EXPECT_EQ(x.str(), "(s^4-1)/s^2");
    EXPECT_TRUE((x / x).is_one());
}

TEST(Scalars, ReductionOracle) {
    FieldElem one = FieldElem::one();
    FieldElem a = (one + FieldElem::zeta(2) * S()) / (one - S());
    FieldElem b = (one - S()) / (one + FieldElem::zeta(2) * S());
    FieldElem prod = a * b;
    EXPECT_TRUE(prod.is_one());
    EXPECT_TRUE(agree_by_evaluation(prod, one));
}

TEST(Scalars, FieldAxiomsRandom) {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        FieldElem a = random_elem(rng), b = random_elem(rng), c = random_elem(rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        FieldElem nz = random_elem(rng, true);
        EXPECT_TRUE((nz * nz.inverse()).is_one());
    }
}

TEST(Scalars, CanonicalFormIdempotent) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        FieldElem a = random_elem(rng), b = random_elem(rng, true);
        FieldElem x = a / b;
        FieldElem y = FieldElem::make(x.num(), x.den());
        EXPECT_EQ(x, y);
        EXPECT_EQ(x.num(), y.num());
        EXPECT_EQ(x.den(), y.den());
    }
}

TEST(Scalars, DivisionByZeroThrows) {
    EXPECT_THROW(FieldElem::one() / FieldElem::zero(), DivisionByZero);
    EXPECT_THROW(FieldElem::zero().inverse(), DivisionByZero);
}

TEST(Scalars, QIntBasics) {
    EXPECT_TRUE(q_int(1, Q()).is_one());
    EXPECT_TRUE(q_int(0, Q()).is_one());
    // direct rational-arithmetic oracle for [2]_q
    EXPECT_EQ(q_int(2, Q()), Q() + Q().inverse());
    for (long k = 1; k <= 5; ++k)
        EXPECT_EQ(q_int(k, Q()), q_int(k, Q().inverse()));
}

TEST(Scalars, QIntDefiningIdentity) {
    for (long k = -5; k <= 5; ++k) {
        if (k == 0) continue;
        FieldElem z = Q();
        EXPECT_EQ(q_int(k, z) * (z - z.inverse()), z.pow(k) - z.pow(-k));
        FieldElem zt = FieldElem::zeta(2) * S();
        EXPECT_EQ(q_int(k, zt) * (zt - zt.inverse()), zt.pow(k) - zt.pow(-k));
    }
}

TEST(Scalars, QIntDegenerateBase) {
    EXPECT_THROW(q_int(2, FieldElem(1)), DegenerateBase);
    EXPECT_THROW(q_int(2, FieldElem(-1)), DegenerateBase);
    EXPECT_THROW(q_int(3, FieldElem::zero()), DegenerateBase);
}

TEST(Scalars, QBinom) {
    for (long N = 0; N <= 6; ++N) {
        EXPECT_TRUE(q_binom(N, 0, Q()).is_one());
        for (long k = 0; k <= N; ++k)
            EXPECT_EQ(q_binom(N, k, Q()), q_binom(N, N - k, Q()));
    }
    // factorial-ratio oracle
    EXPECT_EQ(q_binom(2, 1, Q()), Q() + Q().inverse());
    EXPECT_THROW(q_binom(3, 4, Q()), OutOfRange);
    EXPECT_THROW(q_binom(3, -1, Q()), OutOfRange);
}

TEST(Scalars, QBinomShiftedBaseIsLaurent) {
    // base sqrt(-1) q^{1/2}: the Serre (C) binomials stay Laurent polynomial
    FieldElem base = FieldElem::zeta(2) * S();
    FieldElem v = q_binom(4, 2, base);
    EXPECT_TRUE(v.den().is_monomial());
}

TEST(Scalars, ParseRenderRoundTrip) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        FieldElem x = random_elem(rng) / random_elem(rng, true);
        FieldElem back = FieldElem::parse(x.str());
        EXPECT_EQ(x, back) << x.str();
    }
    EXPECT_EQ(FieldElem::parse("(s^4-1)/s^2"), Q() - Q().inverse());
    EXPECT_EQ(FieldElem::parse("z^2*s"), FieldElem::zeta(2) * S());
    EXPECT_EQ(FieldElem::parse("1/2 + 1/2"), FieldElem::one());
    EXPECT_THROW(FieldElem::parse("s +"), std::invalid_argument);
}

TEST(Scalars, EvalAtSubstitutes) {
    FieldElem x = (Q() - Q().inverse()) / (S() - S().inverse());  // [2]_s basically
    Cyclo v = x.eval_at(Rational(2));  // s=2: (16-1)/4 / ((4-1)/2) = (15/4)/(3/2)
    EXPECT_EQ(v, Cyclo(Rational(5, 2)));
}
