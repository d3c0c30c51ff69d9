#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jf/cyc.hpp"
#include "jf/rat.hpp"

using namespace jf;

namespace {

Rat random_rat(std::mt19937_64& rng, long long span) {
    std::uniform_int_distribution<long long> n(-span, span), d(1, span);
    return Rat(n(rng), d(rng));
}

CycRat random_cyc(std::mt19937_64& rng, long long span) {
    CycRat x;
    for (int i = 0; i < CycRat::kDeg; ++i) x.set_coord(i, random_rat(rng, span));
    return x;
}

}  // namespace

TEST(Rat, CanonicalForm) {
    EXPECT_EQ(Rat(6, -4).str(), "-3/2");
    EXPECT_EQ(Rat(0, 7).str(), "0");
    EXPECT_EQ(Rat("10/-4"), Rat(-5, 2));
    EXPECT_THROW(Rat(1, 0), std::exception);
}

// the inline int64 path must agree with GMP on values near the overflow boundary
TEST(Rat, MatchesMpqAcrossPromotion) {
    std::mt19937_64 rng(11);
    const long long big = 3037000499LL;  // ~ sqrt(2^63)
    for (int t = 0; t < 2000; ++t) {
        long long span = t % 2 ? big : 1000;
        Rat a = random_rat(rng, span), b = random_rat(rng, span);
        mpq_class qa = a.to_mpq(), qb = b.to_mpq();
        EXPECT_EQ((a + b).to_mpq(), qa + qb);
        EXPECT_EQ((a - b).to_mpq(), qa - qb);
        EXPECT_EQ((a * b).to_mpq(), qa * qb);
        if (!b.is_zero()) EXPECT_EQ((a / b).to_mpq(), qa / qb);
        EXPECT_EQ(a < b, qa < qb);
    }
}

TEST(Rat, DemotesAfterCancellation) {
    Rat x(1LL << 62, 3);
    Rat y = x * x;
    EXPECT_FALSE(y.is_small());
    Rat z = y / x;
    EXPECT_EQ(z, x);
    EXPECT_TRUE(z.is_small());
}

TEST(CycRat, MinimalPolynomial) {
    CycRat z = CycRat::zeta_pow(1);
    CycRat z4 = z * z * z * z;
    CycRat z8 = z4 * z4;
    EXPECT_TRUE((z8 - z4 + CycRat(1)).is_zero());
    CycRat p = CycRat(1);
    for (int i = 0; i < 24; ++i) p *= z;
    EXPECT_TRUE(p.is_one());
}

TEST(CycRat, RootsOfUnityAgreeWithComplex) {
    for (int k = -30; k <= 30; ++k) {
        auto v = e_frac(k, 24).to_complex();
        double ang = 2 * M_PI * k / 24.0;
        EXPECT_NEAR(v.real(), std::cos(ang), 1e-12);
        EXPECT_NEAR(v.imag(), std::sin(ang), 1e-12);
    }
    EXPECT_EQ(e_frac(1, 8), CycRat::zeta_pow(3));
    EXPECT_EQ(e_frac(1, 2), CycRat(-1));
    EXPECT_EQ(e_frac(1, 4) * e_frac(1, 4), CycRat(-1));
}

TEST(CycRat, FieldAxiomsRandomized) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        CycRat a = random_cyc(rng, 50), b = random_cyc(rng, 50), c = random_cyc(rng, 50);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) EXPECT_TRUE((a * a.inv()).is_one());
        EXPECT_EQ(a - a, CycRat());
    }
}

TEST(CycRat, MultiplicationMatchesComplexEvaluation) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        CycRat a = random_cyc(rng, 20), b = random_cyc(rng, 20);
        auto p = (a * b).to_complex(), q = a.to_complex() * b.to_complex();
        EXPECT_NEAR(std::abs(p - q), 0.0, 1e-9 * (1 + std::abs(q)));
    }
}

TEST(CycRat, GaloisIsRingHomomorphism) {
    std::mt19937_64 rng(3);
    for (int j : {5, 7, 11, 13, 17, 19, 23}) {
        for (int t = 0; t < 20; ++t) {
            CycRat a = random_cyc(rng, 10), b = random_cyc(rng, 10);
            EXPECT_EQ((a * b).galois(j), a.galois(j) * b.galois(j));
            EXPECT_EQ((a + b).galois(j), a.galois(j) + b.galois(j));
        }
        EXPECT_EQ(CycRat::zeta_pow(1).galois(j), CycRat::zeta_pow(j));
    }
    CycRat a = random_cyc(rng, 10);
    EXPECT_NEAR(std::abs(a.conj().to_complex() - std::conj(a.to_complex())), 0.0, 1e-9);
}

TEST(CycRat, StringRoundTrip) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        CycRat a = random_cyc(rng, 1000);
        EXPECT_EQ(CycRat::from_strings(a.to_strings()), a);
    }
    EXPECT_TRUE(CycRat(Rat(3, 2)).is_rational());
    EXPECT_EQ(CycRat(Rat(3, 2)).str(), "3/2");
}
