#include <gtest/gtest.h>

#include <cmath>

#include "jf/catalog.hpp"
#include "jf/theta.hpp"

using namespace jf;

namespace {

// direct lattice sum of the degree-2 theta constant, exponents in units of 1/8
FourierSeries theta_oracle(const std::array<int, 4>& m, int N) {
    std::vector<Term> ts;
    const int R = 2 * N + 4;
    for (int n1 = -R; n1 <= R; ++n1)
        for (int n2 = -R; n2 <= R; ++n2) {
            int x1 = 2 * n1 + m[0], x2 = 2 * n2 + m[1];  // 2(n + m'/2)
            // e(x tau x^t / 8 + x m''/4)
            ExpKey k{x1 * x1, 2 * x1 * x2, x2 * x2};
            if (k.a > 8 * N || k.c > 8 * N) continue;
            ts.push_back(Term{k, e_frac(x1 * m[2] + x2 * m[3], 4)});
        }
    return FourierSeries::from_terms(8, N, ts);
}

// q prod (1 - q^n)^24 by repeated multiplication of integer vectors
std::vector<long long> delta_oracle(int N) {
    std::vector<long long> p(N + 1, 0);
    p[0] = 1;
    for (int n = 1; n <= N; ++n)
        for (int r = 0; r < 24; ++r)
            for (int i = N; i >= n; --i) p[i] -= p[i - n];
    std::vector<long long> d(N + 1, 0);
    for (int i = 1; i <= N; ++i) d[i] = p[i - 1];
    return d;
}

long long sigma3(int n) {
    long long s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += 1LL * d * d * d;
    return s;
}

CycRat one_var(const FourierSeries& f, int n) { return f.coeff_at(Rat(n), Rat(0), Rat(0)); }

}  // namespace

TEST(Theta, AllSixteenMatchDirectLatticeSum) {
    for (int i = 0; i < 16; ++i) {
        std::array<int, 4> m{i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1};
        EXPECT_EQ(theta_const(2, m, 3), theta_oracle(m, 3)) << ThetaChar::deg2(m[0], m[1], m[2], m[3]).str();
    }
}

TEST(Theta, OddCharacteristicsVanish) {
    int odd = 0;
    for (int i = 0; i < 16; ++i) {
        ThetaChar m = ThetaChar::deg2(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
        if (!m.even()) {
            ++odd;
            EXPECT_TRUE(theta_const(m, 4).is_zero()) << m.str();
        }
    }
    EXPECT_EQ(odd, 6);
    EXPECT_EQ(even_chars().size(), 10u);
}

// theta_{m + 2n} = (-1)^{m' . n''} theta_m
TEST(Theta, ShiftRuleOnAllCharacteristics) {
    for (int i = 0; i < 16; ++i) {
        std::array<int, 4> m{i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1};
        FourierSeries base = theta_const(2, m, 3);
        for (int j = 0; j < 16; ++j) {
            std::array<int, 4> n{j >> 3 & 1, j >> 2 & 1, j >> 1 & 1, j & 1};
            std::array<int, 4> s{m[0] + 2 * n[0], m[1] + 2 * n[1], m[2] + 2 * n[2], m[3] + 2 * n[3]};
            int sign = (m[0] * n[2] + m[1] * n[3]) % 2 ? -1 : 1;
            EXPECT_EQ(theta_const(2, s, 3), fs_scale(base, CycRat(sign)));
        }
    }
}

TEST(Theta, JacobiQuarticDegreeOne) {
    const int N = 8;
    FourierSeries A = deg1_theta(0, 0, false, N), B = deg1_theta(0, 1, false, N), C = deg1_theta(1, 0, false, N);
    EXPECT_EQ(fs_pow(A, 4), fs_pow(B, 4) + fs_pow(C, 4));
}

TEST(Theta, SeriesAreModularSupported) {
    for (const auto& m : even_chars()) EXPECT_TRUE(theta_const(m, 4).modular_support());
    EXPECT_TRUE(theta_lattice(gram_E8(), 2, 1, 2).modular_support());
    EXPECT_TRUE(theta_harmonic_c4(3).modular_support());
}

TEST(Lattice, A2DegreeOneExpansion) {
    FourierSeries t = theta_lattice(gram_A2(), 1, 1, 5);
    std::vector<int> want{1, 6, 0, 6, 6, 0};
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(one_var(t, n), CycRat(want[n])) << n;
}

TEST(Lattice, E8DegreeOneIsEisensteinE4) {
    FourierSeries t = theta_lattice(gram_E8(), 1, 1, 4);
    EXPECT_EQ(one_var(t, 0), CycRat(1));
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(one_var(t, n), CycRat(240 * sigma3(n))) << n;
}

TEST(Lattice, GramMatrices) {
    EXPECT_EQ(gram_A2().det(), Rat(3));
    EXPECT_EQ(gram_E6().det(), Rat(3));
    EXPECT_EQ(gram_E8().det(), Rat(1));
    for (const GramMatrix* g : {&gram_A2(), &gram_E6(), &gram_E6s(), &gram_E8()}) EXPECT_TRUE(g->positive_definite());
}

// degree-2 coefficient at T counts pairs (x, y) with Q(x)=a, B(x,y)=b, Q(y)=c
TEST(Lattice, A2DegreeTwoMatchesPairCount) {
    const int N = 2;
    auto vs = short_vectors(gram_A2(), 2 * N);
    FourierSeries t = theta_lattice(gram_A2(), 2, 1, N);
    std::map<std::tuple<long long, long long, long long>, long long> cnt;
    for (const auto& x : vs)
        for (const auto& y : vs) {
            long long a = gram_A2().qform_raw(x), c = gram_A2().qform_raw(y);
            std::vector<int> s{x[0] + y[0], x[1] + y[1]};
            long long b = (gram_A2().qform_raw(s) - a - c) / 2;
            cnt[{a, b, c}]++;
        }
    for (const auto& [k, v] : cnt) {
        auto [a, b, c] = k;
        EXPECT_EQ(t.coeff_at(Rat(a, 2), Rat(b), Rat(c, 2)), CycRat(v));
    }
}

TEST(OneVariable, DeltaProductFormula) {
    auto want = delta_oracle(6);
    FourierSeries d = delta_series(6);
    for (int n = 0; n <= 6; ++n) EXPECT_EQ(one_var(d, n), CycRat(want[n])) << n;
    EXPECT_EQ(one_var(d, 2), CycRat(-24));
    EXPECT_EQ(one_var(d, 3), CycRat(252));
}

TEST(OneVariable, Gamma3Thetas) {
    auto [t0, t1] = gamma3_thetas(4);
    EXPECT_EQ(one_var(t0, 0), CycRat(1));
    EXPECT_EQ(one_var(t0, 1), CycRat(6));
    EXPECT_EQ(one_var(t0, 3), CycRat(6));
}

TEST(SecondKind, DerivativesAreConsistent) {
    for (int nu = 0; nu < 4; ++nu) {
        SecondKind s = theta_second_kind(nu >> 1, nu & 1, 3);
        EXPECT_EQ(s.d11, d_partial(s.value, Var::t11));
        EXPECT_EQ(s.d22, d_partial(s.value, Var::t22));
    }
}

TEST(FloatEval, SeriesAgreesWithDefiningSum) {
    CMat2 tau{cplx(0, 1.3), cplx(0, 0.1), cplx(0, 1.7)};
    for (const auto& m : even_chars()) {
        cplx s = float_eval(theta_const(m, 8), tau).value;
        cplx d = theta_defsum_eval({m.m[0], m.m[1], m.m[2], m.m[3]}, tau);
        EXPECT_LT(std::abs(s - d), 1e-12) << m.str();
    }
    cplx s = float_eval(theta_lattice(gram_E8(), 2, 1, 6), tau).value;
    cplx d = theta_lattice_defsum_eval(gram_E8(), tau);
    EXPECT_LT(std::abs(s - d) / std::abs(d), 1e-10);
}

TEST(FloatEval, JetDerivativeMatchesFiniteDifference) {
    CMat2 tau{cplx(0.1, 1.1), cplx(0.05, 0.2), cplx(-0.2, 1.4)};
    std::array<int, 4> m{1, 0, 0, 1};
    Jet j = theta_defsum_jet(m, tau);
    const double h = 1e-6;
    CMat2 tp = tau, tm = tau;
    tp.a12 += cplx(h, 0);
    tm.a12 -= cplx(h, 0);
    // (1/2 pi i) d/d tau12
    cplx fd = (theta_defsum_eval(m, tp) - theta_defsum_eval(m, tm)) / (2 * h) / cplx(0, 2 * M_PI);
    EXPECT_LT(std::abs(fd - j.d12), 1e-6);
}
