#include <gtest/gtest.h>

#include <map>
#include <random>
#include <tuple>

#include "jf/series.hpp"

using namespace jf;

namespace {

// naive oracle: exponents as exact rationals in an ordered map
using Key = std::tuple<Rat, Rat, Rat>;
struct KeyLess {
    bool operator()(const Key& x, const Key& y) const {
        for (int i = 0; i < 3; ++i) {
            const Rat& a = i == 0 ? std::get<0>(x) : i == 1 ? std::get<1>(x) : std::get<2>(x);
            const Rat& b = i == 0 ? std::get<0>(y) : i == 1 ? std::get<1>(y) : std::get<2>(y);
            if (a < b) return true;
            if (b < a) return false;
        }
        return false;
    }
};
using Naive = std::map<Key, CycRat, KeyLess>;

Naive to_naive(const FourierSeries& f) {
    Naive m;
    for (const auto& t : f.terms())
        m[{Rat(t.key.a, f.denom()), Rat(t.key.b, f.denom()), Rat(t.key.c, f.denom())}] = t.coeff;
    return m;
}

Naive naive_mul(const Naive& x, const Naive& y, int N) {
    Naive m;
    for (const auto& [k1, v1] : x)
        for (const auto& [k2, v2] : y) {
            Key k{std::get<0>(k1) + std::get<0>(k2), std::get<1>(k1) + std::get<1>(k2),
                  std::get<2>(k1) + std::get<2>(k2)};
            if (Rat(N) < std::get<0>(k) || Rat(N) < std::get<2>(k)) continue;
            m[k] += v1 * v2;
        }
    for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
    return m;
}

FourierSeries random_series(std::mt19937_64& rng, int D, int N, int nterms, bool cyclotomic = false) {
    std::uniform_int_distribution<int> ac(0, D * N), bb(-2 * D * N, 2 * D * N), cf(-9, 9), z(0, 23);
    std::vector<Term> ts;
    for (int i = 0; i < nterms; ++i) {
        CycRat v(cf(rng));
        if (cyclotomic) v = v * CycRat::zeta_pow(z(rng));
        ts.push_back(Term{ExpKey{ac(rng), bb(rng), ac(rng)}, v});
    }
    return FourierSeries::from_terms(D, N, ts);
}

}  // namespace

TEST(FourierSeries, MultiplicationMatchesNaiveOracle) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 40; ++t) {
        int D1 = std::vector<int>{1, 2, 3, 8}[t % 4], D2 = std::vector<int>{1, 4, 6, 24}[(t / 4) % 4];
        FourierSeries f = random_series(rng, D1, 3, 12, t % 3 == 0), g = random_series(rng, D2, 3, 12);
        EXPECT_EQ(to_naive(f * g), naive_mul(to_naive(f), to_naive(g), 3)) << "case " << t;
    }
}

TEST(FourierSeries, RingLaws) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        FourierSeries f = random_series(rng, 2, 2, 8), g = random_series(rng, 3, 2, 8),
                      h = random_series(rng, 8, 2, 8, true);
        EXPECT_EQ(f * (g + h), f * g + f * h);
        EXPECT_EQ((f * g) * h, f * (g * h));
        EXPECT_TRUE((f - f).is_zero());
        EXPECT_EQ(fs_pow(f, 3), f * f * f);
    }
}

TEST(FourierSeries, TruncationTakesMinimum) {
    FourierSeries f = FourierSeries::constant(CycRat(1), 5), g = FourierSeries::constant(CycRat(2), 3);
    EXPECT_EQ((f + g).trunc(), 3);
    EXPECT_EQ((f * g).trunc(), 3);
    EXPECT_THROW(g.truncated(4), std::invalid_argument);
    EXPECT_THROW(fs_equal_upto(f, g, 4), std::invalid_argument);
}

TEST(FourierSeries, NormalizedDenominator) {
    FourierSeries f = FourierSeries::from_terms(24, 2, {Term{ExpKey{12, 6, 36}, CycRat(1)}});
    EXPECT_EQ(f.denom(), 4);
    EXPECT_EQ(f.coeff_at(Rat(1, 2), Rat(1, 4), Rat(3, 2)), CycRat(1));
    EXPECT_EQ(f.lifted(24), FourierSeries::from_terms(24, 2, {Term{ExpKey{12, 6, 36}, CycRat(1)}}));
}

TEST(FourierSeries, PartialDerivativesScaleByExponent) {
    std::mt19937_64 rng(8);
    FourierSeries f = random_series(rng, 6, 2, 15, true);
    for (Var v : {Var::t11, Var::t12, Var::t22}) {
        FourierSeries d = d_partial(f, v);
        for (const auto& t : f.terms()) {
            int e = v == Var::t11 ? t.key.a : v == Var::t12 ? t.key.b : t.key.c;
            EXPECT_EQ(d.coeff_at(Rat(t.key.a, f.denom()), Rat(t.key.b, f.denom()), Rat(t.key.c, f.denom())),
                      t.coeff * Rat(e, f.denom()));
        }
    }
    // mixed partials commute
    EXPECT_EQ(d_partial(d_partial(f, Var::t11), Var::t12), d_partial(d_partial(f, Var::t12), Var::t11));
}

TEST(FourierSeries, WittSumsOverTau12) {
    std::mt19937_64 rng(12);
    FourierSeries f = random_series(rng, 2, 3, 30);
    FourierSeries w = witt(f);
    std::map<std::pair<int, int>, CycRat> want;
    for (const auto& t : f.terms()) want[{t.key.a, t.key.c}] += t.coeff;
    for (const auto& [k, v] : want)
        EXPECT_EQ(w.coeff_at(Rat(k.first, 2), Rat(0), Rat(k.second, 2)), v);
    for (const auto& t : w.terms()) EXPECT_EQ(t.key.b, 0);
    // witt is the identity on series without tau12 dependence
    EXPECT_EQ(witt(w), w);
}

TEST(FourierSeries, WittKillsDerivativeOfEvenSeries) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        FourierSeries f = random_series(rng, 4, 2, 20, true);
        FourierSeries even = f + involution_I(f);
        EXPECT_TRUE(witt(d_partial(even, Var::t12)).is_zero());
    }
}

TEST(FourierSeries, InvolutionAndTypeSplit) {
    std::mt19937_64 rng(14);
    FourierSeries f = random_series(rng, 2, 2, 20);
    EXPECT_EQ(involution_I(involution_I(f)), f);
    for (const auto& t : f.terms())
        EXPECT_EQ(involution_I(f).coeff(ExpKey{t.key.a, -t.key.b, t.key.c}), t.coeff);
    auto [p, m] = split_types(f);
    EXPECT_EQ(p + m, f);
    EXPECT_EQ(involution_I(p), p);
    EXPECT_EQ(involution_I(m), -m);
}

TEST(FourierSeries, TranslationMultipliesByCharacter) {
    std::mt19937_64 rng(15);
    FourierSeries f = random_series(rng, 8, 2, 20);
    FourierSeries g = translate(f, 1, 1, 0);
    for (const auto& t : f.terms())
        EXPECT_EQ(g.coeff(t.key), t.coeff * e_frac(t.key.a + t.key.b, 8)) << t.key.a << " " << t.key.b;
    EXPECT_EQ(translate(translate(f, 1, 0, 2), -1, 0, -2), f);
    EXPECT_EQ(swap_diag(swap_diag(f)), f);
}

TEST(FourierSeries, CompareReportsFirstMismatchInGoldenOrder) {
    FourierSeries f = FourierSeries::from_terms(1, 3, {Term{{0, 0, 0}, 1}, Term{{1, 0, 2}, 5}, Term{{2, 1, 1}, 7}});
    FourierSeries g = FourierSeries::from_terms(1, 3, {Term{{0, 0, 0}, 1}, Term{{1, 0, 2}, 4}, Term{{2, 1, 1}, 6}});
    CompareResult c = fs_equal_upto(f, g, 3);
    ASSERT_FALSE(c.equal);
    EXPECT_EQ(c.first_mismatch->a, 1);
    EXPECT_EQ(c.first_mismatch->c, 2);
    EXPECT_EQ(c.lhs, CycRat(5));
    EXPECT_TRUE(fs_equal_upto(f, g, 0).equal);
}

TEST(FourierSeries, JsonRoundTrip) {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 10; ++t) {
        FourierSeries f = random_series(rng, 24, 2, 20, true);
        f.set_weight(Rat(7, 2)).set_label("x");
        FourierSeries g = from_json(to_json(f));
        EXPECT_EQ(g, f);
        EXPECT_EQ(*g.weight(), Rat(7, 2));
    }
}

TEST(Sym2Series, ModuleOperations) {
    std::mt19937_64 rng(17);
    FourierSeries f = random_series(rng, 2, 2, 10);
    Sym2Series h{random_series(rng, 2, 2, 10), random_series(rng, 2, 2, 10), random_series(rng, 2, 2, 10), {}};
    Sym2Series m = s2_mul(f, h);
    EXPECT_EQ(m.h11, f * h.h11);
    EXPECT_TRUE(s2_sub(h, h).is_zero());
    Sym2Series i = s2_involution_I(h);
    EXPECT_EQ(i.h20, involution_I(h.h20));
    EXPECT_EQ(i.h11, involution_I(h.h11));
    EXPECT_TRUE(s2_sub(s2_involution_I(i), h).is_zero());
}
