#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "jf/catalog.hpp"
#include "jf/operators.hpp"

using namespace jf;

namespace {

using FS = FourierSeries;
constexpr int N = 3;

WeightedForm wf(const GroupCatalog& c, const std::string& name) {
    const Expr& e = c.form(name);
    return WeightedForm{eval(e, N), e->weight, name};
}

// determinant by the permutation sum
FS det_perm(const std::vector<std::vector<FS>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    FS acc = FS::constant(CycRat(0), N);
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
        FS t = FS::constant(CycRat(inv % 2 ? -1 : 1), N);
        for (std::size_t i = 0; i < n; ++i) t = t * m[i][p[i]];
        acc = acc + t;
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

// rows (k f, d11 f, d12 f, d22 f) per form
std::vector<FS> column(const WeightedForm& f) {
    return {fs_scale(f.series, CycRat(f.weight)), d_partial(f.series, Var::t11), d_partial(f.series, Var::t12),
            d_partial(f.series, Var::t22)};
}

const GroupCatalog& L2() { return catalog(GroupId::Gamma0_2); }

}  // namespace

TEST(Bracket2, ExplicitFormula) {
    WeightedForm f = wf(L2(), "X2"), g = wf(L2(), "Z4");
    Sym2Series b = bracket2(f, g);
    // k_f f dg - k_g g df
    EXPECT_EQ(b.h11, fs_scale(f.series * d_partial(g.series, Var::t12), CycRat(2)) -
                         fs_scale(g.series * d_partial(f.series, Var::t12), CycRat(4)));
    EXPECT_EQ(*b.weight, Rat(6));
}

TEST(Bracket2, AntisymmetryAndLeibniz) {
    WeightedForm f = wf(L2(), "X2"), g = wf(L2(), "Y4"), h = wf(L2(), "K6");
    Sym2Series a = bracket2(f, g), b = bracket2(g, f);
    EXPECT_TRUE(s2_add(a, b).is_zero());
    EXPECT_TRUE(bracket2(f, f).is_zero());
    WeightedForm fg{f.series * g.series, f.weight + g.weight, "X2Y4"};
    Sym2Series lhs = bracket2(fg, h);
    Sym2Series rhs = s2_add(s2_mul(f.series, bracket2(g, h)), s2_mul(g.series, bracket2(f, h)));
    EXPECT_TRUE(s2_sub(lhs, rhs).is_zero());
}

// W({f,g}_11) = 0 for type-I inputs, on every pair of ring generators
TEST(Bracket2, WittOfMixedComponentVanishesForTypeI) {
    for (GroupId g : all_groups()) {
        const auto& c = catalog(g);
        for (std::size_t i = 0; i < c.ring_gens.size(); ++i)
            for (std::size_t j = i + 1; j < c.ring_gens.size(); ++j)
                EXPECT_TRUE(witt(bracket2(wf(c, c.ring_gens[i]), wf(c, c.ring_gens[j])).h11).is_zero())
                    << group_name(g) << " " << c.ring_gens[i] << " " << c.ring_gens[j];
    }
}

// the analogous statement for 3-brackets fails in general
TEST(Bracket3, WittOfMixedComponentCanBeNonzero) {
    EXPECT_FALSE(witt(bracket3(wf(L2(), "X2"), wf(L2(), "Y4"), wf(L2(), "Z4")).h11).is_zero());
    EXPECT_TRUE(witt(bracket3(wf(L2(), "X2"), wf(L2(), "Y4"), wf(L2(), "K6")).h11).is_zero());
}

TEST(Bracket3, MinorsOfTheDerivativeMatrix) {
    WeightedForm f = wf(L2(), "X2"), g = wf(L2(), "Y4"), h = wf(L2(), "Z4");
    auto a = column(f), b = column(g), c = column(h);
    auto minor = [&](int r1, int r2, int r3) {
        return det_perm({{a[r1], b[r1], c[r1]}, {a[r2], b[r2], c[r2]}, {a[r3], b[r3], c[r3]}});
    };
    Sym2Series s = bracket3(f, g, h);
    // rows (k, d11, d12, d22) = (0, 1, 2, 3)
    EXPECT_EQ(s.h20, minor(0, 1, 2));
    EXPECT_EQ(s.h02, minor(0, 2, 3));
    EXPECT_EQ(s.h11, fs_scale(minor(0, 1, 3), CycRat(2)));
    EXPECT_EQ(*s.weight, Rat(11));
}

TEST(Bracket3, AlternatingAndProductRule) {
    WeightedForm f = wf(L2(), "X2"), g = wf(L2(), "Y4"), h = wf(L2(), "Z4"), k = wf(L2(), "K6");
    Sym2Series base = bracket3(f, g, h);
    EXPECT_TRUE(s2_add(base, bracket3(g, f, h)).is_zero());
    EXPECT_TRUE(s2_add(base, bracket3(f, h, g)).is_zero());
    EXPECT_TRUE(s2_sub(base, bracket3(g, h, f)).is_zero());  // cyclic shift is even
    EXPECT_TRUE(bracket3(f, g, f).is_zero());
    WeightedForm hk{h.series * k.series, h.weight + k.weight, "Z4K6"};
    Sym2Series lhs = bracket3(f, g, hk);
    Sym2Series rhs = s2_add(s2_mul(h.series, bracket3(f, g, k)), s2_mul(k.series, bracket3(f, g, h)));
    EXPECT_TRUE(s2_sub(lhs, rhs).is_zero());
}

TEST(Bracket4, FullDeterminant) {
    WeightedForm f = wf(L2(), "X2"), g = wf(L2(), "Y4"), h = wf(L2(), "Z4"), k = wf(L2(), "K6");
    auto a = column(f), b = column(g), c = column(h), d = column(k);
    std::vector<std::vector<FS>> m;
    for (int r = 0; r < 4; ++r) m.push_back({a[r], b[r], c[r], d[r]});
    FS b4 = bracket4(f, g, h, k);
    EXPECT_EQ(b4, det_perm(m));
    EXPECT_EQ(*b4.weight(), Rat(19));
    EXPECT_EQ(bracket4(g, f, h, k), -b4);
    EXPECT_TRUE(bracket4(f, g, f, k).is_zero());
}

TEST(D2, ExplicitFormula) {
    WeightedForm f = wf(L2(), "Y4");
    FS want = fs_scale(d_partial(d_partial(f.series, Var::t12), Var::t12), CycRat(2)) -
              d_partial(d_partial(f.series, Var::t11), Var::t22);
    EXPECT_EQ(d2_op(f), want);
}

TEST(Expr, EvaluationMatchesDirectArithmetic) {
    const auto& c = L2();
    FS x = eval(c.form("X2"), N), y = eval(c.form("Y4"), N);
    EXPECT_EQ(eval(e_add(c.form("X2"), c.form("X2")), N), fs_scale(x, CycRat(2)));
    EXPECT_EQ(eval(e_mul(c.form("X2"), c.form("Y4")), N), x * y);
    EXPECT_EQ(eval(e_pow(c.form("X2"), 3), N), fs_pow(x, 3));
    EXPECT_EQ(eval(e_scale(CycRat(Rat(1, 3)), c.form("Y4")), N), fs_scale(y, CycRat(Rat(1, 3))));
    EXPECT_EQ(*eval_sym2(e_b2(c.form("X2"), c.form("Y4")), N).weight, Rat(6));
}

TEST(Expr, SlashCommutesWithBracketsStructurally) {
    const auto& c = L2();
    Expr b = e_b3(c.form("X2"), c.form("Z4"), c.form("K6"));
    Sym2Series lhs = eval_sym2(slash(b, sp_M1()), N);
    Sym2Series rhs = eval_sym2(e_b3(slash(c.form("X2"), sp_M1()), slash(c.form("Z4"), sp_M1()),
                                     slash(c.form("K6"), sp_M1())),
                               N);
    EXPECT_TRUE(s2_sub(lhs, rhs).is_zero());
    EXPECT_THROW(slash(e_opaque("x", Rat(2), [](int n) { return FS::constant(CycRat(1), n); }), sp_M1()),
                 std::invalid_argument);
}

TEST(Expr, JetAgreesWithSeriesEvaluation) {
    const CMat2 tau{cplx(0, 1.3), cplx(0, 0.1), cplx(0, 1.7)};
    const auto& c = L2();
    for (const char* n : {"X2", "Y4", "Z4", "K6"}) {
        Jet j = eval_jet(c.form(n), tau);
        cplx s = float_eval(eval(c.form(n), 8), tau).value;
        EXPECT_LT(std::abs(j.v - s), 1e-10 * std::max(1.0, std::abs(s))) << n;
        cplx d = float_eval(d_partial(eval(c.form(n), 8), Var::t12), tau).value;
        EXPECT_LT(std::abs(j.d12 - d), 1e-8 * std::max(1.0, std::abs(d))) << n;
    }
    auto js = eval_jets({c.form("X2"), c.form("K6")}, tau);
    EXPECT_EQ(js.size(), 2u);
    EXPECT_EQ(js[1].v, eval_jet(c.form("K6"), tau).v);
}
