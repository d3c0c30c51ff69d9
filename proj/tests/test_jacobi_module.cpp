#include <gtest/gtest.h>

#include "jf/jacobi.hpp"
#include "jf/suite.hpp"

using namespace jf;

namespace {

constexpr int N = 3;

XiPair scalar(GroupId g, const std::string& n) {
    XiPair p;
    p.name = n;
    p.f0 = catalog(g).form(n);
    p.weight = p.f0->weight;
    p.group = g;
    return p;
}

bool pair_eq(const XiValue& a, const XiValue& b) {
    return a.f0 == b.f0 && a.hhat.h20 == b.hhat.h20 && a.hhat.h11 == b.hhat.h11 && a.hhat.h02 == b.hhat.h02;
}

}  // namespace

// f.(g, h) = (fg, f h + {f,g}/(k2 (k1 + k2)))
TEST(ModuleAction, ExplicitFormula) {
    const auto& c = catalog(GroupId::Gamma0_3psi);
    Expr f = c.form("a1"), g = c.form("b3");
    XiValue v = eval_pair(module_action(f, scalar(GroupId::Gamma0_3psi, "b3")), N);
    EXPECT_EQ(v.f0, eval(f, N) * eval(g, N));
    Sym2Series br = eval_sym2(e_b2(f, g), N);
    EXPECT_EQ(v.hhat.h11, fs_scale(br.h11, CycRat(Rat(1, 12))));
    EXPECT_EQ(v.hhat.h20, fs_scale(br.h20, CycRat(Rat(1, 12))));
}

TEST(ModuleAction, RelationsOnGeneratorPairs) {
    const GroupId g = GroupId::Gamma0_2;
    const auto& c = catalog(g);
    for (const char* a : {"X2", "Y4"})
        for (const char* b : {"Z4", "K6"}) {
            Expr f = c.form(a), h = c.form(b);
            const Rat k1 = f->weight, k2 = h->weight;
            XiValue fg = eval_pair(module_action(f, scalar(g, b)), N);
            XiValue gf = eval_pair(module_action(h, scalar(g, a)), N);
            // rel1
            Sym2Series br = eval_sym2(e_b2(f, h), N);
            Sym2Series d = s2_scale(s2_sub(fg.hhat, gf.hhat), CycRat(k1 * k2));
            EXPECT_TRUE(s2_sub(d, br).is_zero()) << a << b;
            EXPECT_EQ(fg.f0, gf.f0);
            // rel4
            Sym2Series comb = s2_add(s2_scale(fg.hhat, CycRat(k2)), s2_scale(gf.hhat, CycRat(k1)));
            EXPECT_TRUE(comb.is_zero()) << a << b;
        }
}

TEST(ModuleAction, OnTypeTwoPair) {
    const auto& p = find_generator(GroupId::Gamma0_2, JType::II, "II.w13");
    Expr f = catalog(GroupId::Gamma0_2).form("X2");
    XiValue v = eval_pair(module_action(f, p), N);
    XiValue w = eval_pair(p, N);
    EXPECT_TRUE(v.f0.is_zero());
    EXPECT_TRUE(s2_sub(v.hhat, s2_mul(eval(f, N), w.hhat)).is_zero());
}

TEST(Witt, ResidualOfScalarPairIsTheDerivativeTerm) {
    XiPair p = scalar(GroupId::Gamma0_2, "K6");
    WittResult w = witt_condition(p, sp_identity(), N);
    EXPECT_TRUE(w.pass);
    EXPECT_TRUE(w.residual.is_zero());
    FourierSeries direct = witt(fs_scale(d_partial(eval(p.f0, N), Var::t12), CycRat(Rat(1, 6))));
    EXPECT_TRUE(direct.is_zero());
}

TEST(Witt, NegativeControls) {
    EXPECT_FALSE(witt_condition(scalar(GroupId::Gamma0_3psi, "e3"), sp_K(), N).pass);
    EXPECT_FALSE(witt_condition(scalar(GroupId::Gamma0_4psi, "c2"), sp_M1(), N).pass);
    EXPECT_TRUE(witt_condition(scalar(GroupId::Gamma0_4psi, "c2"), sp_identity(), N).pass);
}

TEST(Generators, CheapOnesPassOnEveryRepresentative) {
    for (GroupId g : all_groups())
        for (const auto& p : catalog(g).gens_I) {
            GeneratorReport r = verify_jacobi_generator(g, JType::I, p.name, N);
            EXPECT_TRUE(r.pass) << group_name(g) << " " << p.name;
            EXPECT_EQ(r.per_rep.size(), catalog(g).coset_reps.size());
        }
    EXPECT_TRUE(verify_jacobi_generator(GroupId::Gamma0_2, JType::II, "II.w17", N).pass);
    EXPECT_THROW(find_generator(GroupId::Gamma0_2, JType::II, "II.nope"), std::exception);
}

TEST(Generators, TypeParity) {
    for (GroupId g : all_groups())
        for (JType t : {JType::I, JType::II})
            for (const auto& p : (t == JType::I ? catalog(g).gens_I : catalog(g).gens_II)) {
                if (p.weight.to_double() > 12) continue;
                XiValue v = eval_pair(p, N);
                const CycRat eps(t == JType::I ? 1 : -1);
                EXPECT_EQ(involution_I(v.f0), fs_scale(v.f0, eps)) << p.name;
                EXPECT_EQ(involution_I(v.hhat.h11), fs_scale(v.hhat.h11, -eps)) << p.name;
                EXPECT_EQ(involution_I(v.hhat.h20), fs_scale(v.hhat.h20, eps)) << p.name;
            }
}

TEST(ThetaMatrix, RowThreeHasVanishingWittImage) {
    auto m = theta_matrix(N);
    ASSERT_EQ(m.size(), 4u);
    for (int j = 0; j < 4; ++j) EXPECT_TRUE(witt(m[2][j]).is_zero()) << j;
    // first row is the theta constants themselves
    EXPECT_FALSE(m[0][0].is_zero());
}

TEST(ModuleStructure, Level00TypeOneUpToSix) {
    ModuleReport r = verify_module_structure(GroupId::Gamma00_2psi, Space::JI, 6, 4, 8);
    ASSERT_EQ(r.rows.size(), 6u);
    std::vector<long long> want{1, 3, 6, 11, 18, 27};
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_EQ(r.rows[i].predicted, want[i]);
        EXPECT_EQ(r.rows[i].rank, want[i]);
        EXPECT_EQ(r.rows[i].status, RankStatus::Confirmed);
    }
    EXPECT_TRUE(r.ok());
}

TEST(ModuleStructure, RingFreenessLevelThree) {
    ModuleReport r = verify_module_structure(GroupId::Gamma0_3psi, Space::AI, 8, 4, 8);
    EXPECT_TRUE(r.ok());
    for (const auto& row : r.rows) EXPECT_EQ(row.rank, row.predicted) << row.k;
}

TEST(ModuleStructure, EmptyForZeroWeight) {
    ModuleReport r = verify_module_structure(GroupId::Gamma0_2, Space::JI, 0, 4, 8);
    EXPECT_TRUE(r.rows.empty());
    EXPECT_TRUE(r.ok());
}

// a too-small ceiling must report inconclusive, never a mismatch
TEST(ModuleStructure, LowCeilingIsInconclusiveNotWrong) {
    ModuleReport r = verify_module_structure(GroupId::Gamma00_2psi, Space::JI, 6, 1, 1);
    bool inconclusive = false;
    for (const auto& row : r.rows) {
        EXPECT_NE(row.status, RankStatus::Mismatch) << row.k;
        inconclusive = inconclusive || row.status == RankStatus::Inconclusive;
    }
    EXPECT_TRUE(inconclusive);
}

TEST(Smoke, EveryGeneratorAndRepresentative) {
    for (GroupId g : all_groups()) {
        if (g == GroupId::Gamma0_3psi) continue;  // covered by the suite; slow lattice sums
        for (const auto& it : smoke_test(g, smoke_point()))
            EXPECT_LE(it.rel_err, 1e-9) << it.generator << " " << it.form << " " << it.rep;
    }
}
