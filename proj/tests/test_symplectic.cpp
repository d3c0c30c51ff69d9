#include <gtest/gtest.h>

#include <complex>
#include <set>

#include "jf/catalog.hpp"
#include "jf/suite.hpp"
#include "jf/symplectic.hpp"

using namespace jf;

namespace {

using C = std::complex<double>;
struct CM {
    C a, b, c, d;
};
CM mul(const CM& x, const CM& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
CM add(const CM& x, const CM& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
CM of(const Mat2& m) { return {C(double(m.a)), C(double(m.b)), C(double(m.c)), C(double(m.d))}; }
C det(const CM& m) { return m.a * m.d - m.b * m.c; }
CM inv(const CM& m) {
    C D = det(m);
    return {m.d / D, -m.b / D, -m.c / D, m.a / D};
}

// det(C tau + D)^{-k} prod theta(M<tau>), k = (number of thetas)/2, even length only
C slash_float(const std::vector<ThetaChar>& chars, const SymplecticMat& M, const CMat2& tau) {
    CM t{tau.a11, tau.a12, tau.a12, tau.a22};
    CM den = add(mul(of(M.C()), t), of(M.D()));
    CM mt = mul(add(mul(of(M.A()), t), of(M.B())), inv(den));
    CMat2 z{mt.a, 0.5 * (mt.b + mt.c), mt.d};
    C p = 1;
    for (const auto& m : chars) p *= theta_defsum_eval({m.m[0], m.m[1], m.m[2], m.m[3]}, z);
    return p * std::pow(det(den), -static_cast<int>(chars.size() / 2));
}

C product_at(const std::vector<ThetaChar>& chars, const CMat2& tau) {
    C p = 1;
    for (const auto& m : chars) p *= theta_defsum_eval({m.m[0], m.m[1], m.m[2], m.m[3]}, tau);
    return p;
}

std::vector<ThetaChar> chars(std::initializer_list<const char*> s) {
    std::vector<ThetaChar> v;
    for (const char* c : s) v.push_back(ThetaChar::parse(c));
    return v;
}

}  // namespace

TEST(Symplectic, NamedMatricesAreSymplectic) {
    for (const auto& M : {sp_identity(), sp_J(), sp_M1(), sp_M1sq(), sp_M2(), sp_M3(), sp_K(), sp_Iinv()})
        EXPECT_TRUE(SymplecticMat::is_symplectic(M.entries())) << M.str();
    EXPECT_THROW(SymplecticMat({1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}), std::exception);
    EXPECT_EQ(sp_K(), sp_J() * sp_M2());
    EXPECT_EQ(sp_M1sq(), sp_M1() * sp_M1());
    EXPECT_TRUE((sp_M3() * sp_M3().inverse()).is_identity());
    EXPECT_TRUE((sp_J() * sp_J() * sp_J() * sp_J()).is_identity());
}

TEST(Symplectic, TriangularDecompositionMultipliesBack) {
    for (const auto& M : {sp_J(), sp_M1(), sp_M2(), sp_M3(), sp_K(), sp_K() * sp_M1()}) {
        for (int variant : {0, 1}) {
            auto fs = decompose_triangular(M, variant);
            SymplecticMat p;
            for (const auto& f : fs) p = p * f;
            EXPECT_EQ(p, M) << M.str();
        }
    }
}

// the multiplier kappa^2 must not depend on the factorization chosen
TEST(Symplectic, KappaSquaredIsFactorizationIndependent) {
    for (const auto& M : {sp_J(), sp_M1(), sp_M3(), sp_K(), sp_M1() * sp_K(), sp_M3() * sp_M1()})
        EXPECT_EQ(kappa_sq(M, 0), kappa_sq(M, 1)) << M.str();
    EXPECT_TRUE(kappa_sq(sp_identity()).is_one());
}

TEST(Symplectic, CharacteristicActionPermutesEvenCharacteristics) {
    for (const auto& M : {sp_J(), sp_M1(), sp_M2(), sp_M3(), sp_K()}) {
        std::set<int> seen;
        for (const auto& m : even_chars()) {
            ThetaChar o = char_action(M, m);
            EXPECT_TRUE(o.even());
            seen.insert(o.index());
        }
        EXPECT_EQ(seen.size(), 10u);
    }
}

TEST(Symplectic, ThetaSlashMatchesFloatTransformation) {
    const CMat2 tau = smoke_point();
    const std::vector<std::vector<ThetaChar>> products = {
        chars({"0000", "0000", "0000", "0000"}), chars({"0100", "0010", "0110", "0000"}),
        chars({"1000", "1000", "0001", "0001"}), chars({"1111", "1100", "0011", "1001", "0110", "0100"})};
    for (const auto& M : {sp_J(), sp_M1(), sp_M2(), sp_M3(), sp_K(), sp_M1sq()})
        for (const auto& p : products) {
            SlashedMonomial s = slash_theta_product(p, M);
            C structural = s.factor.to_complex() * product_at(s.chars, tau);
            C direct = slash_float(p, M, tau);
            EXPECT_LT(std::abs(structural - direct), 1e-9 * std::max(1.0, std::abs(direct))) << M.str();
        }
}

// the printed level-2 row Z4|M1 against the float transformation
TEST(Symplectic, LevelTwoZ4UnderM1Numerically) {
    const CMat2 tau = smoke_point();
    const GroupCatalog& cat = catalog(GroupId::Gamma0_2);
    C direct = slash_direct(cat.form("Z4"), sp_M1(), tau);
    auto q4 = [&](const char* c) { return std::pow(product_at(chars({c}), tau), 4); };
    C corrected = std::pow(q4("0100") - q4("0010"), 2) / 16384.0;
    C printed = std::pow(q4("0110") - q4("0010"), 2) / 16384.0;
    EXPECT_LT(std::abs(direct - corrected), 1e-9 * std::abs(direct));
    EXPECT_GT(std::abs(direct - printed), 1e-3 * std::abs(direct));
}

TEST(Symplectic, LatticeSlashUnderJ) {
    for (const GramMatrix* g : {&gram_A2(), &gram_E6(), &gram_E8()}) {
        LatticeSlash s = slash_lattice_J(*g);
        // S_out = scale * S^-1
        Rat scale_n(1);
        for (int i = 0; i < g->n; ++i) scale_n *= Rat(s.scale);
        EXPECT_EQ(s.S_out.det() * g->det(), scale_n) << g->name;
        EXPECT_TRUE(s.S_out.positive_definite());
    }
}

TEST(Symplectic, CosetRepresentativeCounts) {
    EXPECT_EQ(gamma0p_right_reps(2).size(), 15u);  // (p+1)(p^2+1)
    EXPECT_EQ(gamma0p_right_reps(3).size(), 40u);
    EXPECT_EQ(coset_reps(GroupId::Gamma2).size(), 1u);
    EXPECT_EQ(coset_reps(GroupId::Gamma0_2).size(), 2u);
    EXPECT_EQ(coset_reps(GroupId::Gamma0_3psi).size(), 2u);
    EXPECT_EQ(coset_reps(GroupId::Gamma0_4psi).size(), 3u);
    EXPECT_EQ(coset_reps(GroupId::Gamma00_2psi).size(), 4u);
}

TEST(Symplectic, GroupNames) {
    for (GroupId g : all_groups()) EXPECT_EQ(parse_group(group_name(g)), g);
    EXPECT_EQ(parse_group("3"), GroupId::Gamma0_3psi);
    EXPECT_EQ(parse_group("00"), GroupId::Gamma00_2psi);
    EXPECT_THROW(parse_group("7"), std::exception);
}
