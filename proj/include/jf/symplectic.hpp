#pragma once

#include <array>
#include <string>
#include <vector>

#include "jf/cyc.hpp"
#include "jf/theta.hpp"

namespace jf {

struct Mat2 {
    long long a = 0, b = 0, c = 0, d = 0;  // [[a, b], [c, d]]
    Mat2 operator*(const Mat2& o) const { return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d}; }
    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    Mat2 t() const { return {a, c, b, d}; }
    long long det() const { return a * d - b * c; }
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    static Mat2 identity() { return {1, 0, 0, 1}; }
};

class SymplecticMat {
public:
    SymplecticMat();  // identity
    // row-major 4x4 integer entries; throws unless symplectic
    explicit SymplecticMat(const std::array<long long, 16>& e, std::string name = "");
    static SymplecticMat from_blocks(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D, std::string name = "");

    long long at(int i, int j) const { return e_[static_cast<std::size_t>(i * 4 + j)]; }
    Mat2 A() const { return {at(0, 0), at(0, 1), at(1, 0), at(1, 1)}; }
    Mat2 B() const { return {at(0, 2), at(0, 3), at(1, 2), at(1, 3)}; }
    Mat2 C() const { return {at(2, 0), at(2, 1), at(3, 0), at(3, 1)}; }
    Mat2 D() const { return {at(2, 2), at(2, 3), at(3, 2), at(3, 3)}; }
    const std::array<long long, 16>& entries() const { return e_; }
    const std::string& name() const { return name_; }
    SymplecticMat named(std::string n) const { SymplecticMat m(*this); m.name_ = std::move(n); return m; }

    SymplecticMat operator*(const SymplecticMat& o) const;
    SymplecticMat inverse() const;
    bool operator==(const SymplecticMat& o) const { return e_ == o.e_; }
    bool is_upper() const { return C() == Mat2{}; }
    bool is_lower() const { return B() == Mat2{}; }
    bool is_identity() const;
    std::string str() const;

    static bool is_symplectic(const std::array<long long, 16>& e);

private:
    std::array<long long, 16> e_;
    std::string name_;
};

// named constants
SymplecticMat sp_identity();
SymplecticMat sp_J();     // [[0,-1],[1,0]]
SymplecticMat sp_M1();    // [[1,0],[S0,1]]
SymplecticMat sp_M1sq();
SymplecticMat sp_M2();    // [[1,S0],[0,1]]
SymplecticMat sp_M3();    // [[1,-1-S0],[1,-S0]]
SymplecticMat sp_K();     // J*M2
SymplecticMat sp_Iinv();  // diag(1,-1,1,-1)
SymplecticMat sp_translation(const Mat2& S);  // [[1,S],[0,1]]
SymplecticMat sp_lower(const Mat2& S);        // [[1,0],[S,1]]
SymplecticMat sp_rotation(const Mat2& U);     // [[U,0],[0,U^-t]], det U = +-1

// characteristic action, unreduced
std::array<long long, 4> char_action_raw(const SymplecticMat& M, const std::array<long long, 4>& m);
ThetaChar char_action(const SymplecticMat& M, const ThetaChar& m);
// phi_m(M) as a rational reduced to [0,1)
Rat phi_m(const SymplecticMat& M, const std::array<long long, 4>& m);

// product of the returned factors equals M; every factor is block triangular
std::vector<SymplecticMat> decompose_triangular(const SymplecticMat& M, int variant = 0);
CycRat kappa_sq(const SymplecticMat& M, int variant = 0);
// fold the cocycle over an explicit triangular factorization
CycRat kappa_sq_from(const std::vector<SymplecticMat>& factors);

struct SlashedMonomial {
    CycRat factor;
    std::vector<ThetaChar> chars;
};
SlashedMonomial slash_theta_product(const std::vector<ThetaChar>& chars, const SymplecticMat& M);

struct LatticeSlash {
    CycRat constant;
    GramMatrix S_out;
    int scale = 1;
};
LatticeSlash slash_lattice_J(const GramMatrix& S);

enum class GroupId { Gamma2, Gamma0_2, Gamma0_3psi, Gamma0_4psi, Gamma00_2psi };
std::string group_name(GroupId g);
GroupId parse_group(const std::string& s);
const std::vector<GroupId>& all_groups();
std::vector<SymplecticMat> coset_reps(GroupId g);
// complete list of right coset representatives of Gamma_0(p) in Sp(2,Z)
std::vector<SymplecticMat> gamma0p_right_reps(int p);

}  // namespace jf
