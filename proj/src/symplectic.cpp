#include "jf/symplectic.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace jf {

namespace {

using Arr = std::array<long long, 16>;

Arr mul(const Arr& x, const Arr& y) {
    Arr r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long long s = 0;
            for (int k = 0; k < 4; ++k) s += x[i * 4 + k] * y[k * 4 + j];
            r[i * 4 + j] = s;
        }
    return r;
}

Arr blocks(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D) {
    return {A.a, A.b, B.a, B.b, A.c, A.d, B.c, B.d, C.a, C.b, D.a, D.b, C.c, C.d, D.c, D.d};
}

const Mat2 kS0{0, 1, 1, 0};
const Mat2 kI2 = Mat2::identity();
const Mat2 kZ2{};

}  // namespace

bool SymplecticMat::is_symplectic(const Arr& e) {
    // M J M^t == J with J = [[0,1],[-1,0]]
    Arr J{0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0};
    Arr Mt{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) Mt[i * 4 + j] = e[j * 4 + i];
    return mul(mul(e, J), Mt) == J;
}

SymplecticMat::SymplecticMat() : e_{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}, name_("1") {}

SymplecticMat::SymplecticMat(const Arr& e, std::string name) : e_(e), name_(std::move(name)) {
    if (!is_symplectic(e_)) throw std::invalid_argument("SymplecticMat: matrix is not symplectic");
}

SymplecticMat SymplecticMat::from_blocks(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D, std::string name) {
    return SymplecticMat(blocks(A, B, C, D), std::move(name));
}

SymplecticMat SymplecticMat::operator*(const SymplecticMat& o) const {
    SymplecticMat r;
    r.e_ = mul(e_, o.e_);
    r.name_ = name_.empty() || o.name_.empty() ? "" : name_ + "*" + o.name_;
    return r;
}

SymplecticMat SymplecticMat::inverse() const {
    // [[D^t, -B^t], [-C^t, A^t]]
    SymplecticMat r;
    r.e_ = blocks(D().t(), -B().t(), -C().t(), A().t());
    r.name_ = name_.empty() ? "" : name_ + "^-1";
    return r;
}

bool SymplecticMat::is_identity() const { return e_ == SymplecticMat().e_; }

std::string SymplecticMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 16; ++i) os << (i ? "," : "") << e_[i];
    os << "]";
    return os.str();
}

SymplecticMat sp_identity() { return SymplecticMat(); }
SymplecticMat sp_J() { return SymplecticMat::from_blocks(kZ2, -kI2, kI2, kZ2, "J"); }
SymplecticMat sp_M1() { return SymplecticMat::from_blocks(kI2, kZ2, kS0, kI2, "M1"); }
SymplecticMat sp_M1sq() { return (sp_M1() * sp_M1()).named("M1^2"); }
SymplecticMat sp_M2() { return SymplecticMat::from_blocks(kI2, kS0, kZ2, kI2, "M2"); }
SymplecticMat sp_M3() { return SymplecticMat::from_blocks(kI2, -(kI2 + kS0), kI2, -kS0, "M3"); }
SymplecticMat sp_K() { return (sp_J() * sp_M2()).named("K"); }
SymplecticMat sp_Iinv() { return SymplecticMat::from_blocks({1, 0, 0, -1}, kZ2, kZ2, {1, 0, 0, -1}, "I"); }
SymplecticMat sp_translation(const Mat2& S) { return SymplecticMat::from_blocks(kI2, S, kZ2, kI2); }
SymplecticMat sp_lower(const Mat2& S) { return SymplecticMat::from_blocks(kI2, kZ2, S, kI2); }
SymplecticMat sp_rotation(const Mat2& U) {
    long long d = U.det();
    if (d != 1 && d != -1) throw std::invalid_argument("sp_rotation: det must be +-1");
    Mat2 Uinv{U.d * d, -U.b * d, -U.c * d, U.a * d};
    return SymplecticMat::from_blocks(U, kZ2, kZ2, Uinv.t());
}

// ------------------------------------------------------------ characteristics

std::array<long long, 4> char_action_raw(const SymplecticMat& M, const std::array<long long, 4>& m) {
    Mat2 A = M.A(), B = M.B(), C = M.C(), D = M.D();
    Mat2 CDt = C * D.t(), ABt = A * B.t();
    long long m1 = m[0], m2 = m[1], m3 = m[2], m4 = m[3];
    return {D.a * m1 + D.b * m2 - C.a * m3 - C.b * m4 + CDt.a,
            D.c * m1 + D.d * m2 - C.c * m3 - C.d * m4 + CDt.d,
            -B.a * m1 - B.b * m2 + A.a * m3 + A.b * m4 + ABt.a,
            -B.c * m1 - B.d * m2 + A.c * m3 + A.d * m4 + ABt.d};
}

ThetaChar char_action(const SymplecticMat& M, const ThetaChar& m) {
    if (m.degree != 2) throw std::invalid_argument("char_action: degree-2 characteristic required");
    auto v = char_action_raw(M, {m.m[0], m.m[1], m.m[2], m.m[3]});
    ThetaChar r;
    for (int i = 0; i < 4; ++i) r.m[i] = static_cast<int>(((v[i] % 2) + 2) % 2);
    return r;
}

Rat phi_m(const SymplecticMat& M, const std::array<long long, 4>& m) {
    Mat2 A = M.A(), B = M.B(), C = M.C(), D = M.D();
    auto quad = [](const Mat2& X, long long u1, long long u2, long long v1, long long v2) {
        // u^t X v
        return u1 * (X.a * v1 + X.b * v2) + u2 * (X.c * v1 + X.d * v2);
    };
    const long long p1 = m[0], p2 = m[1], q1 = m[2], q2 = m[3];
    Mat2 BtD = B.t() * D, AtC = A.t() * C, BtC = B.t() * C, ABt = A * B.t();
    long long s = quad(BtD, p1, p2, p1, p2) + quad(AtC, q1, q2, q1, q2) - 2 * quad(BtC, p1, p2, q1, q2);
    // D m' - C m''
    long long w1 = D.a * p1 + D.b * p2 - C.a * q1 - C.b * q2;
    long long w2 = D.c * p1 + D.d * p2 - C.c * q1 - C.d * q2;
    s -= 2 * (ABt.a * w1 + ABt.d * w2);
    // phi = -s/8 mod 1
    long long num = ((-s) % 8 + 8) % 8;
    return Rat(num, 8);
}

// ------------------------------------------------------------ kappa^2

namespace {

// Row operations realised by left multiplication with block triangular
// generators.  Applying g to X records g; at the end M = g_1^-1 ... g_k^-1 P.
struct Reducer {
    Arr X;
    std::vector<SymplecticMat> applied;

    void apply(const SymplecticMat& g) {
        X = mul(g.entries(), X);
        applied.push_back(g);
    }
    long long v(int r, int c) const { return X[r * 4 + c]; }

    // SL2 on the coordinate pair (i, i+2), i in {0,1}: upper r_i += k r_{i+2}
    void up(int i, long long k) {
        Mat2 S{};
        (i == 0 ? S.a : S.d) = k;
        apply(sp_translation(S));
    }
    void low(int i, long long k) {
        Mat2 S{};
        (i == 0 ? S.a : S.d) = k;
        apply(sp_lower(S));
    }
    // rows 0,1 mixing: r_i += k r_j
    void rot(int i, long long k) {
        Mat2 U = Mat2::identity();
        (i == 0 ? U.b : U.c) = k;
        apply(sp_rotation(U));
    }
    // Euclid on the pair (r_i, r_{i+2}) in column c until r_{i+2} is 0
    void clear_lower(int i, int c) {
        while (v(i + 2, c) != 0) {
            long long a = v(i, c), b = v(i + 2, c);
            if (a == 0) {
                up(i, 1);  // bring b into r_i
            } else if (std::llabs(a) <= std::llabs(b)) {
                low(i, -(b / a));
            } else {
                up(i, -(a / b));  // r_i -= q r_{i+2}
            }
        }
    }
    // Euclid on rows 0,1 in column c until row 1 is 0 (lower rows already zero)
    void clear_second(int c) {
        while (v(1, c) != 0) {
            long long a = v(0, c), b = v(1, c);
            if (a == 0) {
                rot(0, 1);
            } else if (std::llabs(a) <= std::llabs(b)) {
                rot(1, -(b / a));
            } else {
                rot(0, -(a / b));
            }
        }
    }
};

}  // namespace

std::vector<SymplecticMat> decompose_triangular(const SymplecticMat& M, int variant) {
    if (variant == 1) {
        // conjugate by the coordinate swap, decompose, conjugate back
        SymplecticMat P = sp_rotation({0, 1, 1, 0});
        SymplecticMat Mp = P * M * P.inverse();
        auto inner = decompose_triangular(Mp, 0);
        std::vector<SymplecticMat> out{P.inverse()};
        out.insert(out.end(), inner.begin(), inner.end());
        out.push_back(P);
        return out;
    }
    if (M.is_upper() || M.is_lower()) return {M};
    Reducer r{M.entries(), {}};
    r.clear_lower(0, 0);
    r.clear_lower(1, 0);
    r.clear_second(0);
    // isotropy forces X[2][1] = 0 now; clear X[3][1] with the (1,3) pair
    r.clear_lower(1, 1);
    SymplecticMat P(r.X);
    if (!P.is_upper()) throw std::logic_error("decompose_triangular: reduction failed");
    // M = g_1^-1 g_2^-1 ... g_k^-1 P
    std::vector<SymplecticMat> ordered;
    for (std::size_t i = 0; i < r.applied.size(); ++i) ordered.push_back(r.applied[i].inverse());
    ordered.push_back(P);
    return ordered;
}

CycRat kappa_sq_from(const std::vector<SymplecticMat>& factors) {
    if (factors.empty()) return CycRat(1);
    // fold from the right: kappa(g R)^2 = kappa(g)^2 kappa(R)^2 e(2 phi_{R o 0}(g))
    SymplecticMat R = factors.back();
    CycRat k(R.D().det());
    for (int i = static_cast<int>(factors.size()) - 2; i >= 0; --i) {
        const SymplecticMat& g = factors[static_cast<std::size_t>(i)];
        auto r0 = char_action_raw(R, {0, 0, 0, 0});
        Rat ph = phi_m(g, r0) * Rat(2);
        mpq_class q = ph.to_mpq();
        long long num = q.get_num().get_si(), den = q.get_den().get_si();
        k = k * CycRat(g.D().det()) * CycRat::root_of_unity(num, den);
        R = g * R;
    }
    return k;
}

CycRat kappa_sq(const SymplecticMat& M, int variant) { return kappa_sq_from(decompose_triangular(M, variant)); }

// ------------------------------------------------------------ slash

SlashedMonomial slash_theta_product(const std::vector<ThetaChar>& chars, const SymplecticMat& M) {
    if (chars.size() % 2 != 0) throw std::invalid_argument("slash_theta_product: odd number of theta factors");
    if (M.is_identity()) return {CycRat(1), chars};
    SymplecticMat Minv = M.inverse();
    CycRat factor(1);
    CycRat k2 = kappa_sq(M);
    for (std::size_t i = 0; i < chars.size() / 2; ++i) factor = factor * k2;
    std::vector<ThetaChar> out;
    for (const auto& n : chars) {
        ThetaChar m = char_action(Minv, n);
        auto v = char_action_raw(M, {m.m[0], m.m[1], m.m[2], m.m[3]});
        // v = n + 2w; theta_v = (-1)^{n' . w''} theta_n
        long long w3 = (v[2] - n.m[2]) / 2, w4 = (v[3] - n.m[3]) / 2;
        for (int j = 0; j < 4; ++j)
            if (((v[j] - n.m[j]) % 2) != 0) throw std::logic_error("slash_theta_product: inconsistent action");
        long long sgn = n.m[0] * w3 + n.m[1] * w4;
        if (sgn % 2 != 0) factor = -factor;
        Rat ph = phi_m(M, {m.m[0], m.m[1], m.m[2], m.m[3]});
        mpq_class q = ph.to_mpq();
        factor = factor * CycRat::root_of_unity(q.get_num().get_si(), q.get_den().get_si());
        out.push_back(m);
    }
    return {factor, out};
}

LatticeSlash slash_lattice_J(const GramMatrix& S) {
    if (S.twice) throw std::invalid_argument("slash_lattice_J: even Gram matrix required");
    auto inv = S.inverse();
    // smallest scale with scale * S^-1 even integral
    long long scale = 1;
    for (const Rat& r : inv) scale = std::lcm(scale, r.den().get_si());
    auto even_ok = [&](long long s) {
        for (int i = 0; i < S.n; ++i) {
            Rat d = inv[i * S.n + i] * Rat(s);
            if (d.den() != 1 || d.num() % 2 != 0) return false;
        }
        return true;
    };
    if (!even_ok(scale)) scale *= 2;
    if (!even_ok(scale)) throw std::invalid_argument("slash_lattice_J: inverse has no even rescaling");
    std::vector<std::vector<long long>> rows(S.n, std::vector<long long>(S.n));
    for (int i = 0; i < S.n; ++i)
        for (int j = 0; j < S.n; ++j) rows[i][j] = (inv[i * S.n + j] * Rat(scale)).num().get_si();
    std::string name = S.name + "^-1*" + std::to_string(scale);
    if (S.name == "E6" && scale == 3) name = "E6s";
    if (S.name == "E6s" && scale == 3) name = "E6";
    GramMatrix out = GramMatrix::from_rows(rows, name);
    if (name == "E6s" && out.e != gram_E6s().e) throw std::logic_error("slash_lattice_J: E6s mismatch");
    if (name == "E6" && out.e != gram_E6().e) throw std::logic_error("slash_lattice_J: E6 mismatch");
    // (-i)^{n m / 2} det(S)^{-n/2} with n = 2
    CycRat c = CycRat::root_of_unity(-S.n, 4) * CycRat(S.det().inv());
    return {c, out, static_cast<int>(scale)};
}

// ------------------------------------------------------------ groups

std::string group_name(GroupId g) {
    switch (g) {
        case GroupId::Gamma2: return "Gamma2";
        case GroupId::Gamma0_2: return "Gamma0(2)";
        case GroupId::Gamma0_3psi: return "Gamma0(3)psi";
        case GroupId::Gamma0_4psi: return "Gamma0(4)psi";
        case GroupId::Gamma00_2psi: return "Gamma00(2)psi";
    }
    return "?";
}

GroupId parse_group(const std::string& s) {
    for (GroupId g : all_groups())
        if (group_name(g) == s) return g;
    if (s == "1" || s == "level1") return GroupId::Gamma2;
    if (s == "2" || s == "level2") return GroupId::Gamma0_2;
    if (s == "3" || s == "level3") return GroupId::Gamma0_3psi;
    if (s == "4" || s == "level4") return GroupId::Gamma0_4psi;
    if (s == "00" || s == "level4b") return GroupId::Gamma00_2psi;
    throw std::invalid_argument("unknown group: " + s);
}

const std::vector<GroupId>& all_groups() {
    static const std::vector<GroupId> v{GroupId::Gamma2, GroupId::Gamma0_2, GroupId::Gamma0_3psi,
                                        GroupId::Gamma0_4psi, GroupId::Gamma00_2psi};
    return v;
}

std::vector<SymplecticMat> coset_reps(GroupId g) {
    switch (g) {
        case GroupId::Gamma2: return {sp_identity()};
        case GroupId::Gamma0_2: return {sp_identity(), sp_M1()};
        case GroupId::Gamma0_3psi: return {sp_identity(), sp_K()};
        case GroupId::Gamma0_4psi: return {sp_identity(), sp_M1(), sp_M1sq()};
        case GroupId::Gamma00_2psi: return {sp_identity(), sp_M1(), sp_M2(), sp_M3()};
    }
    throw std::invalid_argument("coset_reps: unknown group");
}

std::vector<SymplecticMat> gamma0p_right_reps(int p) {
    std::vector<SymplecticMat> out;
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b)
            for (long long c = 0; c < p; ++c)
                out.emplace_back(Arr{0, 0, 1, 0, 0, 0, 0, 1, -1, 0, a, b, 0, -1, b, c});
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b) out.emplace_back(Arr{0, 0, 1, 0, 0, 1, 0, 0, -1, b, a, 0, 0, 0, b, 1});
    for (long long a = 0; a < p; ++a) out.emplace_back(Arr{1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, a});
    out.emplace_back(sp_identity());
    return out;
}

}  // namespace jf
