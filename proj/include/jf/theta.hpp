#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "jf/series.hpp"

namespace jf {

// theta characteristic m = (m', m''), entries 0/1; degree 1 uses bits[0..1]
struct ThetaChar {
    int degree = 2;
    std::array<int, 4> m{0, 0, 0, 0};

    static ThetaChar deg2(int m1, int m2, int m3, int m4) { return ThetaChar{2, {m1, m2, m3, m4}}; }
    static ThetaChar deg1(int m1, int m2) { return ThetaChar{1, {m1, m2, 0, 0}}; }
    // "0110" style, length 2 or 4
    static ThetaChar parse(const std::string& s);
    std::string str() const;
    bool even() const;
    int index() const { return degree == 2 ? (m[0] << 3) | (m[1] << 2) | (m[2] << 1) | m[3] : (m[0] << 1) | m[1]; }
    friend bool operator==(const ThetaChar& x, const ThetaChar& y) { return x.degree == y.degree && x.m == y.m; }
    friend bool operator<(const ThetaChar& x, const ThetaChar& y) { return x.index() < y.index(); }
};

// the ten even degree-2 characteristics in the order 0000,0001,0010,0011,0100,0110,1000,1001,1100,1111
const std::vector<ThetaChar>& even_chars();

// theta constant; characteristic entries may be arbitrary integers
FourierSeries theta_const(int degree, const std::array<int, 4>& m, int N);
FourierSeries theta_const(const ThetaChar& m, int N);
// product of theta constants (cached per truncation)
FourierSeries theta_monomial(const std::vector<ThetaChar>& chars, int N);

// integral symmetric positive definite Gram matrix, stored as 2*S when S has
// half-integral off-diagonal entries (twice = true)
struct GramMatrix {
    int n = 0;
    std::vector<long long> e;  // row-major, entries of S (or 2S when twice)
    bool twice = false;
    std::string name;

    long long at(int i, int j) const { return e[static_cast<std::size_t>(i * n + j)]; }
    // x S x^t scaled by the storage factor
    long long qform_raw(const std::vector<int>& x) const;
    bool positive_definite() const;
    Rat det() const;
    std::vector<Rat> inverse() const;

    static GramMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::string name, bool twice = false);
};

const GramMatrix& gram_A2();
const GramMatrix& gram_E6();
const GramMatrix& gram_E6s();
const GramMatrix& gram_E8();
const GramMatrix& gram_S4();  // stored as 2*S4

// all x in Z^n with x S x^t <= bound (raw units); includes 0
std::vector<std::vector<int>> short_vectors(const GramMatrix& S, long long bound);

// theta series of an even lattice, degree 1 or 2, evaluated at tau/scale
FourierSeries theta_lattice(const GramMatrix& S, int degree, int scale, int N);
FourierSeries theta_harmonic_c4(int N);

struct SecondKind {
    FourierSeries value, d11, d12, d22;
};
SecondKind theta_second_kind(int nu1, int nu2, int N);

// one-variable series in tau11
FourierSeries delta_series(int N);
std::pair<FourierSeries, FourierSeries> gamma3_thetas(int N);

// ---- floating-point smoke evaluation
using cplx = std::complex<double>;
struct CMat2 {
    cplx a11, a12, a22;  // symmetric
};
struct EvalResult {
    cplx value;
    double tail_bound;  // crude estimate of the omitted tail
};
EvalResult float_eval(const FourierSeries& f, const CMat2& tau);
cplx theta_defsum_eval(const std::array<int, 4>& m, const CMat2& tau);
cplx theta_lattice_defsum_eval(const GramMatrix& S, const CMat2& tau, double tol = 1e-15);

// value and normalized first derivatives (1/2 pi i) d/d tau_ij
struct Jet {
    cplx v, d11, d12, d22;
};
Jet theta_defsum_jet(const std::array<int, 4>& m, const CMat2& tau);
Jet theta_lattice_defsum_jet(const GramMatrix& S, const CMat2& tau, double tol = 1e-15);

}  // namespace jf
