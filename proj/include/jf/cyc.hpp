#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "jf/rat.hpp"

namespace jf {

// Element of Q(zeta), zeta = e(1/24), in the power basis 1..zeta^7,
// reduced modulo x^8 - x^4 + 1.
class CycRat {
public:
    static constexpr int kDeg = 8;
    static constexpr int kConductor = 24;

    CycRat() = default;
    CycRat(const Rat& r);  // NOLINT
    CycRat(long long n) : CycRat(Rat(n)) {}  // NOLINT
    CycRat(int n) : CycRat(Rat(n)) {}        // NOLINT

    // e(num/den), den must divide 24
    static CycRat root_of_unity(long long num, long long den);
    static CycRat zeta_pow(long long k);

    const Rat& coord(int i) const { return c_[i]; }
    void set_coord(int i, const Rat& r);
    std::uint8_t mask() const { return mask_; }

    bool is_zero() const { return mask_ == 0; }
    bool is_rational() const { return (mask_ & 0xFE) == 0; }
    bool is_one() const { return mask_ == 1 && c_[0].is_one(); }
    // valid only when is_rational()
    const Rat& rational() const { return c_[0]; }

    friend CycRat operator+(const CycRat& a, const CycRat& b);
    friend CycRat operator-(const CycRat& a, const CycRat& b);
    friend CycRat operator*(const CycRat& a, const CycRat& b);
    friend CycRat operator*(const CycRat& a, const Rat& b);
    friend CycRat operator/(const CycRat& a, const CycRat& b) { return a * b.inv(); }
    CycRat operator-() const;
    CycRat inv() const;
    CycRat& operator+=(const CycRat& b);
    CycRat& operator-=(const CycRat& b);
    CycRat& operator*=(const CycRat& b) { return *this = *this * b; }
    // this += a*b without temporaries in the rational case
    void add_mul(const CycRat& a, const CycRat& b);

    friend bool operator==(const CycRat& a, const CycRat& b);
    friend bool operator!=(const CycRat& a, const CycRat& b) { return !(a == b); }

    // image under zeta -> zeta^j (j coprime to 24)
    CycRat galois(int j) const;
    // complex conjugate (zeta -> zeta^-1)
    CycRat conj() const { return galois(23); }

    std::complex<double> to_complex() const;
    std::vector<std::string> to_strings() const;
    static CycRat from_strings(const std::vector<std::string>& v);
    // human readable, e.g. "3/2" or "[1,0,-1,0,0,0,0,0]"
    std::string str() const;

private:
    std::array<Rat, kDeg> c_{};
    std::uint8_t mask_ = 0;

    void recompute_mask();
};

inline CycRat e_frac(long long num, long long den) { return CycRat::root_of_unity(num, den); }

}  // namespace jf
