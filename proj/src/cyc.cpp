#include "jf/cyc.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jf {

namespace {

// reduce a polynomial of degree < 15 modulo x^8 - x^4 + 1 in place
void reduce15(std::array<Rat, 15>& p) {
    for (int k = 14; k >= 8; --k) {
        if (p[k].is_zero()) continue;
        p[k - 4] += p[k];
        p[k - 8] -= p[k];
        p[k] = Rat();
    }
}

}  // namespace

CycRat::CycRat(const Rat& r) {
    c_[0] = r;
    mask_ = r.is_zero() ? 0 : 1;
}

void CycRat::recompute_mask() {
    mask_ = 0;
    for (int i = 0; i < kDeg; ++i)
        if (!c_[i].is_zero()) mask_ |= static_cast<std::uint8_t>(1u << i);
}

void CycRat::set_coord(int i, const Rat& r) {
    c_[i] = r;
    if (r.is_zero())
        mask_ &= static_cast<std::uint8_t>(~(1u << i));
    else
        mask_ |= static_cast<std::uint8_t>(1u << i);
}

CycRat CycRat::zeta_pow(long long k) {
    k %= 24;
    if (k < 0) k += 24;
    CycRat r;
    bool neg = false;
    if (k >= 12) { neg = true; k -= 12; }
    if (k < 8) {
        r.c_[k] = Rat(neg ? -1 : 1);
    } else {
        // zeta^k = zeta^(k-4) - zeta^(k-8)
        r.c_[k - 4] = Rat(neg ? -1 : 1);
        r.c_[k - 8] = Rat(neg ? 1 : -1);
    }
    r.recompute_mask();
    return r;
}

CycRat CycRat::root_of_unity(long long num, long long den) {
    if (den <= 0 || 24 % den != 0) throw std::invalid_argument("root_of_unity: denominator must divide 24");
    return zeta_pow(num * (24 / den));
}

CycRat operator+(const CycRat& a, const CycRat& b) {
    CycRat r(a);
    r += b;
    return r;
}

CycRat& CycRat::operator+=(const CycRat& b) {
    std::uint8_t m = b.mask_;
    while (m) {
        int i = __builtin_ctz(m);
        m &= static_cast<std::uint8_t>(m - 1);
        c_[i] += b.c_[i];
        if (c_[i].is_zero())
            mask_ &= static_cast<std::uint8_t>(~(1u << i));
        else
            mask_ |= static_cast<std::uint8_t>(1u << i);
    }
    return *this;
}

CycRat& CycRat::operator-=(const CycRat& b) {
    std::uint8_t m = b.mask_;
    while (m) {
        int i = __builtin_ctz(m);
        m &= static_cast<std::uint8_t>(m - 1);
        c_[i] -= b.c_[i];
        if (c_[i].is_zero())
            mask_ &= static_cast<std::uint8_t>(~(1u << i));
        else
            mask_ |= static_cast<std::uint8_t>(1u << i);
    }
    return *this;
}

CycRat operator-(const CycRat& a, const CycRat& b) {
    CycRat r(a);
    r -= b;
    return r;
}

CycRat CycRat::operator-() const {
    CycRat r(*this);
    std::uint8_t m = mask_;
    while (m) {
        int i = __builtin_ctz(m);
        m &= static_cast<std::uint8_t>(m - 1);
        r.c_[i] = -r.c_[i];
    }
    return r;
}

CycRat operator*(const CycRat& a, const Rat& b) {
    if (b.is_zero() || a.is_zero()) return CycRat();
    CycRat r;
    std::uint8_t m = a.mask_;
    while (m) {
        int i = __builtin_ctz(m);
        m &= static_cast<std::uint8_t>(m - 1);
        r.c_[i] = a.c_[i] * b;
    }
    r.mask_ = a.mask_;
    return r;
}

CycRat operator*(const CycRat& a, const CycRat& b) {
    if (a.is_zero() || b.is_zero()) return CycRat();
    if (b.is_rational()) return a * b.c_[0];
    if (a.is_rational()) return b * a.c_[0];
    std::array<Rat, 15> p{};
    std::uint8_t ma = a.mask_;
    while (ma) {
        int i = __builtin_ctz(ma);
        ma &= static_cast<std::uint8_t>(ma - 1);
        std::uint8_t mb = b.mask_;
        while (mb) {
            int j = __builtin_ctz(mb);
            mb &= static_cast<std::uint8_t>(mb - 1);
            p[i + j] += a.c_[i] * b.c_[j];
        }
    }
    reduce15(p);
    CycRat r;
    for (int i = 0; i < CycRat::kDeg; ++i) r.c_[i] = std::move(p[i]);
    r.recompute_mask();
    return r;
}

void CycRat::add_mul(const CycRat& a, const CycRat& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (a.is_rational() && b.is_rational()) {
        c_[0] += a.c_[0] * b.c_[0];
        if (c_[0].is_zero())
            mask_ &= 0xFE;
        else
            mask_ |= 1;
        return;
    }
    *this += a * b;
}

bool operator==(const CycRat& a, const CycRat& b) {
    if (a.mask_ != b.mask_) return false;
    std::uint8_t m = a.mask_;
    while (m) {
        int i = __builtin_ctz(m);
        m &= static_cast<std::uint8_t>(m - 1);
        if (a.c_[i] != b.c_[i]) return false;
    }
    return true;
}

CycRat CycRat::inv() const {
    if (is_zero()) throw std::domain_error("CycRat: inverse of zero");
    if (is_rational()) return CycRat(c_[0].inv());
    // the product of the nontrivial Galois conjugates is a/N(a) times N(a)
    CycRat prod(Rat(1));
    for (int j : {5, 7, 11, 13, 17, 19, 23}) prod = prod * galois(j);
    CycRat norm = *this * prod;
    if (!norm.is_rational()) throw std::logic_error("CycRat: norm not rational");
    return prod * norm.c_[0].inv();
}

CycRat CycRat::galois(int j) const {
    CycRat r;
    std::uint8_t m = mask_;
    while (m) {
        int i = __builtin_ctz(m);
        m &= static_cast<std::uint8_t>(m - 1);
        r += zeta_pow(static_cast<long long>(i) * j) * c_[i];
    }
    return r;
}

std::complex<double> CycRat::to_complex() const {
    std::complex<double> z = 0;
    std::uint8_t m = mask_;
    while (m) {
        int i = __builtin_ctz(m);
        m &= static_cast<std::uint8_t>(m - 1);
        double ang = 2.0 * M_PI * i / 24.0;
        z += c_[i].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::vector<std::string> CycRat::to_strings() const {
    std::vector<std::string> v;
    v.reserve(kDeg);
    for (int i = 0; i < kDeg; ++i) {
        mpq_class q = c_[i].to_mpq();
        v.push_back(q.get_num().get_str() + "/" + q.get_den().get_str());
    }
    return v;
}

CycRat CycRat::from_strings(const std::vector<std::string>& v) {
    if (v.size() != kDeg) throw std::invalid_argument("CycRat: expected 8 coordinates");
    CycRat r;
    for (int i = 0; i < kDeg; ++i) r.c_[i] = Rat(v[i]);
    r.recompute_mask();
    return r;
}

std::string CycRat::str() const {
    if (is_rational()) return c_[0].str();
    std::string s = "[";
    for (int i = 0; i < kDeg; ++i) {
        if (i) s += ",";
        s += c_[i].str();
    }
    return s + "]";
}

}  // namespace jf
