#include "jf/rat.hpp"

#include <limits>
#include <stdexcept>

namespace jf {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long gcd64(long long a, long long b) {
    unsigned long long x = a < 0 ? 0ULL - static_cast<unsigned long long>(a) : a;
    unsigned long long y = b < 0 ? 0ULL - static_cast<unsigned long long>(b) : b;
    while (y) {
        unsigned long long t = x % y;
        x = y;
        y = t;
    }
    return static_cast<long long>(x);
}

constexpr long long kMax = std::numeric_limits<long long>::max();

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<unsigned long long>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<unsigned long long>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rat::Rat(long long n, long long d) : n_(0), d_(1) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    set_i128(n, d);
}

Rat::Rat(const std::string& s) : n_(0), d_(1) {
    mpq_class q(s);
    q.canonicalize();
    set_mpq(q);
}

void Rat::set_i128(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n == 0) d = 1;
    if (fits(n) && d <= kMax) {
        release();
        n_ = static_cast<long long>(n);
        d_ = static_cast<long long>(d);
    } else {
        mpq_class q(to_mpz(n), to_mpz(d));
        q.canonicalize();
        release();
        n_ = reinterpret_cast<long long>(new mpq_class(q));
        d_ = 0;
    }
}

void Rat::set_mpq(const mpq_class& q) {
    release();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
        n_ = n.get_si();
        d_ = d.get_si();
    } else {
        n_ = reinterpret_cast<long long>(new mpq_class(q));
        d_ = 0;
    }
}

int Rat::sign() const {
    if (d_ == 0) return sgn(big());
    return n_ > 0 ? 1 : (n_ < 0 ? -1 : 0);
}

mpq_class Rat::to_mpq() const {
    if (d_ == 0) return big();
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), n_);
    mpz_set_si(q.get_den_mpz_t(), d_);
    return q;
}

mpz_class Rat::num() const { return d_ == 0 ? mpz_class(big().get_num()) : mpz_class(static_cast<long>(n_)); }
mpz_class Rat::den() const { return d_ == 0 ? mpz_class(big().get_den()) : mpz_class(static_cast<long>(d_)); }

double Rat::to_double() const {
    if (d_ == 0) return big().get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rat::str() const {
    if (d_ == 0) return big().get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rat operator+(const Rat& a, const Rat& b) {
    if (a.d_ == 1 && b.d_ == 1) {
        long long r;
        if (!__builtin_add_overflow(a.n_, b.n_, &r) && r != std::numeric_limits<long long>::min()) return Rat(r);
    }
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Rat out;
    if (a.d_ != 0 && b.d_ != 0) {
        if (a.d_ == b.d_) {
            out.set_i128(static_cast<i128>(a.n_) + b.n_, a.d_);
        } else {
            out.set_i128(static_cast<i128>(a.n_) * b.d_ + static_cast<i128>(b.n_) * a.d_,
                         static_cast<i128>(a.d_) * b.d_);
        }
        return out;
    }
    out.set_mpq(a.to_mpq() + b.to_mpq());
    return out;
}

Rat& Rat::operator+=(const Rat& b) {
    if (d_ == 1 && b.d_ == 1) {
        long long r;
        if (!__builtin_add_overflow(n_, b.n_, &r) && r != std::numeric_limits<long long>::min()) {
            n_ = r;
            return *this;
        }
    }
    return *this = *this + b;
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat Rat::operator-() const {
    Rat r(*this);
    if (r.d_ == 0) {
        mpq_class* p = reinterpret_cast<mpq_class*>(r.n_);
        *p = -*p;
    } else {
        r.n_ = -r.n_;
    }
    return r;
}

Rat operator*(const Rat& a, const Rat& b) {
    if (a.is_zero() || b.is_zero()) return Rat();
    Rat out;
    if (a.d_ != 0 && b.d_ != 0) {
        if (a.d_ == 1 && b.d_ == 1) {
            long long r;
            if (!__builtin_mul_overflow(a.n_, b.n_, &r) && r != std::numeric_limits<long long>::min())
                return Rat(r);
        }
        long long g1 = gcd64(a.n_, b.d_);
        long long g2 = gcd64(b.n_, a.d_);
        i128 n = static_cast<i128>(a.n_ / g1) * (b.n_ / g2);
        i128 d = static_cast<i128>(a.d_ / g2) * (b.d_ / g1);
        if (fits(n) && d <= kMax) {
            out.n_ = static_cast<long long>(n);
            out.d_ = static_cast<long long>(d);
        } else {
            out.set_i128(n, d);
        }
        return out;
    }
    out.set_mpq(a.to_mpq() * b.to_mpq());
    return out;
}

Rat Rat::inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    if (d_ == 0) {
        Rat r;
        r.set_mpq(1 / big());
        return r;
    }
    Rat r;
    r.set_i128(d_, n_);
    return r;
}

Rat operator/(const Rat& a, const Rat& b) { return a * b.inv(); }

bool operator==(const Rat& a, const Rat& b) {
    if (a.d_ != 0 && b.d_ != 0) return a.n_ == b.n_ && a.d_ == b.d_;
    // canonical forms: a small value is never stored big
    if (a.d_ != 0 || b.d_ != 0) return false;
    return a.big() == b.big();
}

bool operator<(const Rat& a, const Rat& b) {
    if (a.d_ != 0 && b.d_ != 0)
        return static_cast<i128>(a.n_) * b.d_ < static_cast<i128>(b.n_) * a.d_;
    return a.to_mpq() < b.to_mpq();
}

}  // namespace jf
