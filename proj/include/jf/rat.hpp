#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace jf {

// Rational number with an inline int64 representation; values that do not
// fit are promoted to a heap-allocated mpq_class.  d_ == 0 marks the big form.
class Rat {
public:
    Rat() : n_(0), d_(1) {}
    Rat(long long n) : n_(n), d_(1) {}  // NOLINT
    Rat(int n) : n_(n), d_(1) {}        // NOLINT
    Rat(long long n, long long d);
    explicit Rat(const mpq_class& q) { set_mpq(q); }
    explicit Rat(const std::string& s);

    Rat(const Rat& o) { copy_from(o); }
    Rat(Rat&& o) noexcept : n_(o.n_), d_(o.d_) { o.d_ = 1; o.n_ = 0; }
    Rat& operator=(const Rat& o) {
        if (this != &o) { release(); copy_from(o); }
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        if (this != &o) { release(); n_ = o.n_; d_ = o.d_; o.n_ = 0; o.d_ = 1; }
        return *this;
    }
    ~Rat() { release(); }

    bool is_zero() const { return d_ != 0 && n_ == 0; }
    bool is_one() const { return d_ == 1 && n_ == 1; }
    bool is_small() const { return d_ != 0; }
    int sign() const;

    mpq_class to_mpq() const;
    mpz_class num() const;
    mpz_class den() const;
    double to_double() const;
    std::string str() const;

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const;
    Rat inv() const;
    Rat& operator+=(const Rat& b);
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b);
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b);

private:
    long long n_;
    long long d_;

    const mpq_class& big() const { return *reinterpret_cast<const mpq_class*>(n_); }
    void release() {
        if (d_ == 0) delete reinterpret_cast<mpq_class*>(n_);
        d_ = 1;
        n_ = 0;
    }
    void copy_from(const Rat& o) {
        if (o.d_ == 0) {
            n_ = reinterpret_cast<long long>(new mpq_class(o.big()));
            d_ = 0;
        } else {
            n_ = o.n_;
            d_ = o.d_;
        }
    }
    void set_mpq(const mpq_class& q);
    void set_i128(__int128 n, __int128 d);
};

}  // namespace jf
