#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jf/cyc.hpp"

namespace jf {

// Exponent numerators of e((a*t11 + b*t12 + c*t22)/D).
struct ExpKey {
    int a = 0;
    int b = 0;
    int c = 0;
    friend bool operator==(const ExpKey& x, const ExpKey& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
    friend bool operator!=(const ExpKey& x, const ExpKey& y) { return !(x == y); }
    // golden-file order (a, c, b)
    friend bool operator<(const ExpKey& x, const ExpKey& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.c != y.c) return x.c < y.c;
        return x.b < y.b;
    }
    std::uint64_t pack() const {
        return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b + (1 << 20)) << 21) |
               static_cast<std::uint64_t>(c);
    }
    static ExpKey unpack(std::uint64_t p) {
        return ExpKey{static_cast<int>(p >> 42), static_cast<int>((p >> 21) & ((1u << 21) - 1)) - (1 << 20),
                      static_cast<int>(p & ((1u << 21) - 1))};
    }
};

struct Term {
    ExpKey key;
    CycRat coeff;
};

class FourierSeries {
public:
    FourierSeries() = default;
    FourierSeries(int denom, int trunc) : denom_(denom), trunc_(trunc) {}

    static FourierSeries constant(const CycRat& v, int trunc);
    static FourierSeries monomial(ExpKey k, int denom, const CycRat& v, int trunc);
    // build from unsorted (key, value) pairs; duplicates are summed, zeros and
    // out-of-box keys dropped
    static FourierSeries from_terms(int denom, int trunc, std::vector<Term> terms);

    int denom() const { return denom_; }
    int trunc() const { return trunc_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    CycRat coeff(ExpKey k) const;           // key in units of 1/denom
    CycRat coeff_at(const Rat& a, const Rat& b, const Rat& c) const;  // exponents as rationals
    bool rational() const;                   // every coefficient in Q

    const std::optional<Rat>& weight() const { return weight_; }
    FourierSeries& set_weight(std::optional<Rat> w) { weight_ = std::move(w); return *this; }
    const std::string& label() const { return label_; }
    FourierSeries& set_label(std::string l) { label_ = std::move(l); return *this; }

    // re-express with exponent denominator D (a multiple of denom())
    FourierSeries lifted(int D) const;
    // drop everything outside the box N (N <= trunc)
    FourierSeries truncated(int N) const;
    // normalized denominator: smallest D compatible with the keys
    FourierSeries normalized() const;
    // b^2 <= 4ac on every key
    bool modular_support() const;
    // lowest key in golden order
    std::optional<Term> leading() const;

    bool operator==(const FourierSeries& o) const;

private:
    int denom_ = 1;
    int trunc_ = 0;
    std::vector<Term> terms_;
    std::optional<Rat> weight_;
    std::string label_;

    friend class SeriesBuilder;
};

// Accumulates terms by key; produces a canonical FourierSeries.
class SeriesBuilder {
public:
    SeriesBuilder(int denom, int trunc);
    ~SeriesBuilder();
    SeriesBuilder(const SeriesBuilder&) = delete;
    SeriesBuilder& operator=(const SeriesBuilder&) = delete;
    void add(ExpKey k, const CycRat& v);
    void add_mul(ExpKey k, const CycRat& x, const CycRat& y);
    FourierSeries build();

private:
    struct Impl;
    Impl* impl_;
    int denom_;
    int trunc_;
};

FourierSeries fs_add(const FourierSeries& f, const FourierSeries& g);
FourierSeries fs_sub(const FourierSeries& f, const FourierSeries& g);
FourierSeries fs_neg(const FourierSeries& f);
FourierSeries fs_scale(const FourierSeries& f, const CycRat& s);
FourierSeries fs_mul(const FourierSeries& f, const FourierSeries& g);
FourierSeries fs_pow(const FourierSeries& f, int n);
// linear combination sum s_i f_i
FourierSeries fs_lincomb(const std::vector<std::pair<CycRat, const FourierSeries*>>& parts);

inline FourierSeries operator+(const FourierSeries& f, const FourierSeries& g) { return fs_add(f, g); }
inline FourierSeries operator-(const FourierSeries& f, const FourierSeries& g) { return fs_sub(f, g); }
inline FourierSeries operator-(const FourierSeries& f) { return fs_neg(f); }
inline FourierSeries operator*(const FourierSeries& f, const FourierSeries& g) { return fs_mul(f, g); }
inline FourierSeries operator*(const CycRat& s, const FourierSeries& f) { return fs_scale(f, s); }

enum class Var { t11, t12, t22 };
FourierSeries d_partial(const FourierSeries& f, Var ij);
FourierSeries witt(const FourierSeries& f);
FourierSeries involution_I(const FourierSeries& f);
std::pair<FourierSeries, FourierSeries> split_types(const FourierSeries& f);
// tau -> tau + S for integral symmetric S = [[s11, s12], [s12, s22]]
FourierSeries translate(const FourierSeries& f, int s11, int s12, int s22);
// swap tau11 and tau22
FourierSeries swap_diag(const FourierSeries& f);

struct CompareResult {
    bool equal = true;
    std::optional<ExpKey> first_mismatch;  // in units of the common denominator
    int denom = 1;
    CycRat lhs, rhs;
    std::string describe() const;
};
CompareResult fs_equal_upto(const FourierSeries& f, const FourierSeries& g, int N);

struct Sym2Series {
    FourierSeries h20, h11, h02;
    std::optional<Rat> weight;

    static Sym2Series zero(int trunc);
    int trunc() const { return std::min({h20.trunc(), h11.trunc(), h02.trunc()}); }
    bool is_zero() const { return h20.is_zero() && h11.is_zero() && h02.is_zero(); }
};

Sym2Series s2_add(const Sym2Series& x, const Sym2Series& y);
Sym2Series s2_sub(const Sym2Series& x, const Sym2Series& y);
Sym2Series s2_scale(const Sym2Series& x, const CycRat& s);
Sym2Series s2_mul(const FourierSeries& f, const Sym2Series& x);
// component-wise tau12 -> -tau12; the Sym^2 sign on h11 is left to the caller
Sym2Series s2_involution_I(const Sym2Series& x);

// JSON golden format
std::string to_json(const FourierSeries& f, int indent = -1);
FourierSeries from_json(const std::string& s);

// text rendering like "1 + 6*q11^1 ..." for diagnostics
std::string render(const FourierSeries& f, std::size_t max_terms = 12);

}  // namespace jf
