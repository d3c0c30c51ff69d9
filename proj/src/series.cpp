#include "jf/series.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace jf {

namespace {

void sort_terms(std::vector<Term>& t) {
    std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

// ---------------------------------------------------------------- builder

struct SeriesBuilder::Impl {
    absl::flat_hash_map<std::uint64_t, CycRat> map;
};

SeriesBuilder::SeriesBuilder(int denom, int trunc) : impl_(new Impl), denom_(denom), trunc_(trunc) {}
SeriesBuilder::~SeriesBuilder() { delete impl_; }

void SeriesBuilder::add(ExpKey k, const CycRat& v) {
    if (v.is_zero()) return;
    const int L = trunc_ * denom_;
    if (k.a < 0 || k.c < 0 || k.a > L || k.c > L) return;
    impl_->map[k.pack()] += v;
}

void SeriesBuilder::add_mul(ExpKey k, const CycRat& x, const CycRat& y) {
    const int L = trunc_ * denom_;
    if (k.a < 0 || k.c < 0 || k.a > L || k.c > L) return;
    impl_->map[k.pack()].add_mul(x, y);
}

FourierSeries SeriesBuilder::build() {
    FourierSeries f(denom_, trunc_);
    f.terms_.reserve(impl_->map.size());
    for (auto& [p, v] : impl_->map)
        if (!v.is_zero()) f.terms_.push_back(Term{ExpKey::unpack(p), std::move(v)});
    impl_->map.clear();
    sort_terms(f.terms_);
    return f.normalized();
}

// ---------------------------------------------------------------- basics

FourierSeries FourierSeries::constant(const CycRat& v, int trunc) {
    FourierSeries f(1, trunc);
    if (!v.is_zero()) f.terms_.push_back(Term{ExpKey{0, 0, 0}, v});
    return f;
}

FourierSeries FourierSeries::monomial(ExpKey k, int denom, const CycRat& v, int trunc) {
    return from_terms(denom, trunc, {Term{k, v}});
}

FourierSeries FourierSeries::from_terms(int denom, int trunc, std::vector<Term> terms) {
    SeriesBuilder b(denom, trunc);
    for (auto& t : terms) b.add(t.key, t.coeff);
    return b.build();
}

CycRat FourierSeries::coeff(ExpKey k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const ExpKey& key) { return t.key < key; });
    if (it != terms_.end() && it->key == k) return it->coeff;
    return CycRat();
}

CycRat FourierSeries::coeff_at(const Rat& a, const Rat& b, const Rat& c) const {
    Rat A = a * Rat(denom_), B = b * Rat(denom_), C = c * Rat(denom_);
    if (A.den() != 1 || B.den() != 1 || C.den() != 1) return CycRat();
    return coeff(ExpKey{static_cast<int>(A.num().get_si()), static_cast<int>(B.num().get_si()),
                        static_cast<int>(C.num().get_si())});
}

bool FourierSeries::rational() const {
    for (const auto& t : terms_)
        if (!t.coeff.is_rational()) return false;
    return true;
}

FourierSeries FourierSeries::lifted(int D) const {
    if (D == denom_) return *this;
    if (D % denom_ != 0) throw std::invalid_argument("lifted: not a multiple of the denominator");
    int s = D / denom_;
    FourierSeries f(*this);
    f.denom_ = D;
    for (auto& t : f.terms_) {
        t.key.a *= s;
        t.key.b *= s;
        t.key.c *= s;
    }
    return f;
}

FourierSeries FourierSeries::truncated(int N) const {
    if (N > trunc_) throw std::invalid_argument("truncated: N exceeds certified truncation");
    FourierSeries f(*this);
    f.trunc_ = N;
    const int L = N * denom_;
    f.terms_.erase(std::remove_if(f.terms_.begin(), f.terms_.end(),
                                  [L](const Term& t) { return t.key.a > L || t.key.c > L; }),
                   f.terms_.end());
    return f;
}

FourierSeries FourierSeries::normalized() const {
    int g = denom_;
    for (const auto& t : terms_) {
        if (g == 1) break;
        g = std::gcd(g, std::gcd(std::abs(t.key.a), std::gcd(std::abs(t.key.b), std::abs(t.key.c))));
    }
    if (g == 1) return *this;
    FourierSeries f(*this);
    f.denom_ = denom_ / g;
    for (auto& t : f.terms_) {
        t.key.a /= g;
        t.key.b /= g;
        t.key.c /= g;
    }
    return f;
}

bool FourierSeries::modular_support() const {
    for (const auto& t : terms_)
        if (static_cast<long long>(t.key.b) * t.key.b > 4LL * t.key.a * t.key.c) return false;
    return true;
}

std::optional<Term> FourierSeries::leading() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front();
}

bool FourierSeries::operator==(const FourierSeries& o) const {
    if (trunc_ != o.trunc_) return false;
    return fs_equal_upto(*this, o, trunc_).equal;
}

// ---------------------------------------------------------------- arithmetic

namespace {

std::pair<FourierSeries, FourierSeries> common(const FourierSeries& f, const FourierSeries& g) {
    int D = lcm_int(f.denom(), g.denom());
    int N = std::min(f.trunc(), g.trunc());
    FourierSeries F = f.lifted(D), G = g.lifted(D);
    if (F.trunc() > N) F = F.truncated(N);
    if (G.trunc() > N) G = G.truncated(N);
    return {std::move(F), std::move(G)};
}

std::optional<Rat> add_weight(const FourierSeries& f, const FourierSeries& g) {
    if (f.weight() && g.weight()) return *f.weight() + *g.weight();
    return std::nullopt;
}

std::optional<Rat> same_weight(const FourierSeries& f, const FourierSeries& g) {
    if (f.weight() && g.weight() && *f.weight() == *g.weight()) return f.weight();
    if (f.is_zero()) return g.weight();
    if (g.is_zero()) return f.weight();
    return std::nullopt;
}

}  // namespace

FourierSeries fs_lincomb(const std::vector<std::pair<CycRat, const FourierSeries*>>& parts) {
    if (parts.empty()) throw std::invalid_argument("fs_lincomb: empty");
    int D = 1, N = parts.front().second->trunc();
    for (const auto& p : parts) {
        D = lcm_int(D, p.second->denom());
        N = std::min(N, p.second->trunc());
    }
    SeriesBuilder b(D, N);
    for (const auto& [s, f] : parts) {
        if (s.is_zero()) continue;
        int m = D / f->denom();
        for (const auto& t : f->terms())
            b.add_mul(ExpKey{t.key.a * m, t.key.b * m, t.key.c * m}, s, t.coeff);
    }
    FourierSeries out = b.build();
    std::optional<Rat> w = parts.front().second->weight();
    for (const auto& p : parts)
        if (p.second->weight() != w) w.reset();
    out.set_weight(w);
    return out;
}

FourierSeries fs_add(const FourierSeries& f, const FourierSeries& g) {
    FourierSeries r = fs_lincomb({{CycRat(1), &f}, {CycRat(1), &g}});
    return r.set_weight(same_weight(f, g));
}

FourierSeries fs_sub(const FourierSeries& f, const FourierSeries& g) {
    FourierSeries r = fs_lincomb({{CycRat(1), &f}, {CycRat(-1), &g}});
    return r.set_weight(same_weight(f, g));
}

FourierSeries fs_neg(const FourierSeries& f) { return fs_scale(f, CycRat(-1)); }

FourierSeries fs_scale(const FourierSeries& f, const CycRat& s) {
    FourierSeries r = fs_lincomb({{s, &f}});
    return r.set_weight(f.weight());
}

namespace {

// dense accumulator for rational products when the output box is small
FourierSeries mul_dense_rational(const FourierSeries& F, const FourierSeries& G, int L) {
    int bminF = 0, bmaxF = 0, bminG = 0, bmaxG = 0;
    for (const auto& t : F.terms()) { bminF = std::min(bminF, t.key.b); bmaxF = std::max(bmaxF, t.key.b); }
    for (const auto& t : G.terms()) { bminG = std::min(bminG, t.key.b); bmaxG = std::max(bmaxG, t.key.b); }
    const int bmin = bminF + bminG, bspan = bmaxF + bmaxG - bmin + 1;
    const std::size_t W = static_cast<std::size_t>(L + 1);
    std::vector<Rat> acc(W * W * static_cast<std::size_t>(bspan));
    std::vector<char> used(acc.size(), 0);
    const auto& gt = G.terms();
    for (const auto& t1 : F.terms()) {
        const Rat& x = t1.coeff.rational();
        const int amax = L - t1.key.a, cmax = L - t1.key.c;
        for (const auto& t2 : gt) {
            if (t2.key.a > amax) break;
            if (t2.key.c > cmax) continue;
            std::size_t idx = (static_cast<std::size_t>(t1.key.a + t2.key.a) * W + (t1.key.c + t2.key.c)) * bspan +
                              (t1.key.b + t2.key.b - bmin);
            acc[idx] += x * t2.coeff.rational();
            used[idx] = 1;
        }
    }
    std::vector<Term> out;
    for (std::size_t idx = 0; idx < acc.size(); ++idx) {
        if (!used[idx] || acc[idx].is_zero()) continue;
        int b = static_cast<int>(idx % bspan) + bmin;
        std::size_t r = idx / bspan;
        int c = static_cast<int>(r % W), a = static_cast<int>(r / W);
        out.push_back(Term{ExpKey{a, b, c}, CycRat(acc[idx])});
    }
    // index order is (a, c, b): already golden order
    return FourierSeries::from_terms(F.denom(), F.trunc(), std::move(out));
}

}  // namespace

FourierSeries fs_mul(const FourierSeries& f, const FourierSeries& g) {
    auto [F, G] = common(f, g);
    const int D = F.denom(), N = F.trunc(), L = N * D;
    if (F.is_zero() || G.is_zero()) return FourierSeries(D, N).set_weight(add_weight(f, g));
    if (F.size() < G.size()) std::swap(F, G);
    FourierSeries out;
    bool done = false;
    if (F.rational() && G.rational()) {
        int bspan = 0;
        int bmin = 0, bmax = 0;
        for (const auto& t : F.terms()) { bmin = std::min(bmin, t.key.b); bmax = std::max(bmax, t.key.b); }
        bspan = bmax - bmin;
        bmin = bmax = 0;
        for (const auto& t : G.terms()) { bmin = std::min(bmin, t.key.b); bmax = std::max(bmax, t.key.b); }
        bspan += bmax - bmin + 1;
        double cells = static_cast<double>(L + 1) * (L + 1) * bspan;
        if (cells <= 6e6) {
            out = mul_dense_rational(F, G, L);
            done = true;
        }
    }
    if (!done) {
        SeriesBuilder b(D, N);
        const auto& gt = G.terms();
        for (const auto& t1 : F.terms()) {
            const int amax = L - t1.key.a, cmax = L - t1.key.c;
            for (const auto& t2 : gt) {
                if (t2.key.a > amax) break;
                if (t2.key.c > cmax) continue;
                b.add_mul(ExpKey{t1.key.a + t2.key.a, t1.key.b + t2.key.b, t1.key.c + t2.key.c}, t1.coeff,
                          t2.coeff);
            }
        }
        out = b.build();
    }
    return out.set_weight(add_weight(f, g));
}

FourierSeries fs_pow(const FourierSeries& f, int n) {
    if (n < 0) throw std::invalid_argument("fs_pow: negative exponent");
    FourierSeries result = FourierSeries::constant(CycRat(1), f.trunc());
    if (f.weight()) result.set_weight(Rat(0));
    FourierSeries base = f;
    while (n > 0) {
        if (n & 1) result = fs_mul(result, base);
        n >>= 1;
        if (n) base = fs_mul(base, base);
    }
    return result;
}

// ---------------------------------------------------------------- operators

FourierSeries d_partial(const FourierSeries& f, Var ij) {
    std::vector<Term> out;
    out.reserve(f.size());
    const Rat invD(1, f.denom());
    for (const auto& t : f.terms()) {
        int e = ij == Var::t11 ? t.key.a : (ij == Var::t12 ? t.key.b : t.key.c);
        if (e == 0) continue;
        out.push_back(Term{t.key, t.coeff * (Rat(e) * invD)});
    }
    return FourierSeries::from_terms(f.denom(), f.trunc(), std::move(out));
}

FourierSeries witt(const FourierSeries& f) {
    SeriesBuilder b(f.denom(), f.trunc());
    for (const auto& t : f.terms()) b.add(ExpKey{t.key.a, 0, t.key.c}, t.coeff);
    return b.build().set_weight(f.weight());
}

FourierSeries involution_I(const FourierSeries& f) {
    std::vector<Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) out.push_back(Term{ExpKey{t.key.a, -t.key.b, t.key.c}, t.coeff});
    return FourierSeries::from_terms(f.denom(), f.trunc(), std::move(out)).set_weight(f.weight());
}

std::pair<FourierSeries, FourierSeries> split_types(const FourierSeries& f) {
    FourierSeries If = involution_I(f);
    FourierSeries plus = fs_scale(fs_add(f, If), CycRat(Rat(1, 2)));
    FourierSeries minus = fs_scale(fs_sub(f, If), CycRat(Rat(1, 2)));
    return {plus.set_weight(f.weight()), minus.set_weight(f.weight())};
}

FourierSeries translate(const FourierSeries& f, int s11, int s12, int s22) {
    std::vector<Term> out;
    out.reserve(f.size());
    const long long D = f.denom();
    for (const auto& t : f.terms()) {
        long long num = static_cast<long long>(t.key.a) * s11 + static_cast<long long>(t.key.b) * s12 +
                        static_cast<long long>(t.key.c) * s22;
        long long g = std::gcd(std::abs(num), D);
        long long n = num / g, d = D / g;
        if (24 % d != 0) throw std::domain_error("translate: phase outside the 24th roots of unity");
        out.push_back(Term{t.key, t.coeff * CycRat::root_of_unity(n, d)});
    }
    return FourierSeries::from_terms(f.denom(), f.trunc(), std::move(out)).set_weight(f.weight());
}

FourierSeries swap_diag(const FourierSeries& f) {
    std::vector<Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) out.push_back(Term{ExpKey{t.key.c, t.key.b, t.key.a}, t.coeff});
    return FourierSeries::from_terms(f.denom(), f.trunc(), std::move(out)).set_weight(f.weight());
}

std::string CompareResult::describe() const {
    if (equal) return "equal";
    std::ostringstream os;
    if (first_mismatch) {
        os << "first mismatch at (" << first_mismatch->a << "," << first_mismatch->b << "," << first_mismatch->c
           << ")/" << denom << ": lhs=" << lhs.str() << " rhs=" << rhs.str();
    }
    return os.str();
}

CompareResult fs_equal_upto(const FourierSeries& f, const FourierSeries& g, int N) {
    if (N > f.trunc() || N > g.trunc())
        throw std::invalid_argument("fs_equal_upto: N exceeds certified truncation");
    int D = lcm_int(f.denom(), g.denom());
    FourierSeries F = f.lifted(D).truncated(N), G = g.lifted(D).truncated(N);
    CompareResult r;
    r.denom = D;
    const auto& a = F.terms();
    const auto& b = G.terms();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].key < b[j].key)) {
            r.equal = false; r.first_mismatch = a[i].key; r.lhs = a[i].coeff; r.rhs = CycRat();
            return r;
        }
        if (i == a.size() || b[j].key < a[i].key) {
            r.equal = false; r.first_mismatch = b[j].key; r.lhs = CycRat(); r.rhs = b[j].coeff;
            return r;
        }
        if (a[i].coeff != b[j].coeff) {
            r.equal = false; r.first_mismatch = a[i].key; r.lhs = a[i].coeff; r.rhs = b[j].coeff;
            return r;
        }
        ++i;
        ++j;
    }
    return r;
}

// ---------------------------------------------------------------- Sym2

Sym2Series Sym2Series::zero(int trunc) {
    Sym2Series s;
    s.h20 = s.h11 = s.h02 = FourierSeries(1, trunc);
    return s;
}

Sym2Series s2_add(const Sym2Series& x, const Sym2Series& y) {
    Sym2Series r{fs_add(x.h20, y.h20), fs_add(x.h11, y.h11), fs_add(x.h02, y.h02), x.weight};
    if (x.weight != y.weight) r.weight = x.is_zero() ? y.weight : (y.is_zero() ? x.weight : std::nullopt);
    return r;
}

Sym2Series s2_sub(const Sym2Series& x, const Sym2Series& y) { return s2_add(x, s2_scale(y, CycRat(-1))); }

Sym2Series s2_scale(const Sym2Series& x, const CycRat& s) {
    return Sym2Series{fs_scale(x.h20, s), fs_scale(x.h11, s), fs_scale(x.h02, s), x.weight};
}

Sym2Series s2_mul(const FourierSeries& f, const Sym2Series& x) {
    Sym2Series r{fs_mul(f, x.h20), fs_mul(f, x.h11), fs_mul(f, x.h02), std::nullopt};
    if (f.weight() && x.weight) r.weight = *f.weight() + *x.weight;
    return r;
}

Sym2Series s2_involution_I(const Sym2Series& x) {
    return Sym2Series{involution_I(x.h20), involution_I(x.h11), involution_I(x.h02), x.weight};
}

// ---------------------------------------------------------------- JSON

std::string to_json(const FourierSeries& f, int indent) {
    nlohmann::ordered_json j;
    j["denom"] = f.denom();
    j["trunc"] = f.trunc();
    if (f.weight()) j["weight"] = f.weight()->str();
    if (!f.label().empty()) j["label"] = f.label();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : f.terms()) {
        nlohmann::json coeff;
        if (t.coeff.is_rational())
            coeff = t.coeff.rational().str();
        else
            coeff = t.coeff.to_strings();
        terms.push_back(nlohmann::json::array({t.key.a, t.key.b, t.key.c, coeff}));
    }
    j["terms"] = terms;
    return j.dump(indent);
}

FourierSeries from_json(const std::string& s) {
    auto j = nlohmann::json::parse(s);
    int D = j.at("denom").get<int>();
    int N = j.at("trunc").get<int>();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
        ExpKey k{t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()};
        const auto& c = t.at(3);
        CycRat v = c.is_string() ? CycRat(Rat(c.get<std::string>()))
                                 : CycRat::from_strings(c.get<std::vector<std::string>>());
        terms.push_back(Term{k, v});
    }
    FourierSeries f = FourierSeries::from_terms(D, N, std::move(terms));
    if (j.contains("weight")) f.set_weight(Rat(j.at("weight").get<std::string>()));
    if (j.contains("label")) f.set_label(j.at("label").get<std::string>());
    return f;
}

std::string render(const FourierSeries& f, std::size_t max_terms) {
    std::ostringstream os;
    if (f.is_zero()) return "0";
    std::size_t n = 0;
    for (const auto& t : f.terms()) {
        if (n++ == max_terms) {
            os << " + ...";
            break;
        }
        if (n > 1) os << " + ";
        os << "(" << t.coeff.str() << ")";
        auto ex = [&](int v) { return Rat(v, f.denom()).str(); };
        if (t.key.a) os << "*e11^" << ex(t.key.a);
        if (t.key.b) os << "*e12^" << ex(t.key.b);
        if (t.key.c) os << "*e22^" << ex(t.key.c);
    }
    return os.str();
}

}  // namespace jf
