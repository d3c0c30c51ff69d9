#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "jf/theta.hpp"

namespace jf {

ThetaChar ThetaChar::parse(const std::string& s) {
    if (s.size() != 2 && s.size() != 4) throw std::invalid_argument("ThetaChar: expected 2 or 4 digits");
    ThetaChar t;
    t.degree = static_cast<int>(s.size()) / 2;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("ThetaChar: digits must be 0/1");
        t.m[i] = s[i] - '0';
    }
    return t;
}

std::string ThetaChar::str() const {
    std::string s;
    for (int i = 0; i < 2 * degree; ++i) s += static_cast<char>('0' + m[i]);
    return s;
}

bool ThetaChar::even() const {
    int p = degree == 2 ? m[0] * m[2] + m[1] * m[3] : m[0] * m[1];
    return p % 2 == 0;
}

const std::vector<ThetaChar>& even_chars() {
    static const std::vector<ThetaChar> v = [] {
        std::vector<ThetaChar> r;
        for (const char* s : {"0000", "0001", "0010", "0011", "0100", "0110", "1000", "1001", "1100", "1111"})
            r.push_back(ThetaChar::parse(s));
        return r;
    }();
    return v;
}

namespace {

int isqrt(long long v) {
    if (v < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return static_cast<int>(r);
}

int mod4(long long v) { return static_cast<int>(((v % 4) + 4) % 4); }

}  // namespace

FourierSeries theta_const(int degree, const std::array<int, 4>& m, int N) {
    const int D = 8;
    const int T = isqrt(8LL * N);
    std::vector<Term> terms;
    if (degree == 1) {
        for (int t = -T - 2; t <= T + 2; ++t) {
            if (((t - m[0]) % 2 + 2) % 2 != 0) continue;
            long long a = static_cast<long long>(t) * t;
            if (a > 8LL * N) continue;
            terms.push_back(Term{ExpKey{static_cast<int>(a), 0, 0}, CycRat::root_of_unity(mod4(static_cast<long long>(t) * m[1]), 4)});
        }
    } else if (degree == 2) {
        std::vector<int> t1s, t2s;
        for (int t = -T - 2; t <= T + 2; ++t) {
            if (static_cast<long long>(t) * t > 8LL * N) continue;
            if (((t - m[0]) % 2 + 2) % 2 == 0) t1s.push_back(t);
            if (((t - m[1]) % 2 + 2) % 2 == 0) t2s.push_back(t);
        }
        for (int t1 : t1s)
            for (int t2 : t2s) {
                ExpKey k{t1 * t1, 2 * t1 * t2, t2 * t2};
                long long ph = static_cast<long long>(t1) * m[2] + static_cast<long long>(t2) * m[3];
                terms.push_back(Term{k, CycRat::root_of_unity(mod4(ph), 4)});
            }
    } else {
        throw std::invalid_argument("theta_const: degree must be 1 or 2");
    }
    FourierSeries f = FourierSeries::from_terms(D, N, std::move(terms));
    f.set_weight(Rat(1, 2));
    return f;
}

FourierSeries theta_const(const ThetaChar& m, int N) { return theta_const(m.degree, m.m, N); }

FourierSeries theta_monomial(const std::vector<ThetaChar>& chars, int N) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, int>, FourierSeries> cache;
    std::vector<ThetaChar> sorted = chars;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> idx;
    for (const auto& c : sorted) idx.push_back(c.index() + 16 * c.degree);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({idx, N});
        if (it != cache.end()) return it->second;
    }
    FourierSeries r;
    if (sorted.empty()) {
        r = FourierSeries::constant(CycRat(1), N);
        r.set_weight(Rat(0));
    } else if (sorted.size() == 1) {
        r = theta_const(sorted[0], N);
    } else {
        // split into halves so that shared sub-products are reused
        std::size_t h = sorted.size() / 2;
        if (h % 2 == 1 && sorted.size() > 2) ++h;
        std::vector<ThetaChar> left(sorted.begin(), sorted.begin() + static_cast<long>(h));
        std::vector<ThetaChar> right(sorted.begin() + static_cast<long>(h), sorted.end());
        r = fs_mul(theta_monomial(left, N), theta_monomial(right, N));
    }
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(std::make_pair(idx, N), r);
    return r;
}

SecondKind theta_second_kind(int nu1, int nu2, int N) {
    const int D = 4;
    const int T = isqrt(4LL * N);
    std::vector<Term> v, d11, d12, d22;
    for (int t1 = -T - 2; t1 <= T + 2; ++t1) {
        if (((t1 - nu1) % 2 + 2) % 2 != 0 || t1 * t1 > 4 * N) continue;
        for (int t2 = -T - 2; t2 <= T + 2; ++t2) {
            if (((t2 - nu2) % 2 + 2) % 2 != 0 || t2 * t2 > 4 * N) continue;
            // x = t/2: exponent x1^2 t11 + 2 x1 x2 t12 + x2^2 t22
            ExpKey k{t1 * t1, 2 * t1 * t2, t2 * t2};
            v.push_back(Term{k, CycRat(1)});
            d11.push_back(Term{k, CycRat(Rat(t1 * t1, 4))});
            d12.push_back(Term{k, CycRat(Rat(2 * t1 * t2, 4))});
            d22.push_back(Term{k, CycRat(Rat(t2 * t2, 4))});
        }
    }
    SecondKind s{FourierSeries::from_terms(D, N, std::move(v)), FourierSeries::from_terms(D, N, std::move(d11)),
                 FourierSeries::from_terms(D, N, std::move(d12)), FourierSeries::from_terms(D, N, std::move(d22))};
    s.value.set_weight(Rat(1, 2));
    return s;
}

FourierSeries delta_series(int N) {
    // q * prod (1 - q^n)^24, built from 1 - q^n factors
    FourierSeries prod = FourierSeries::constant(CycRat(1), N);
    for (int n = 1; n <= N; ++n) {
        FourierSeries fac = FourierSeries::from_terms(1, N, {Term{ExpKey{0, 0, 0}, CycRat(1)}, Term{ExpKey{n, 0, 0}, CycRat(-1)}});
        prod = fs_mul(prod, fs_pow(fac, 24));
    }
    FourierSeries q = FourierSeries::monomial(ExpKey{1, 0, 0}, 1, CycRat(1), N);
    FourierSeries d = fs_mul(q, prod);
    d.set_weight(Rat(12));
    return d;
}

std::pair<FourierSeries, FourierSeries> gamma3_thetas(int N) {
    std::vector<Term> t0, t1;
    const int R = 2 * isqrt(4LL * N) + 4;
    for (int x = -R; x <= R; ++x)
        for (int y = -R; y <= R; ++y) {
            long long q = static_cast<long long>(x) * x - static_cast<long long>(x) * y + static_cast<long long>(y) * y;
            if (q <= N) t0.push_back(Term{ExpKey{static_cast<int>(q), 0, 0}, CycRat(1)});
            long long q1 = 3 * (q + x - y) + 1;
            if (q1 <= 3LL * N) t1.push_back(Term{ExpKey{static_cast<int>(q1), 0, 0}, CycRat(1)});
        }
    FourierSeries th0 = FourierSeries::from_terms(1, N, std::move(t0));
    FourierSeries th1 = FourierSeries::from_terms(3, N, std::move(t1));
    th0.set_weight(Rat(1));
    th1.set_weight(Rat(1));
    return {th0, th1};
}

}  // namespace jf
