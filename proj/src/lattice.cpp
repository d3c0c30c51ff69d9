#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "jf/theta.hpp"

namespace jf {

GramMatrix GramMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::string name, bool twice) {
    GramMatrix g;
    g.n = static_cast<int>(rows.size());
    g.twice = twice;
    g.name = std::move(name);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != g.n) throw std::invalid_argument("GramMatrix: not square");
        g.e.insert(g.e.end(), r.begin(), r.end());
    }
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (g.at(i, j) != g.at(j, i)) throw std::invalid_argument("GramMatrix: not symmetric");
    if (!g.positive_definite()) throw std::invalid_argument("GramMatrix: not positive definite");
    return g;
}

long long GramMatrix::qform_raw(const std::vector<int>& x) const {
    long long s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += static_cast<long long>(x[i]) * at(i, j) * x[j];
    return s;
}

namespace {

// leading principal minors by exact elimination
std::vector<Rat> pivots(const GramMatrix& g) {
    std::vector<Rat> m(g.e.size());
    for (std::size_t i = 0; i < g.e.size(); ++i) m[i] = Rat(g.e[i]);
    const int n = g.n;
    std::vector<Rat> piv;
    for (int k = 0; k < n; ++k) {
        Rat p = m[k * n + k];
        piv.push_back(p);
        if (p.is_zero()) return piv;
        for (int i = k + 1; i < n; ++i) {
            Rat f = m[i * n + k] / p;
            for (int j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
        }
    }
    return piv;
}

}  // namespace

bool GramMatrix::positive_definite() const {
    for (const Rat& p : pivots(*this))
        if (p.sign() <= 0) return false;
    return true;
}

Rat GramMatrix::det() const {
    Rat d(1);
    for (const Rat& p : pivots(*this)) d *= p;
    if (twice) d /= Rat(1LL << n);
    return d;
}

std::vector<Rat> GramMatrix::inverse() const {
    const int N = n;
    std::vector<Rat> a(static_cast<std::size_t>(N * 2 * N));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) a[i * 2 * N + j] = twice ? Rat(at(i, j), 2) : Rat(at(i, j));
        a[i * 2 * N + N + i] = Rat(1);
    }
    for (int k = 0; k < N; ++k) {
        int p = k;
        while (a[p * 2 * N + k].is_zero()) ++p;
        if (p != k)
            for (int j = 0; j < 2 * N; ++j) std::swap(a[k * 2 * N + j], a[p * 2 * N + j]);
        Rat inv = a[k * 2 * N + k].inv();
        for (int j = 0; j < 2 * N; ++j) a[k * 2 * N + j] *= inv;
        for (int i = 0; i < N; ++i) {
            if (i == k || a[i * 2 * N + k].is_zero()) continue;
            Rat f = a[i * 2 * N + k];
            for (int j = 0; j < 2 * N; ++j) a[i * 2 * N + j] -= f * a[k * 2 * N + j];
        }
    }
    std::vector<Rat> out;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out.push_back(a[i * 2 * N + N + j]);
    return out;
}

const GramMatrix& gram_A2() {
    static const GramMatrix g = GramMatrix::from_rows({{2, 1}, {1, 2}}, "A2");
    return g;
}

const GramMatrix& gram_E6() {
    static const GramMatrix g = GramMatrix::from_rows({{2, -1, 0, 0, 0, 0},
                                                      {-1, 2, -1, 0, 0, 0},
                                                      {0, -1, 2, -1, 0, -1},
                                                      {0, 0, -1, 2, -1, 0},
                                                      {0, 0, 0, -1, 2, 0},
                                                      {0, 0, -1, 0, 0, 2}},
                                                     "E6");
    return g;
}

const GramMatrix& gram_E6s() {
    static const GramMatrix g = GramMatrix::from_rows({{4, 5, 6, 4, 2, 3},
                                                      {5, 10, 12, 8, 4, 6},
                                                      {6, 12, 18, 12, 6, 9},
                                                      {4, 8, 12, 10, 5, 6},
                                                      {2, 4, 6, 5, 4, 3},
                                                      {3, 6, 9, 6, 3, 6}},
                                                     "E6s");
    return g;
}

const GramMatrix& gram_E8() {
    // Cartan matrix of E8
    static const GramMatrix g = GramMatrix::from_rows({{2, -1, 0, 0, 0, 0, 0, 0},
                                                      {-1, 2, -1, 0, 0, 0, 0, 0},
                                                      {0, -1, 2, -1, 0, 0, 0, -1},
                                                      {0, 0, -1, 2, -1, 0, 0, 0},
                                                      {0, 0, 0, -1, 2, -1, 0, 0},
                                                      {0, 0, 0, 0, -1, 2, -1, 0},
                                                      {0, 0, 0, 0, 0, -1, 2, 0},
                                                      {0, 0, -1, 0, 0, 0, 0, 2}},
                                                     "E8");
    return g;
}

const GramMatrix& gram_S4() {
    static const GramMatrix g =
        GramMatrix::from_rows({{2, 0, 3, 0}, {0, 2, 0, 3}, {3, 0, 6, 0}, {0, 3, 0, 6}}, "S4", true);
    return g;
}

std::vector<std::vector<int>> short_vectors(const GramMatrix& S, long long bound) {
    const int n = S.n;
    // Cholesky-type decomposition q(x) = sum_i Q_ii (x_i + sum_{j>i} Q_ij x_j)^2
    std::vector<long double> Q(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q[i * n + j] = static_cast<long double>(S.at(i, j));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Q[j * n + i] = Q[i * n + j];
            Q[i * n + j] = Q[i * n + j] / Q[i * n + i];
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) Q[k * n + l] -= Q[k * n + i] * Q[i * n + l];
    }
    std::vector<std::vector<int>> out;
    std::vector<int> x(n, 0);
    std::vector<long double> T(n + 1, 0), U(n, 0);
    const long double slack = 1e-9L * (static_cast<long double>(bound) + 1);
    // recursive enumeration from the last coordinate
    auto rec = [&](auto&& self, int i, long double remaining) -> void {
        if (i < 0) {
            if (S.qform_raw(x) <= bound) out.push_back(x);
            return;
        }
        long double c = 0;
        for (int j = i + 1; j < n; ++j) c += Q[i * n + j] * x[j];
        long double r = std::sqrt(std::max<long double>(0, (remaining + slack) / Q[i * n + i]));
        long long lo = static_cast<long long>(std::ceil(-c - r - 1e-12L));
        long long hi = static_cast<long long>(std::floor(-c + r + 1e-12L));
        for (long long v = lo; v <= hi; ++v) {
            x[i] = static_cast<int>(v);
            long double t = static_cast<long double>(v) + c;
            long double rem = remaining - Q[i * n + i] * t * t;
            if (rem < -slack) continue;
            self(self, i - 1, rem);
        }
        x[i] = 0;
    };
    rec(rec, n - 1, static_cast<long double>(bound));
    return out;
}

FourierSeries theta_lattice(const GramMatrix& S, int degree, int scale, int N) {
    if (!S.positive_definite()) throw std::invalid_argument("theta_lattice: not positive definite");
    if (S.twice) throw std::invalid_argument("theta_lattice: needs an even integral Gram matrix");
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int, int>, FourierSeries> cache;
    auto key = std::make_tuple(S.name, degree, scale, N);
    if (!S.name.empty()) {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const int D = 2 * scale;
    const long long L = static_cast<long long>(N) * D;  // bound on x S x
    auto V = short_vectors(S, L);
    const int n = S.n;
    FourierSeries result;
    if (degree == 1) {
        std::vector<long long> cnt(static_cast<std::size_t>(L + 1), 0);
        for (const auto& v : V) ++cnt[static_cast<std::size_t>(S.qform_raw(v))];
        std::vector<Term> terms;
        for (long long a = 0; a <= L; ++a)
            if (cnt[a]) terms.push_back(Term{ExpKey{static_cast<int>(a), 0, 0}, CycRat(Rat(cnt[a]))});
        result = FourierSeries::from_terms(D, N, std::move(terms));
    } else if (degree == 2) {
        // x, y over representatives of +-pairs sorted by norm; (+-x, +-y) and the swap (x, y) -> (y, x) are
        // added by symmetry
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < V.size(); ++i) {
            int first = 0;
            for (int c = 0; c < n; ++c)
                if (V[i][c] != 0) { first = V[i][c]; break; }
            if (first > 0) reps.push_back(i);
        }
        std::vector<long long> rnorm(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i) rnorm[i] = S.qform_raw(V[reps[i]]);
        std::vector<std::size_t> order(reps.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rnorm[x] < rnorm[y]; });
        const std::size_t nr = reps.size();
        std::vector<int> X(nr * n), Sx(nr * n);
        std::vector<int> norms(nr);
        for (std::size_t k = 0; k < nr; ++k) {
            const auto& v = V[reps[order[k]]];
            norms[k] = static_cast<int>(rnorm[order[k]]);
            for (int r = 0; r < n; ++r) {
                X[k * n + r] = v[r];
                long long s = 0;
                for (int c = 0; c < n; ++c) s += S.at(r, c) * v[c];
                Sx[k * n + r] = static_cast<int>(s);
            }
        }
        const long long W = L + 1;
        const long long bmax = 2 * L;  // |2 x S y| <= 2 sqrt(ac) <= 2L
        const long long B = 2 * bmax + 1;
        std::vector<long long> cnt(static_cast<std::size_t>(W * W * B), 0);
        auto idx = [&](long long a, long long b, long long c) {
            return static_cast<std::size_t>((a * W + c) * B + (b + bmax));
        };
        cnt[idx(0, 0, 0)] += 1;
        for (std::size_t i = 0; i < nr; ++i) {
            const long long a = norms[i];
            cnt[idx(a, 0, 0)] += 2;  // y = 0
            cnt[idx(0, 0, a)] += 2;  // x = 0
            const int* sx = &Sx[i * n];
            for (std::size_t j = i; j < nr; ++j) {
                const int* y = &X[j * n];
                int r = 0;
                for (int c = 0; c < n; ++c) r += sx[c] * y[c];
                const long long c = norms[j];
                cnt[idx(a, 2 * r, c)] += 2;
                cnt[idx(a, -2 * r, c)] += 2;
                if (j != i) {
                    cnt[idx(c, 2 * r, a)] += 2;
                    cnt[idx(c, -2 * r, a)] += 2;
                }
            }
        }
        std::vector<Term> terms;
        for (long long a = 0; a < W; ++a)
            for (long long c = 0; c < W; ++c)
                for (long long b = -bmax; b <= bmax; ++b) {
                    long long v = cnt[idx(a, b, c)];
                    if (v) terms.push_back(Term{ExpKey{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)},
                                                CycRat(Rat(v))});
                }
        result = FourierSeries::from_terms(D, N, std::move(terms));
    } else {
        throw std::invalid_argument("theta_lattice: degree must be 1 or 2");
    }
    result.set_weight(Rat(n, 2));
    result.set_label("theta_" + S.name);
    if (!S.name.empty()) {
        std::lock_guard<std::mutex> lk(mu);
        cache.emplace(key, result);
    }
    return result;
}

FourierSeries theta_harmonic_c4(int N) {
    const GramMatrix& T = gram_S4();  // 2*S4
    auto V = short_vectors(T, 2LL * N);
    std::vector<Term> terms;
    for (const auto& x : V) {
        long long a = T.qform_raw(x) / 2;
        for (const auto& y : V) {
            long long c = T.qform_raw(y) / 2;
            long long b = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) b += static_cast<long long>(x[i]) * T.at(i, j) * y[j];
            long long cc = (static_cast<long long>(x[0]) * y[2] - static_cast<long long>(x[2]) * y[0]) +
                           (static_cast<long long>(x[1]) * y[3] - static_cast<long long>(y[1]) * x[3]);
            long long dd = (static_cast<long long>(x[0]) * y[3] - static_cast<long long>(x[3]) * y[0]) +
                           (static_cast<long long>(x[2]) * y[1] - static_cast<long long>(x[1]) * y[2]) +
                           (static_cast<long long>(x[0]) * y[1] - static_cast<long long>(y[0]) * x[1]);
            long long w = cc * cc - dd * dd;
            if (w) terms.push_back(Term{ExpKey{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)}, CycRat(Rat(w))});
        }
    }
    FourierSeries f = FourierSeries::from_terms(1, N, std::move(terms));
    f.set_weight(Rat(4));
    f.set_label("c4");
    return f;
}

}  // namespace jf
