#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "jf/catalog.hpp"

namespace jf {

std::vector<std::vector<CycRat>> flatten_rows(const std::vector<std::vector<const FourierSeries*>>& blocks, int N) {
    if (blocks.empty()) return {};
    const std::size_t ncomp = blocks.front().size();
    std::vector<int> denom(ncomp, 1);
    for (const auto& row : blocks) {
        if (row.size() != ncomp) throw std::invalid_argument("flatten_rows: ragged blocks");
        for (std::size_t c = 0; c < ncomp; ++c) denom[c] = std::lcm(denom[c], row[c]->denom());
    }
    // shared key set per component, golden order
    std::vector<std::map<ExpKey, std::size_t>> index(ncomp);
    for (std::size_t c = 0; c < ncomp; ++c) {
        const long long lim = static_cast<long long>(N) * denom[c];
        for (const auto& row : blocks) {
            FourierSeries f = row[c]->lifted(denom[c]);
            for (const auto& t : f.terms())
                if (t.key.a <= lim && t.key.c <= lim) index[c].emplace(t.key, 0);
        }
    }
    std::size_t width = 0;
    std::vector<std::size_t> offset(ncomp);
    for (std::size_t c = 0; c < ncomp; ++c) {
        offset[c] = width;
        for (auto& kv : index[c]) kv.second = width++;
    }
    std::vector<std::vector<CycRat>> out;
    out.reserve(blocks.size());
    for (const auto& row : blocks) {
        std::vector<CycRat> v(width);
        for (std::size_t c = 0; c < ncomp; ++c) {
            FourierSeries f = row[c]->lifted(denom[c]);
            for (const auto& t : f.terms()) {
                auto it = index[c].find(t.key);
                if (it != index[c].end()) v[it->second] = t.coeff;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

struct ModField {
    u64 p;
    u64 zeta;  // primitive 24th root of unity
};

// primes p = 1 mod 24 below 2^62
std::vector<ModField> fields() {
    static std::vector<ModField> fs = [] {
        std::vector<ModField> out;
        u64 p = (1ull << 62) - ((1ull << 62) % 24) + 1;
        while (out.size() < 3) {
            p -= 24;
            if (!is_prime(p)) continue;
            for (u64 g = 2;; ++g) {
                u64 z = powmod(g, (p - 1) / 24, p);
                if (powmod(z, 12, p) != 1 && powmod(z, 8, p) != 1) {
                    out.push_back({p, z});
                    break;
                }
            }
        }
        return out;
    }();
    return fs;
}

std::optional<u64> rat_mod(const Rat& r, u64 p) {
    mpz_class n = r.num(), d = r.den();
    mpz_class pp;
    mpz_import(pp.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    mpz_class nm = n % pp, dm = d % pp;
    if (nm < 0) nm += pp;
    if (dm == 0) return std::nullopt;
    u64 a = 0, b = 0;
    mpz_export(&a, nullptr, 1, sizeof(u64), 0, 0, nm.get_mpz_t());
    mpz_export(&b, nullptr, 1, sizeof(u64), 0, 0, dm.get_mpz_t());
    return mulmod(a, powmod(b, p - 2, p), p);
}

std::optional<u64> cyc_mod(const CycRat& x, const ModField& f) {
    u64 acc = 0, zp = 1;
    for (int i = 0; i < CycRat::kDeg; ++i) {
        if (!x.coord(i).is_zero()) {
            auto v = rat_mod(x.coord(i), f.p);
            if (!v) return std::nullopt;
            acc = (acc + mulmod(*v, zp, f.p)) % f.p;
        }
        zp = mulmod(zp, f.zeta, f.p);
    }
    return acc;
}

std::optional<std::size_t> rank_mod(const std::vector<std::vector<CycRat>>& rows, const ModField& f) {
    const std::size_t R = rows.size(), C = R ? rows[0].size() : 0;
    std::vector<std::vector<u64>> m(R, std::vector<u64>(C));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            if (rows[i][j].is_zero()) continue;
            auto v = cyc_mod(rows[i][j], f);
            if (!v) return std::nullopt;
            m[i][j] = *v;
        }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t piv = rank;
        while (piv < R && m[piv][c] == 0) ++piv;
        if (piv == R) continue;
        std::swap(m[piv], m[rank]);
        u64 inv = powmod(m[rank][c], f.p - 2, f.p);
        for (std::size_t r = rank + 1; r < R; ++r) {
            if (m[r][c] == 0) continue;
            u64 fac = mulmod(m[r][c], inv, f.p);
            for (std::size_t k = c; k < C; ++k)
                if (m[rank][k]) m[r][k] = (m[r][k] + f.p - mulmod(fac, m[rank][k], f.p)) % f.p;
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_exact(std::vector<std::vector<CycRat>> m) {
    const std::size_t R = m.size(), C = R ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t piv = rank;
        while (piv < R && m[piv][c].is_zero()) ++piv;
        if (piv == R) continue;
        std::swap(m[piv], m[rank]);
        CycRat inv = m[rank][c].inv();
        for (std::size_t r = rank + 1; r < R; ++r) {
            if (m[r][c].is_zero()) continue;
            CycRat fac = m[r][c] * inv;
            for (std::size_t k = c; k < C; ++k)
                if (!m[rank][k].is_zero()) m[r][k] -= fac * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t rank_of_matrix(const std::vector<std::vector<CycRat>>& rows) {
    if (rows.empty()) return 0;
    // a modular rank can only drop, so a full modular rank certifies the exact one
    const std::size_t full = std::min(rows.size(), rows[0].size());
    for (const auto& f : fields()) {
        auto r = rank_mod(rows, f);
        if (r && *r == full) return full;
        if (r) break;
    }
    return rank_exact(rows);
}

std::size_t rank_over_field(const std::vector<FourierSeries>& rows, int N) {
    std::vector<std::vector<const FourierSeries*>> blocks;
    for (const auto& f : rows) blocks.push_back({&f});
    return rank_of_matrix(flatten_rows(blocks, N));
}

}  // namespace jf
