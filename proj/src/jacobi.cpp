#include "jf/jacobi.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace jf {

std::string WittResult::describe() const {
    if (pass) return "W residual = 0";
    auto lead = residual.leading();
    std::ostringstream o;
    o << "W residual != 0";
    if (lead)
        o << ", leading " << lead->coeff.str() << " at (" << Rat(lead->key.a, residual.denom()).str() << ", "
          << Rat(lead->key.c, residual.denom()).str() << ")";
    return o.str();
}

WittResult witt_condition(const XiPair& p, const SymplecticMat& M, int N) {
    if (p.weight.is_zero()) throw std::invalid_argument("witt_condition: weight 0");
    FourierSeries acc = FourierSeries::constant(CycRat(0), N);
    if (p.hhat) acc = acc + eval_sym2(slash(p.hhat, M), N).h11;
    if (p.f0) {
        FourierSeries g = eval(slash(p.f0, M), N);
        acc = acc + fs_scale(d_partial(g, Var::t12), CycRat(p.weight.inv()));
    }
    WittResult r;
    r.residual = witt(acc);
    r.pass = r.residual.is_zero();
    return r;
}

const XiPair& find_generator(GroupId g, JType t, const std::string& gen_name) {
    const auto& cat = catalog(g);
    const auto& v = t == JType::I ? cat.gens_I : cat.gens_II;
    for (const auto& p : v)
        if (p.name == gen_name) return p;
    throw std::out_of_range("unknown generator '" + gen_name + "' for " + group_name(g));
}

GeneratorReport verify_jacobi_generator(GroupId g, JType t, const std::string& gen_name, int N) {
    const XiPair& p = find_generator(g, t, gen_name);
    GeneratorReport rep;
    for (const auto& M : catalog(g).coset_reps) {
        WittResult w = witt_condition(p, M, N);
        rep.pass = rep.pass && w.pass;
        rep.per_rep.emplace_back(M.name(), std::move(w));
    }
    return rep;
}

XiPair module_action(const Expr& f, const XiPair& p) {
    if (f->sym2) throw std::invalid_argument("module_action: scalar form required");
    if (f->kind == NodeKind::Const && f->coeff.is_one()) return p;
    XiPair r = p;
    const Rat k1 = f->weight, k2 = p.weight;
    r.weight = k1 + k2;
    r.f0 = p.f0 ? e_mul(f, p.f0) : nullptr;
    std::vector<std::pair<CycRat, Expr>> parts;
    if (p.hhat) parts.emplace_back(CycRat(1), e_mul(f, p.hhat));
    if (p.f0) {
        if (k2.is_zero()) throw std::invalid_argument("module_action: weight 0 pair");
        parts.emplace_back(CycRat((k2 * (k1 + k2)).inv()), e_b2(f, p.f0));
    }
    r.hhat = parts.empty() ? nullptr : e_sum(parts);
    r.name = (f->label.empty() ? to_sexpr(f) : f->label) + "*" + p.name;
    return r;
}

XiValue eval_pair(const XiPair& p, int N) {
    XiValue v;
    v.f0 = p.f0 ? eval(p.f0, N) : FourierSeries::constant(CycRat(0), N);
    v.hhat = p.hhat ? eval_sym2(p.hhat, N) : Sym2Series::zero(N);
    return v;
}

std::string rank_status_name(RankStatus s) {
    switch (s) {
        case RankStatus::Confirmed: return "confirmed";
        case RankStatus::Mismatch: return "mismatch";
        case RankStatus::Inconclusive: return "inconclusive";
        case RankStatus::Skipped: return "skipped";
    }
    return "?";
}

bool ModuleReport::ok() const {
    for (const auto& r : rows)
        if (r.status == RankStatus::Mismatch || r.status == RankStatus::Inconclusive) return false;
    return true;
}

namespace {

struct MonomialCache {
    const GroupCatalog& cat;
    std::vector<Expr> gens;
    std::map<std::vector<int>, Expr> memo;

    explicit MonomialCache(const GroupCatalog& c) : cat(c) {
        for (const auto& n : c.ring_gens) gens.push_back(c.form(n));
    }
    Expr get(const std::vector<int>& e) {
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        Expr r;
        int i = -1;
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j] > 0) i = static_cast<int>(j);
        if (i < 0) {
            r = e_const(CycRat(1));
        } else {
            std::vector<int> lower = e;
            --lower[static_cast<std::size_t>(i)];
            Expr base = get(lower);
            r = (base->kind == NodeKind::Const) ? gens[static_cast<std::size_t>(i)]
                                                : e_mul(base, gens[static_cast<std::size_t>(i)]);
        }
        memo.emplace(e, r);
        return r;
    }
};

std::vector<int> int_weights(const std::vector<Expr>& xs) {
    std::vector<int> w;
    for (const auto& x : xs) {
        if (x->weight.den() != 1) throw std::logic_error("non-integral generator weight");
        w.push_back(static_cast<int>(x->weight.num().get_si()));
    }
    return w;
}

}  // namespace

ModuleReport verify_module_structure(GroupId g, Space s, int K, int N, int ceiling) {
    const GroupCatalog& cat = catalog(g);
    ModuleReport rep{g, s, {}};
    MonomialCache mc(cat);
    const std::vector<int> rw = int_weights(mc.gens);
    const std::vector<XiPair>* gens = s == Space::JI ? &cat.gens_I : (s == Space::JII ? &cat.gens_II : nullptr);
    HilbertData hd = cat.hilbert.at(s);
    if (!cat.ring_complete) {
        // restrict to the in-scope subring and submodule
        hd.den = rw;
        hd.num.clear();
        if (s == Space::AI)
            hd.num = {0};
        else
            for (const auto& p : *gens) hd.num.push_back(static_cast<int>(p.weight.num().get_si()));
    }
    const auto pred = hd.coeffs(K);
    for (int k = 1; k <= K; ++k) {
        WeightRow row;
        row.k = k;
        row.predicted = pred[static_cast<std::size_t>(k)];
        std::vector<Expr> scalars;
        std::vector<XiPair> pairs;
        if (s == Space::AI) {
            for (const auto& e : monomials_of_weight(rw, k)) scalars.push_back(mc.get(e));
        } else {
            for (const auto& p : *gens) {
                int w = static_cast<int>(p.weight.num().get_si());
                for (const auto& e : monomials_of_weight(rw, k - w)) pairs.push_back(module_action(mc.get(e), p));
            }
        }
        row.count = static_cast<long long>(s == Space::AI ? scalars.size() : pairs.size());
        if (row.count != row.predicted) {
            row.status = RankStatus::Mismatch;
            rep.rows.push_back(row);
            continue;
        }
        if (row.count == 0) {
            row.status = RankStatus::Confirmed;
            row.n_used = N;
            rep.rows.push_back(row);
            continue;
        }
        for (int n = N;; n += 2) {
            std::vector<FourierSeries> store;
            std::vector<std::vector<const FourierSeries*>> blocks;
            if (s == Space::AI) {
                store.reserve(scalars.size());
                for (const auto& x : scalars) store.push_back(eval(x, n));
                for (const auto& f : store) blocks.push_back({&f});
            } else {
                store.reserve(pairs.size() * 4);
                for (const auto& p : pairs) {
                    XiValue v = eval_pair(p, n);
                    store.push_back(v.f0);
                    store.push_back(v.hhat.h20);
                    store.push_back(v.hhat.h11);
                    store.push_back(v.hhat.h02);
                }
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    blocks.push_back({&store[4 * i], &store[4 * i + 1], &store[4 * i + 2], &store[4 * i + 3]});
            }
            row.rank = static_cast<long long>(rank_of_matrix(flatten_rows(blocks, n)));
            row.n_used = n;
            if (row.rank == row.predicted) {
                row.status = RankStatus::Confirmed;
                break;
            }
            if (n + 2 > ceiling) {
                row.status = RankStatus::Inconclusive;
                break;
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<std::vector<FourierSeries>> theta_matrix(int N) {
    std::vector<std::vector<FourierSeries>> m(4, std::vector<FourierSeries>(4));
    const int nus[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int j = 0; j < 4; ++j) {
        SecondKind s = theta_second_kind(nus[j][0], nus[j][1], N);
        m[0][j] = s.value;
        m[1][j] = s.d11;
        m[2][j] = s.d12;
        m[3][j] = s.d22;
    }
    return m;
}

FourierSeries theta_matrix_det(int N) {
    auto m = theta_matrix(N);
    static const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    FourierSeries out = FourierSeries::constant(CycRat(0), N);
    for (const auto& pr : pairs) {
        int i = pr[0], j = pr[1], k = -1, l = -1;
        for (int c = 0; c < 4; ++c)
            if (c != i && c != j) (k < 0 ? k : l) = c;
        FourierSeries top = m[0][i] * m[1][j] - m[0][j] * m[1][i];
        FourierSeries bot = m[2][k] * m[3][l] - m[2][l] * m[3][k];
        FourierSeries t = top * bot;
        out = ((i + j + 1) % 2 == 0) ? out + t : out - t;
    }
    return out.truncated(N).normalized();
}

}  // namespace jf
