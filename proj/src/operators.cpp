#include "jf/operators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <tuple>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace jf {

WeightedForm weighted(const FourierSeries& f) {
    if (!f.weight()) throw std::invalid_argument("weighted: series '" + f.label() + "' has no weight tag");
    return WeightedForm{f, *f.weight(), f.label()};
}

namespace {

using FS = FourierSeries;

FS kf(const WeightedForm& f) { return fs_scale(f.series, CycRat(f.weight)); }

FS det2(const FS& a, const FS& b, const FS& c, const FS& d) { return a * d - b * c; }

// rows r0, r1, r2 over three columns
FS det3(const std::array<FS, 3>& r0, const std::array<FS, 3>& r1, const std::array<FS, 3>& r2) {
    FS m0 = det2(r1[1], r1[2], r2[1], r2[2]);
    FS m1 = det2(r1[0], r1[2], r2[0], r2[2]);
    FS m2 = det2(r1[0], r1[1], r2[0], r2[1]);
    return r0[0] * m0 - r0[1] * m1 + r0[2] * m2;
}

}  // namespace

Sym2Series bracket2(const WeightedForm& f, const WeightedForm& g) {
    Sym2Series r;
    CycRat k1(f.weight), k2(g.weight);
    auto comp = [&](Var v) {
        return fs_scale(f.series * d_partial(g.series, v), k1) - fs_scale(g.series * d_partial(f.series, v), k2);
    };
    r.h20 = comp(Var::t11);
    r.h11 = comp(Var::t12);
    r.h02 = comp(Var::t22);
    r.weight = f.weight + g.weight;
    return r;
}

Sym2Series bracket3(const WeightedForm& f1, const WeightedForm& f2, const WeightedForm& f3) {
    std::array<const WeightedForm*, 3> f{&f1, &f2, &f3};
    std::array<FS, 3> K, D11, D12, D22;
    for (int i = 0; i < 3; ++i) {
        K[i] = kf(*f[i]);
        D11[i] = d_partial(f[i]->series, Var::t11);
        D12[i] = d_partial(f[i]->series, Var::t12);
        D22[i] = d_partial(f[i]->series, Var::t22);
    }
    Sym2Series r;
    r.h20 = det3(D11, D12, K);
    r.h11 = fs_scale(det3(D11, K, D22), CycRat(-2));
    r.h02 = det3(K, D12, D22);
    r.weight = f1.weight + f2.weight + f3.weight + Rat(1);
    return r;
}

FourierSeries bracket4(const WeightedForm& f1, const WeightedForm& f2, const WeightedForm& f3,
                       const WeightedForm& f4) {
    std::array<const WeightedForm*, 4> f{&f1, &f2, &f3, &f4};
    std::array<std::array<FS, 4>, 4> R;
    for (int i = 0; i < 4; ++i) {
        R[0][i] = kf(*f[i]);
        R[1][i] = d_partial(f[i]->series, Var::t11);
        R[2][i] = d_partial(f[i]->series, Var::t12);
        R[3][i] = d_partial(f[i]->series, Var::t22);
    }
    // Laplace expansion along the first two rows
    static const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    FS out;
    bool first = true;
    for (int p = 0; p < 6; ++p) {
        int i = pairs[p][0], j = pairs[p][1];
        int k = -1, l = -1;
        for (int c = 0; c < 4; ++c)
            if (c != i && c != j) (k < 0 ? k : l) = c;
        FS top = det2(R[0][i], R[0][j], R[1][i], R[1][j]);
        FS bot = det2(R[2][k], R[2][l], R[3][k], R[3][l]);
        // sign of the permutation (i j k l)
        int sgn = ((i + j + 1) % 2 == 0) ? 1 : -1;
        FS term = top * bot;
        if (sgn < 0) term = -term;
        out = first ? term : out + term;
        first = false;
    }
    out.set_weight(f1.weight + f2.weight + f3.weight + f4.weight + Rat(3));
    return out;
}

FourierSeries d2_op(const WeightedForm& f) {
    FS d12 = d_partial(d_partial(f.series, Var::t12), Var::t12);
    FS d1122 = d_partial(d_partial(f.series, Var::t11), Var::t22);
    FS r = fs_scale(d12, CycRat(f.weight * Rat(1, 2))) - d1122;
    return r.set_weight(f.weight + Rat(2));
}

// ------------------------------------------------------------ expression trees

namespace {

std::atomic<std::uint64_t> g_next_id{1};

std::shared_ptr<Node> fresh(NodeKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->id = g_next_id.fetch_add(1);
    return n;
}

}  // namespace

Expr e_const(const CycRat& c) {
    auto n = fresh(NodeKind::Const);
    n->coeff = c;
    n->weight = Rat(0);
    return n;
}

Expr e_theta(std::vector<ThetaChar> chars, const CycRat& coeff) {
    auto n = fresh(NodeKind::Theta);
    std::sort(chars.begin(), chars.end());
    n->weight = Rat(static_cast<long long>(chars.size()), 2);
    n->chars = std::move(chars);
    n->coeff = coeff;
    return n;
}

Expr e_theta(const std::string& spec, const CycRat& coeff) {
    std::vector<ThetaChar> chars;
    std::istringstream in(spec);
    std::string tok;
    while (in >> tok) {
        int power = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            power = std::stoi(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
        }
        ThetaChar c = ThetaChar::parse(tok);
        for (int i = 0; i < power; ++i) chars.push_back(c);
    }
    return e_theta(std::move(chars), coeff);
}

Expr e_lattice(const GramMatrix& S, const CycRat& coeff, int scale, int s11, int s12, int s22) {
    auto n = fresh(NodeKind::Lattice);
    n->lattice = S;
    n->coeff = coeff;
    n->scale = scale;
    n->s11 = s11;
    n->s12 = s12;
    n->s22 = s22;
    n->weight = Rat(S.n, 2);
    return n;
}

Expr e_opaque(const std::string& name, const Rat& weight, std::function<FourierSeries(int)> fn) {
    auto n = fresh(NodeKind::Opaque);
    n->label = name;
    n->weight = weight;
    n->opaque = std::move(fn);
    return n;
}

Expr e_sum(const std::vector<std::pair<CycRat, Expr>>& parts) {
    if (parts.empty()) throw std::invalid_argument("e_sum: empty sum");
    auto n = fresh(NodeKind::Sum);
    n->weight = parts.front().second->weight;
    n->sym2 = parts.front().second->sym2;
    for (const auto& [c, x] : parts) {
        if (x->weight != n->weight) throw std::invalid_argument("e_sum: mixed weights");
        if (x->sym2 != n->sym2) throw std::invalid_argument("e_sum: mixing scalar and Sym2 terms");
        n->coeffs.push_back(c);
        n->kids.push_back(x);
    }
    return n;
}

Expr e_add(const Expr& a, const Expr& b) { return e_sum({{CycRat(1), a}, {CycRat(1), b}}); }
Expr e_sub(const Expr& a, const Expr& b) { return e_sum({{CycRat(1), a}, {CycRat(-1), b}}); }
Expr e_scale(const CycRat& c, const Expr& a) { return e_sum({{c, a}}); }

Expr e_prod(const std::vector<Expr>& fs) {
    if (fs.empty()) return e_const(CycRat(1));
    if (fs.size() == 1) return fs.front();
    auto n = fresh(NodeKind::Prod);
    n->weight = Rat(0);
    int nsym = 0;
    for (const auto& f : fs) {
        n->weight += f->weight;
        if (f->sym2) ++nsym;
        n->kids.push_back(f);
    }
    if (nsym > 1) throw std::invalid_argument("e_prod: product of two Sym2 values");
    n->sym2 = nsym == 1;
    return n;
}

Expr e_mul(const Expr& a, const Expr& b) { return e_prod({a, b}); }

Expr e_pow(const Expr& a, int k) {
    if (k < 0) throw std::invalid_argument("e_pow: negative exponent");
    return e_prod(std::vector<Expr>(static_cast<std::size_t>(k), a));
}

namespace {

Expr bracket_node(NodeKind k, std::vector<Expr> args, const Rat& extra) {
    auto n = fresh(k);
    n->weight = extra;
    for (const auto& a : args) {
        if (a->sym2) throw std::invalid_argument("bracket of a Sym2 value");
        n->weight += a->weight;
    }
    n->kids = std::move(args);
    n->sym2 = k != NodeKind::Bracket4;
    return n;
}

}  // namespace

Expr e_b2(const Expr& f, const Expr& g) { return bracket_node(NodeKind::Bracket2, {f, g}, Rat(0)); }
Expr e_b3(const Expr& f, const Expr& g, const Expr& h) {
    return bracket_node(NodeKind::Bracket3, {f, g, h}, Rat(1));
}
Expr e_b4(const Expr& f, const Expr& g, const Expr& h, const Expr& k) {
    return bracket_node(NodeKind::Bracket4, {f, g, h, k}, Rat(3));
}

Expr e_label(const std::string& name, const Expr& a) {
    auto n = std::make_shared<Node>(*a);  // same id: same value
    n->label = name;
    return n;
}

// ------------------------------------------------------------ slash

namespace {

std::mutex g_slash_mu;
std::map<std::pair<std::uint64_t, std::array<long long, 16>>, Expr> g_slash_memo;

Expr slash_lattice(const Expr& e, const SymplecticMat& M) {
    Mat2 A = M.A(), B = M.B(), C = M.C(), D = M.D();
    if (M.is_identity()) return e;
    if (M.is_upper() && A == Mat2::identity() && D == Mat2::identity()) {
        if (B.b != B.c) throw std::invalid_argument("slash: translation by a non-symmetric matrix");
        return e_lattice(e->lattice, e->coeff, e->scale, e->s11 + B.a, e->s12 + B.b, e->s22 + B.d);
    }
    if (A == Mat2{} && B == -Mat2::identity() && C == Mat2::identity() && D.b == D.c) {
        if (e->scale != 1 || e->s11 || e->s12 || e->s22)
            throw std::invalid_argument("slash: lattice leaf already transformed");
        LatticeSlash ls = slash_lattice_J(e->lattice);
        Expr j = e_lattice(ls.S_out, e->coeff * ls.constant, ls.scale);
        return slash_lattice(j, sp_translation(D));
    }
    throw std::invalid_argument("slash: lattice theta " + e->lattice.name + " not slashable by " + M.str());
}

}  // namespace

Expr slash(const Expr& e, const SymplecticMat& M) {
    if (M.is_identity()) return e;
    auto key = std::make_pair(e->id, M.entries());
    {
        std::lock_guard<std::mutex> lk(g_slash_mu);
        auto it = g_slash_memo.find(key);
        if (it != g_slash_memo.end()) return it->second;
    }
    Expr r;
    switch (e->kind) {
        case NodeKind::Const:
            if (!e->weight.is_zero()) throw std::invalid_argument("slash: weighted constant");
            r = e;
            break;
        case NodeKind::Theta: {
            SlashedMonomial sm = slash_theta_product(e->chars, M);
            r = e_theta(sm.chars, e->coeff * sm.factor);
            break;
        }
        case NodeKind::Lattice:
            r = slash_lattice(e, M);
            break;
        case NodeKind::Opaque:
            throw std::invalid_argument("slash: '" + e->label + "' has no structural slash");
        case NodeKind::Sum: {
            std::vector<std::pair<CycRat, Expr>> parts;
            for (std::size_t i = 0; i < e->kids.size(); ++i) parts.emplace_back(e->coeffs[i], slash(e->kids[i], M));
            r = e_sum(parts);
            break;
        }
        case NodeKind::Prod: {
            std::vector<Expr> ks;
            for (const auto& k : e->kids) ks.push_back(slash(k, M));
            r = e_prod(ks);
            break;
        }
        case NodeKind::Bracket2:
            r = e_b2(slash(e->kids[0], M), slash(e->kids[1], M));
            break;
        case NodeKind::Bracket3:
            r = e_b3(slash(e->kids[0], M), slash(e->kids[1], M), slash(e->kids[2], M));
            break;
        case NodeKind::Bracket4:
            r = e_b4(slash(e->kids[0], M), slash(e->kids[1], M), slash(e->kids[2], M), slash(e->kids[3], M));
            break;
    }
    if (!e->label.empty() && r->label.empty()) r = e_label(e->label + "|" + (M.name().empty() ? "M" : M.name()), r);
    std::lock_guard<std::mutex> lk(g_slash_mu);
    g_slash_memo.emplace(key, r);
    return r;
}

// ------------------------------------------------------------ exact evaluation

namespace {

struct Value {
    FourierSeries s;
    Sym2Series v;
};

std::mutex g_eval_mu;
std::unordered_map<std::uint64_t, std::shared_ptr<const Value>> g_eval_cache;

std::uint64_t ekey(const Expr& e, int N) { return (e->id << 6) | static_cast<std::uint64_t>(N & 63); }

std::shared_ptr<const Value> eval_value(const Expr& e, int N);

WeightedForm wf(const Expr& e, int N) {
    return WeightedForm{eval_value(e, N)->s, e->weight, e->label};
}

Sym2Series s2_lincomb(const std::vector<std::pair<CycRat, const Sym2Series*>>& parts) {
    std::vector<std::pair<CycRat, const FourierSeries*>> a, b, c;
    for (const auto& [k, x] : parts) {
        a.emplace_back(k, &x->h20);
        b.emplace_back(k, &x->h11);
        c.emplace_back(k, &x->h02);
    }
    Sym2Series r;
    r.h20 = fs_lincomb(a);
    r.h11 = fs_lincomb(b);
    r.h02 = fs_lincomb(c);
    return r;
}

std::shared_ptr<const Value> compute(const Expr& e, int N) {
    auto out = std::make_shared<Value>();
    switch (e->kind) {
        case NodeKind::Const:
            out->s = FourierSeries::constant(e->coeff, N);
            break;
        case NodeKind::Theta:
            out->s = e->chars.empty() ? FourierSeries::constant(e->coeff, N)
                                      : fs_scale(theta_monomial(e->chars, N), e->coeff);
            break;
        case NodeKind::Lattice: {
            FourierSeries t = theta_lattice(e->lattice, 2, e->scale, N);
            if (e->s11 || e->s12 || e->s22) t = translate(t, e->s11, e->s12, e->s22);
            out->s = fs_scale(t, e->coeff);
            break;
        }
        case NodeKind::Opaque:
            out->s = e->opaque(N).truncated(N);
            break;
        case NodeKind::Sum: {
            std::vector<std::shared_ptr<const Value>> vals;
            for (const auto& k : e->kids) vals.push_back(eval_value(k, N));
            if (e->sym2) {
                std::vector<std::pair<CycRat, const Sym2Series*>> parts;
                for (std::size_t i = 0; i < vals.size(); ++i) parts.emplace_back(e->coeffs[i], &vals[i]->v);
                out->v = s2_lincomb(parts);
            } else {
                std::vector<std::pair<CycRat, const FourierSeries*>> parts;
                for (std::size_t i = 0; i < vals.size(); ++i) parts.emplace_back(e->coeffs[i], &vals[i]->s);
                out->s = fs_lincomb(parts);
            }
            break;
        }
        case NodeKind::Prod: {
            std::optional<FourierSeries> acc;
            const Sym2Series* sv = nullptr;
            std::shared_ptr<const Value> keep;
            for (const auto& k : e->kids) {
                auto v = eval_value(k, N);
                if (k->sym2) {
                    keep = v;
                    sv = &keep->v;
                    continue;
                }
                acc = acc ? fs_mul(*acc, v->s) : v->s;
            }
            if (sv)
                out->v = acc ? s2_mul(*acc, *sv) : *sv;
            else
                out->s = *acc;
            break;
        }
        case NodeKind::Bracket2:
            out->v = bracket2(wf(e->kids[0], N), wf(e->kids[1], N));
            break;
        case NodeKind::Bracket3:
            out->v = bracket3(wf(e->kids[0], N), wf(e->kids[1], N), wf(e->kids[2], N));
            break;
        case NodeKind::Bracket4:
            out->s = bracket4(wf(e->kids[0], N), wf(e->kids[1], N), wf(e->kids[2], N), wf(e->kids[3], N));
            break;
    }
    if (e->sym2) {
        out->v.weight = e->weight;
        out->v.h20 = out->v.h20.truncated(N).normalized();
        out->v.h11 = out->v.h11.truncated(N).normalized();
        out->v.h02 = out->v.h02.truncated(N).normalized();
    } else {
        out->s = out->s.truncated(N).normalized();
        out->s.set_weight(e->weight);
        out->s.set_label(e->label);
    }
    return out;
}

std::shared_ptr<const Value> eval_value(const Expr& e, int N) {
    const auto key = ekey(e, N);
    {
        std::lock_guard<std::mutex> lk(g_eval_mu);
        auto it = g_eval_cache.find(key);
        if (it != g_eval_cache.end()) return it->second;
    }
    auto v = compute(e, N);
    std::lock_guard<std::mutex> lk(g_eval_mu);
    g_eval_cache.emplace(key, v);
    return v;
}

}  // namespace

FourierSeries eval(const Expr& e, int N) {
    if (e->sym2) throw std::invalid_argument("eval: Sym2-valued expression");
    FourierSeries s = eval_value(e, N)->s;
    s.set_label(e->label);
    return s;
}

Sym2Series eval_sym2(const Expr& e, int N) {
    if (!e->sym2) throw std::invalid_argument("eval_sym2: scalar expression");
    return eval_value(e, N)->v;
}

void clear_eval_cache() {
    std::lock_guard<std::mutex> lk(g_eval_mu);
    g_eval_cache.clear();
}

// ------------------------------------------------------------ numeric jets

namespace {

Jet jmul(const Jet& a, const Jet& b) {
    return Jet{a.v * b.v, a.d11 * b.v + a.v * b.d11, a.d12 * b.v + a.v * b.d12, a.d22 * b.v + a.v * b.d22};
}
Jet jscale(const Jet& a, cplx c) { return Jet{a.v * c, a.d11 * c, a.d12 * c, a.d22 * c}; }

struct JetCtx {
    CMat2 tau;
    std::map<int, Jet> theta;
    std::map<std::tuple<std::string, int, int, int, int>, Jet> lattice;
    std::map<std::uint64_t, Jet> nodes;
};

Jet jet_rec(const Expr& e, JetCtx& ctx);

cplx det_num(std::array<std::array<cplx, 4>, 4> m) {
    cplx d = 1;
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (m[p][c] == cplx(0)) return 0;
        if (p != c) { std::swap(m[p], m[c]); d = -d; }
        d *= m[c][c];
        for (int r = c + 1; r < 4; ++r) {
            cplx f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

Jet jet_compute(const Expr& e, JetCtx& ctx) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    switch (e->kind) {
        case NodeKind::Const:
            return Jet{e->coeff.to_complex(), 0, 0, 0};
        case NodeKind::Theta: {
            Jet acc{e->coeff.to_complex(), 0, 0, 0};
            for (const auto& c : e->chars) {
                auto it = ctx.theta.find(c.index());
                if (it == ctx.theta.end())
                    it = ctx.theta.emplace(c.index(), theta_defsum_jet({c.m[0], c.m[1], c.m[2], c.m[3]}, ctx.tau)).first;
                acc = jmul(acc, it->second);
            }
            return acc;
        }
        case NodeKind::Lattice: {
            auto key = std::make_tuple(e->lattice.name, e->scale, e->s11, e->s12, e->s22);
            auto it = ctx.lattice.find(key);
            if (it == ctx.lattice.end()) {
                const double s = e->scale;
                CMat2 z{(ctx.tau.a11 + double(e->s11)) / s, (ctx.tau.a12 + double(e->s12)) / s,
                        (ctx.tau.a22 + double(e->s22)) / s};
                Jet j = theta_lattice_defsum_jet(e->lattice, z, 1e-14);
                j.d11 /= s;
                j.d12 /= s;
                j.d22 /= s;
                it = ctx.lattice.emplace(key, j).first;
            }
            return jscale(it->second, e->coeff.to_complex());
        }
        case NodeKind::Opaque:
            throw std::invalid_argument("eval_jet: '" + e->label + "' has no numeric definition");
        case NodeKind::Sum: {
            if (e->sym2) throw std::invalid_argument("eval_jet: Sym2-valued expression");
            Jet acc{};
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                Jet k = jscale(jet_rec(e->kids[i], ctx), e->coeffs[i].to_complex());
                acc.v += k.v;
                acc.d11 += k.d11;
                acc.d12 += k.d12;
                acc.d22 += k.d22;
            }
            return acc;
        }
        case NodeKind::Prod: {
            if (e->sym2) throw std::invalid_argument("eval_jet: Sym2-valued expression");
            Jet acc{1, 0, 0, 0};
            for (const auto& k : e->kids) acc = jmul(acc, jet_rec(k, ctx));
            return acc;
        }
        case NodeKind::Bracket4: {
            std::array<std::array<cplx, 4>, 4> m;
            for (int i = 0; i < 4; ++i) {
                Jet j = jet_rec(e->kids[i], ctx);
                if (std::isnan(j.d11.real())) throw std::invalid_argument("eval_jet: nested 4-bracket");
                m[0][i] = e->kids[i]->weight.to_double() * j.v;
                m[1][i] = j.d11;
                m[2][i] = j.d12;
                m[3][i] = j.d22;
            }
            return Jet{det_num(m), nan, nan, nan};
        }
        default:
            throw std::invalid_argument("eval_jet: Sym2-valued expression");
    }
}

Jet jet_rec(const Expr& e, JetCtx& ctx) {
    auto it = ctx.nodes.find(e->id);
    if (it != ctx.nodes.end()) return it->second;
    Jet j = jet_compute(e, ctx);
    ctx.nodes.emplace(e->id, j);
    return j;
}

}  // namespace

Jet eval_jet(const Expr& e, const CMat2& tau) {
    JetCtx ctx{tau, {}, {}, {}};
    return jet_rec(e, ctx);
}

std::vector<Jet> eval_jets(const std::vector<Expr>& es, const CMat2& tau) {
    JetCtx ctx{tau, {}, {}, {}};
    std::vector<Jet> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(jet_rec(e, ctx));
    return out;
}

// ------------------------------------------------------------ S-expressions

std::string to_sexpr(const Expr& e) {
    if (!e->label.empty()) return "(gen " + e->label + ")";
    std::string s;
    switch (e->kind) {
        case NodeKind::Const:
            return e->coeff.str();
        case NodeKind::Theta: {
            s = "(theta";
            if (!e->coeff.is_one()) s += " " + e->coeff.str();
            for (const auto& c : e->chars) s += " " + c.str();
            return s + ")";
        }
        case NodeKind::Lattice:
            s = "(lattice " + e->lattice.name;
            if (!e->coeff.is_one()) s += " " + e->coeff.str();
            if (e->scale != 1) s += " :scale " + std::to_string(e->scale);
            if (e->s11 || e->s12 || e->s22)
                s += " :shift " + std::to_string(e->s11) + "," + std::to_string(e->s12) + "," + std::to_string(e->s22);
            return s + ")";
        case NodeKind::Opaque:
            return "(series " + e->label + ")";
        case NodeKind::Sum:
            s = "(+";
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (e->coeffs[i].is_one())
                    s += " " + to_sexpr(e->kids[i]);
                else
                    s += " (* " + e->coeffs[i].str() + " " + to_sexpr(e->kids[i]) + ")";
            }
            return s + ")";
        case NodeKind::Prod:
            s = "(*";
            break;
        case NodeKind::Bracket2:
            s = "(b2";
            break;
        case NodeKind::Bracket3:
            s = "(b3";
            break;
        case NodeKind::Bracket4:
            s = "(b4";
            break;
    }
    for (const auto& k : e->kids) s += " " + to_sexpr(k);
    return s + ")";
}

}  // namespace jf
