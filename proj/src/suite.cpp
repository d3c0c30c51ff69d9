#include "jf/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "jf/registry.hpp"

namespace jf {

using FS = FourierSeries;

void validate(const RunConfig& c) {
    if (c.trunc < 1) throw ConfigError("--trunc must be >= 1");
    if (c.ceiling < c.trunc) throw ConfigError("--ceiling must be >= --trunc");
    if (c.ceiling > 16) throw ConfigError("--ceiling above 16 is outside desk scale");
    if (c.format != "table" && c.format != "json") throw ConfigError("--format must be table or json");
    if (c.jobs < 1) throw ConfigError("--jobs must be >= 1");
    if (!c.group.empty()) {
        try {
            parse_group(c.group);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

GroupId group_of(const std::string& name) {
    std::string n = name;
    for (const char* p : {"conflict.", "negctrl."})
        if (n.rfind(p, 0) == 0) n = n.substr(std::string(p).size());
    if (n.rfind("level4.00", 0) == 0) return GroupId::Gamma00_2psi;
    if (n.rfind("level4", 0) == 0) return GroupId::Gamma0_4psi;
    if (n.rfind("level3", 0) == 0) return GroupId::Gamma0_3psi;
    if (n.rfind("level2", 0) == 0) return GroupId::Gamma0_2;
    return GroupId::Gamma2;
}

CheckResult from_compare(const std::string& name, int N, const CompareResult& c) {
    CheckResult r;
    r.name = name;
    r.n = N;
    r.status = c.equal ? Status::Pass : Status::Fail;
    if (!c.equal) r.first_mismatch = c.describe();
    return r;
}

std::string leading_str(const FS& f) {
    auto t = f.leading();
    if (!t) return "0";
    std::ostringstream o;
    o << t->coeff.str() << " at (" << Rat(t->key.a, f.denom()).str() << ", " << Rat(t->key.b, f.denom()).str()
      << ", " << Rat(t->key.c, f.denom()).str() << ")";
    return o.str();
}

// ------------------------------------------------------------ identity checks

void add_identities(std::vector<Check>& v) {
    for (const auto& id : identities()) {
        std::string name = id.name;
        int min_n = id.min_n;
        std::string note = id.note;
        v.push_back({name, group_of(name), [name, min_n, note](const RunConfig& c) {
                         int N = std::max(c.trunc, min_n);
                         IdentityResult ir = verify_ring_identity(name, N);
                         CheckResult r = from_compare(name, N, ir.cmp);
                         r.status = ir.pass ? Status::Pass : Status::Fail;
                         if (!ir.pass && ir.component) r.detail = "component " + std::to_string(ir.component) + "; ";
                         r.detail += note;
                         return r;
                     }});
    }
}

// ------------------------------------------------------------ generator certification

CheckResult generator_result(const std::string& name, const GeneratorReport& g, int N) {
    CheckResult r;
    r.name = name;
    r.n = N;
    r.status = g.pass ? Status::Pass : Status::Fail;
    std::string reps;
    for (const auto& [m, w] : g.per_rep) {
        reps += (reps.empty() ? "" : " ") + m + (w.pass ? ":ok" : ":fail");
        if (!w.pass && !r.first_mismatch) r.first_mismatch = m + ": " + w.describe();
    }
    r.detail = "reps " + reps;
    return r;
}

void add_generators(std::vector<Check>& v) {
    for (GroupId g : all_groups()) {
        const GroupCatalog& cat = catalog(g);
        for (JType t : {JType::I, JType::II})
            for (const auto& x : (t == JType::I ? cat.gens_I : cat.gens_II)) {
                std::string name = group_prefix(g) + ".gen." + x.name;
                std::string gen = x.name;
                v.push_back({name, g, [name, g, t, gen](const RunConfig& c) {
                                 return generator_result(name, verify_jacobi_generator(g, t, gen, c.trunc), c.trunc);
                             }});
            }
    }
    // the printed weight-9 generator for Gamma_0(4)
    v.push_back({"conflict.level4.gen.II.w9_printed", GroupId::Gamma0_4psi, [](const RunConfig& c) {
                     const GroupCatalog& cat = catalog(GroupId::Gamma0_4psi);
                     XiPair p;
                     p.name = "II.w9_printed";
                     p.hhat = cat.form("h9_printed");
                     p.weight = p.hhat->weight;
                     p.group = GroupId::Gamma0_4psi;
                     p.jtype = JType::II;
                     GeneratorReport g;
                     for (const auto& M : cat.coset_reps) {
                         WittResult w = witt_condition(p, M, c.trunc);
                         g.pass = g.pass && w.pass;
                         g.per_rep.emplace_back(M.name().empty() ? "1" : M.name(), w);
                     }
                     CheckResult r = generator_result("conflict.level4.gen.II.w9_printed", g, c.trunc);
                     r.detail += "; printed (0, g3{a1,b2,c2} - a1{b2,c2,f3})";
                     return r;
                 }});
}

// ------------------------------------------------------------ negative controls

// passes when the Witt condition fails
CheckResult expect_witt_failure(const std::string& name, const XiPair& p, const SymplecticMat& M, int N) {
    WittResult w = witt_condition(p, M, N);
    CheckResult r;
    r.name = name;
    r.n = N;
    r.status = w.pass ? Status::Fail : Status::Pass;
    r.detail = w.pass ? "Witt condition unexpectedly holds" : "fails as required: " + w.describe();
    return r;
}

XiPair scalar_pair(GroupId g, const std::string& form) {
    XiPair p;
    p.name = form;
    p.f0 = catalog(g).form(form);
    p.weight = p.f0->weight;
    p.group = g;
    return p;
}

void add_negative_controls(std::vector<Check>& v) {
    v.push_back({"negctrl.level3.e3_K", GroupId::Gamma0_3psi, [](const RunConfig& c) {
                     return expect_witt_failure("negctrl.level3.e3_K", scalar_pair(GroupId::Gamma0_3psi, "e3"), sp_K(),
                                                c.trunc);
                 }});
    v.push_back({"negctrl.level4.c2_M1", GroupId::Gamma0_4psi, [](const RunConfig& c) {
                     return expect_witt_failure("negctrl.level4.c2_M1", scalar_pair(GroupId::Gamma0_4psi, "c2"),
                                                sp_M1(), c.trunc);
                 }});
    v.push_back({"negctrl.level2.XYZ_11", GroupId::Gamma0_2, [](const RunConfig& c) {
                     const GroupCatalog& cat = catalog(GroupId::Gamma0_2);
                     FS w = witt(eval_sym2(e_b3(cat.form("X2"), cat.form("Y4"), cat.form("Z4")), c.trunc).h11);
                     CheckResult r;
                     r.name = "negctrl.level2.XYZ_11";
                     r.n = c.trunc;
                     r.status = w.is_zero() ? Status::Fail : Status::Pass;
                     r.detail = w.is_zero() ? "W({X2,Y4,Z4}_11) vanishes" : "W({X2,Y4,Z4}_11) leading " + leading_str(w);
                     return r;
                 }});
}

// ------------------------------------------------------------ dimension checks

Status report_status(const ModuleReport& m, std::string& detail, std::optional<std::string>& mism) {
    Status s = Status::Pass;
    std::ostringstream o;
    for (const auto& row : m.rows) {
        if (row.status == RankStatus::Mismatch) {
            s = Status::Fail;
            if (!mism)
                mism = "weight " + std::to_string(row.k) + ": predicted " + std::to_string(row.predicted) +
                       ", spanning set " + std::to_string(row.count) + ", rank " + std::to_string(row.rank);
        } else if (row.status == RankStatus::Inconclusive && s == Status::Pass) {
            s = Status::Inconclusive;
        }
        o << (o.tellp() ? " " : "") << row.k << ":" << row.rank << "/" << row.predicted << "@" << row.n_used;
    }
    detail = o.str();
    return s;
}

void add_dims(std::vector<Check>& v) {
    for (GroupId g : all_groups())
        for (Space s : {Space::AI, Space::JI, Space::JII}) {
            std::string name = group_prefix(g) + ".dims." + space_name(s);
            int K = s == Space::JII ? 14 : 10;
            v.push_back({name, g, [name, g, s, K](const RunConfig& c) {
                             CheckResult r;
                             r.name = name;
                             r.n = c.trunc;
                             ModuleReport m = verify_module_structure(g, s, K, c.trunc, c.ceiling);
                             for (const auto& row : m.rows) r.n = std::max(r.n, row.n_used);
                             r.status = report_status(m, r.detail, r.first_mismatch);
                             return r;
                         }});
        }
}

// ------------------------------------------------------------ bracket and module properties

std::vector<Expr> bracket_pool(GroupId g) {
    const GroupCatalog& cat = catalog(g);
    std::vector<Expr> p;
    for (const auto& n : cat.ring_gens) p.push_back(cat.form(n));
    if (g == GroupId::Gamma2) {
        p.push_back(cat.form("chi5"));
        p.push_back(e_mul(cat.form("phi4"), cat.form("chi5")));
    }
    return p;
}

bool sym2_equal(const Sym2Series& a, const Sym2Series& b, int N, std::string& why) {
    const FS* x[3] = {&a.h20, &a.h11, &a.h02};
    const FS* y[3] = {&b.h20, &b.h11, &b.h02};
    for (int i = 0; i < 3; ++i) {
        CompareResult c = fs_equal_upto(*x[i], *y[i], N);
        if (!c.equal) {
            why = "component " + std::to_string(i) + ": " + c.describe();
            return false;
        }
    }
    return true;
}

bool sym2_zero(const Sym2Series& a, int N, std::string& why) { return sym2_equal(a, Sym2Series::zero(N), N, why); }

Sym2Series scaled_mul(const CycRat& c, const FS& f, const Sym2Series& h) { return s2_mul(fs_scale(f, c), h); }

// sum_i sign_i k_i f_i {rest}; cyclic = printed ordering f_{i+1}, f_{i+2}, f_{i+3} with all plus signs
Sym2Series rel3_sum(const std::vector<Expr>& f, int N, bool printed) {
    Sym2Series acc = Sym2Series::zero(N);
    for (int i = 0; i < 4; ++i) {
        std::vector<Expr> o;
        if (printed)
            for (int j = 1; j < 4; ++j) o.push_back(f[(i + j) % 4]);
        else
            for (int j = 0; j < 4; ++j)
                if (j != i) o.push_back(f[j]);
        Rat k = f[i]->weight;
        if (!printed && i % 2) k = -k;
        acc = s2_add(acc, scaled_mul(CycRat(k), eval(f[i], N), eval_sym2(e_b3(o[0], o[1], o[2]), N)));
    }
    return acc;
}

Sym2Series rel2_sum(const std::vector<Expr>& f, int N) {
    Sym2Series acc = Sym2Series::zero(N);
    for (int i = 0; i < 3; ++i)
        acc = s2_add(acc, scaled_mul(CycRat(f[i]->weight), eval(f[i], N),
                                     eval_sym2(e_b2(f[(i + 1) % 3], f[(i + 2) % 3]), N)));
    return acc;
}

// (d12 f1){f2,f3,f4}_11 - (d12 f2){f3,f4,f1}_11 + (d12 f3){f4,f1,f2}_11 - (d12 f4){f1,f2,f3}_11 - 2{f1,f2,f3,f4}
FS ref4_residual(const std::vector<Expr>& f, int N) {
    FS acc = FS::constant(CycRat(0), N);
    for (int i = 0; i < 4; ++i) {
        FS t = d_partial(eval(f[i], N), Var::t12) *
               eval_sym2(e_b3(f[(i + 1) % 4], f[(i + 2) % 4], f[(i + 3) % 4]), N).h11;
        acc = i % 2 ? acc - t : acc + t;
    }
    return acc - fs_scale(eval(e_b4(f[0], f[1], f[2], f[3]), N), CycRat(2));
}

template <class F>
void for_subsets(std::size_t n, std::size_t k, F fn) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t d) {
        if (d == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[d] = i;
            rec(i + 1, d + 1);
        }
    };
    rec(0, 0);
}

CheckResult relations_check(const std::string& name, GroupId g, int N, bool printed_rel3) {
    CheckResult r;
    r.name = name;
    r.n = N;
    const auto pool = bracket_pool(g);
    int count = 0;
    auto fail = [&](const std::string& what, const std::string& why) {
        if (r.status == Status::Pass) {
            r.status = Status::Fail;
            r.first_mismatch = what + ": " + why;
        }
    };
    if (!printed_rel3)
        for_subsets(pool.size(), 3, [&](const std::vector<std::size_t>& s) {
            std::string why;
            ++count;
            if (!sym2_zero(rel2_sum({pool[s[0]], pool[s[1]], pool[s[2]]}, N), N, why)) fail("rel2", why);
        });
    for_subsets(pool.size(), 4, [&](const std::vector<std::size_t>& s) {
        std::vector<Expr> q{pool[s[0]], pool[s[1]], pool[s[2]], pool[s[3]]};
        std::string why;
        ++count;
        if (!sym2_zero(rel3_sum(q, N, printed_rel3), N, why)) fail(printed_rel3 ? "rel3 (printed)" : "rel3", why);
        if (!printed_rel3) {
            ++count;
            FS res = ref4_residual(q, N);
            CompareResult c = fs_equal_upto(res, FS::constant(CycRat(0), N), N);
            if (!c.equal) fail("ref4", c.describe());
        }
    });
    r.detail = std::to_string(count) + (printed_rel3 ? " quadruples, cyclic all-plus form"
                                                     : " relation instances (rel2 triples, rel3 alternating and ref4 "
                                                       "quadruples)");
    return r;
}

CheckResult bracket_props(const std::string& name, GroupId g, int N, int cases) {
    CheckResult r;
    r.name = name;
    r.n = N;
    auto pool = bracket_pool(g);
    const std::size_t base = pool.size();
    for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = i; j < base; ++j)
            if (pool[i]->weight.to_double() + pool[j]->weight.to_double() <= 8) pool.push_back(e_mul(pool[i], pool[j]));
    std::mt19937_64 rng(0x5eed0000ULL + static_cast<unsigned>(g));
    auto pick = [&] { return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]; };
    int done = 0;
    for (int t = 0; t < cases && r.status == Status::Pass; ++t) {
        const int kind = t % 6;
        Expr a = pick(), b = pick(), c = pick(), d = pick();
        std::string why;
        bool ok = true;
        switch (kind) {
            case 0:  // {f,g} = -{g,f}
                ok = sym2_equal(eval_sym2(e_b2(a, b), N), s2_scale(eval_sym2(e_b2(b, a), N), CycRat(-1)), N, why);
                break;
            case 1: {  // random transposition in a 3-bracket
                Sym2Series x = eval_sym2(e_b3(a, b, c), N);
                Sym2Series y = (t / 6) % 2 ? eval_sym2(e_b3(b, a, c), N) : eval_sym2(e_b3(a, c, b), N);
                ok = sym2_equal(x, s2_scale(y, CycRat(-1)), N, why);
                break;
            }
            case 2: {
                CompareResult cr = fs_equal_upto(eval(e_b4(a, b, c, d), N), -eval(e_b4(a, c, b, d), N), N);
                ok = cr.equal;
                why = cr.describe();
                break;
            }
            case 3:
                ok = sym2_zero(eval_sym2(e_b2(a, a), N), N, why);
                break;
            case 4:
                ok = sym2_zero((t / 6) % 2 ? eval_sym2(e_b3(a, b, a), N) : eval_sym2(e_b3(a, a, b), N), N, why);
                break;
            case 5: {
                CompareResult cr = fs_equal_upto(eval(e_b4(a, b, c, b), N), FS::constant(CycRat(0), N), N);
                ok = cr.equal;
                why = cr.describe();
                break;
            }
        }
        ++done;
        if (!ok) {
            r.status = Status::Fail;
            r.first_mismatch = "case " + std::to_string(t) + " (" + to_sexpr(a) + ", " + to_sexpr(b) + "): " + why;
        }
    }
    r.detail = std::to_string(done) + " randomized antisymmetry / repeated-argument cases";
    return r;
}

bool pair_equal(const XiValue& x, const XiValue& y, int N, std::string& why) {
    CompareResult c = fs_equal_upto(x.f0, y.f0, N);
    if (!c.equal) {
        why = "f0: " + c.describe();
        return false;
    }
    return sym2_equal(x.hhat, y.hhat, N, why);
}

XiValue lin(const CycRat& a, const XiValue& x, const CycRat& b, const XiValue& y) {
    return XiValue{fs_add(fs_scale(x.f0, a), fs_scale(y.f0, b)), s2_add(s2_scale(x.hhat, a), s2_scale(y.hhat, b))};
}

CheckResult module_props(const std::string& name, GroupId g, int N, int cases) {
    CheckResult r;
    r.name = name;
    r.n = N;
    auto pool = bracket_pool(g);
    if (g == GroupId::Gamma2) pool.resize(2);  // type-I forms only
    const std::size_t base = pool.size();
    for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = i; j < base; ++j)
            if (pool[i]->weight.to_double() + pool[j]->weight.to_double() <= 6) pool.push_back(e_mul(pool[i], pool[j]));
    std::mt19937_64 rng(0x3d0d0000ULL + static_cast<unsigned>(g));
    auto pick = [&] { return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]; };
    auto pair_of = [&](const Expr& f) {
        XiPair p;
        p.f0 = f;
        p.weight = f->weight;
        p.group = g;
        return p;
    };
    for (int t = 0; t < cases && r.status == Status::Pass; ++t) {
        Expr f = pick(), h = pick();
        const Rat k1 = f->weight, k2 = h->weight;
        std::string why, which;
        bool ok = true;
        XiValue fg = eval_pair(module_action(f, pair_of(h)), N);
        XiValue gf = eval_pair(module_action(h, pair_of(f)), N);
        // rel1: k1 k2 (f.(g,0) - g.(f,0)) = (0, {f,g})
        XiValue l1 = lin(CycRat(k1 * k2), fg, CycRat(-(k1 * k2)), gf);
        XiValue r1{FS::constant(CycRat(0), N), eval_sym2(e_b2(f, h), N)};
        ok = pair_equal(l1, r1, N, why);
        which = "rel1";
        if (ok) {
            // rel4: (k2 f.(g,0) + k1 g.(f,0)) / (k1 + k2) = (fg, 0)
            XiValue l4 = lin(CycRat(k2 / (k1 + k2)), fg, CycRat(k1 / (k1 + k2)), gf);
            XiValue r4{eval(e_mul(f, h), N), Sym2Series::zero(N)};
            ok = pair_equal(l4, r4, N, why);
            which = "rel4";
        }
        if (ok) {
            // rel5: f.(0,h) = (0, f h) with h a 3-bracket
            Expr b = e_b3(pick(), pick(), pick());
            XiPair p;
            p.hhat = b;
            p.weight = b->weight;
            p.group = g;
            p.jtype = JType::II;
            XiValue l5 = eval_pair(module_action(f, p), N);
            XiValue r5{FS::constant(CycRat(0), N), s2_mul(eval(f, N), eval_sym2(b, N))};
            ok = pair_equal(l5, r5, N, why);
            which = "rel5";
        }
        if (!ok) {
            r.status = Status::Fail;
            r.first_mismatch = which + " case " + std::to_string(t) + ": " + why;
        }
    }
    r.detail = std::to_string(cases) + " random (f, g) pairs, rel1 rel4 rel5";
    return r;
}

CheckResult parity_check(const std::string& name, GroupId g, int N) {
    CheckResult r;
    r.name = name;
    r.n = N;
    const GroupCatalog& cat = catalog(g);
    int count = 0;
    for (JType t : {JType::I, JType::II})
        for (const auto& p : (t == JType::I ? cat.gens_I : cat.gens_II)) {
            ++count;
            XiValue v = eval_pair(p, N);
            const CycRat eps(t == JType::I ? 1 : -1);
            auto check = [&](const FS& f, const CycRat& s, const char* comp) {
                CompareResult c = fs_equal_upto(involution_I(f), fs_scale(f, s), N);
                if (!c.equal && r.status == Status::Pass) {
                    r.status = Status::Fail;
                    r.first_mismatch = p.name + " " + comp + ": " + c.describe();
                }
            };
            check(v.f0, eps, "f0");
            check(v.hhat.h20, eps, "h20");
            check(v.hhat.h11, CycRat(0) - eps, "h11");
            check(v.hhat.h02, eps, "h02");
        }
    r.detail = std::to_string(count) + " generator pairs";
    return r;
}

void add_props(std::vector<Check>& v) {
    for (GroupId g : all_groups()) {
        const std::string p = group_prefix(g);
        v.push_back({p + ".props.brackets", g, [p, g](const RunConfig& c) {
                         return bracket_props(p + ".props.brackets", g, c.trunc, 50);
                     }});
        v.push_back({p + ".props.relations", g, [p, g](const RunConfig& c) {
                         return relations_check(p + ".props.relations", g, c.trunc, false);
                     }});
        // the level-1 pool has too few independent forms for the printed form to be tested
        if (g != GroupId::Gamma2)
            v.push_back({"conflict." + p + ".props.rel3_printed", g, [p, g](const RunConfig& c) {
                             return relations_check("conflict." + p + ".props.rel3_printed", g, c.trunc,
                                                    true);
                         }});
        v.push_back({p + ".props.module", g, [p, g](const RunConfig& c) {
                         return module_props(p + ".props.module", g, c.trunc, 20);
                     }});
        v.push_back({p + ".props.parity", g, [p, g](const RunConfig& c) {
                         return parity_check(p + ".props.parity", g, c.trunc);
                     }});
        v.push_back({p + ".smoke", g, [p, g](const RunConfig& c) {
                         CheckResult r;
                         r.name = p + ".smoke";
                         r.n = c.trunc;
                         auto items = smoke_test(g, smoke_point());
                         double worst = 0;
                         for (const auto& it : items) {
                             worst = std::max(worst, it.rel_err);
                             if (!(it.rel_err <= 1e-9) && r.status == Status::Pass) {
                                 r.status = Status::Fail;
                                 std::ostringstream o;
                                 o << it.generator << " " << it.form << " at " << it.rep << ": rel err " << it.rel_err;
                                 r.first_mismatch = o.str();
                             }
                         }
                         std::ostringstream o;
                         o << items.size() << " (form, rep) pairs, max rel err " << (worst < 1e-12 ? 0.0 : worst);
                         r.detail = o.str();
                         return r;
                     }});
    }
}

void add_theta_matrix(std::vector<Check>& v) {
    v.push_back({"level1.theta_matrix.row3_witt", GroupId::Gamma2, [](const RunConfig& c) {
                     CheckResult r;
                     r.name = "level1.theta_matrix.row3_witt";
                     r.n = c.trunc;
                     auto m = theta_matrix(c.trunc);
                     for (int j = 0; j < 4 && r.status == Status::Pass; ++j) {
                         FS w = witt(m[2][j]);
                         if (!w.is_zero()) {
                             r.status = Status::Fail;
                             r.first_mismatch = "column " + std::to_string(j) + ": " + leading_str(w);
                         }
                     }
                     r.detail = "W(d12 theta_nu) = 0 for all four columns";
                     return r;
                 }});
}

std::vector<Check> build_checks() {
    std::vector<Check> v;
    add_identities(v);
    add_generators(v);
    add_negative_controls(v);
    add_dims(v);
    add_props(v);
    add_theta_matrix(v);
    std::sort(v.begin(), v.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return v;
}

std::vector<std::string> split_globs(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ','))
        if (!part.empty()) out.push_back(part);
    return out;
}

}  // namespace

const std::vector<Check>& all_checks() {
    static const std::vector<Check> v = build_checks();
    return v;
}

std::vector<const Check*> select_checks(const RunConfig& c) {
    const auto globs = split_globs(c.suite);
    std::optional<GroupId> g;
    if (!c.group.empty()) g = parse_group(c.group);
    std::vector<const Check*> out;
    for (const auto& k : all_checks()) {
        if (g && k.group != *g) continue;
        bool hit = false;
        for (const auto& p : globs) hit = hit || glob_match(p, k.name);
        if (hit) out.push_back(&k);
    }
    return out;
}

CheckResult run_check(const Check& k, const RunConfig& c) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = k.run(c);
    } catch (const std::exception& e) {
        r.name = k.name;
        r.n = c.trunc;
        r.status = Status::Fail;
        r.first_mismatch = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CheckResult> run_checks(const std::vector<const Check*>& checks, const RunConfig& c) {
    std::vector<CheckResult> out(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < checks.size(); i = next++) out[i] = run_check(*checks[i], c);
    };
    const int n = std::max(1, std::min<int>(c.jobs, static_cast<int>(checks.size())));
    std::vector<std::thread> ts;
    for (int i = 1; i < n; ++i) ts.emplace_back(worker);
    worker();
    for (auto& t : ts) t.join();
    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return out;
}

int exit_code(const std::vector<CheckResult>& rs) {
    bool inconclusive = false;
    for (const auto& r : rs) {
        if (r.status == Status::Fail) return 1;
        inconclusive = inconclusive || r.status == Status::Inconclusive;
    }
    return inconclusive ? 3 : 0;
}

std::string report_json(const std::vector<CheckResult>& rs, const RunConfig& c) {
    nlohmann::ordered_json j;
    j["schema"] = "jfv.report/1";
    j["config"] = {{"trunc", c.trunc}, {"ceiling", c.ceiling}, {"suite", c.suite}, {"group", c.group}};
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::map<std::string, int> counts;
    for (const auto& r : rs) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["status"] = status_name(r.status);
        e["N"] = r.n;
        if (r.first_mismatch) e["first_mismatch"] = *r.first_mismatch;
        if (!r.detail.empty()) e["detail"] = r.detail;
        arr.push_back(e);
        ++counts[status_name(r.status)];
    }
    j["results"] = arr;
    j["summary"] = {{"pass", counts["pass"]}, {"fail", counts["fail"]}, {"inconclusive", counts["inconclusive"]}};
    return j.dump(2) + "\n";
}

std::string report_table(const std::vector<CheckResult>& rs) {
    std::size_t w = 5;
    for (const auto& r : rs) w = std::max(w, r.name.size());
    std::ostringstream o;
    std::map<Status, int> counts;
    for (const auto& r : rs) {
        o << r.name << std::string(w + 2 - r.name.size(), ' ');
        std::string s = status_name(r.status);
        o << s << std::string(14 - s.size(), ' ') << "N=" << r.n;
        if (r.first_mismatch) o << "  " << *r.first_mismatch;
        o << "\n";
        ++counts[r.status];
    }
    o << counts[Status::Pass] << " pass, " << counts[Status::Fail] << " fail, " << counts[Status::Inconclusive]
      << " inconclusive\n";
    return o.str();
}

// ------------------------------------------------------------ dims

DimsTable dims_table(GroupId g, Space s, int K, const RunConfig& c) {
    DimsTable t{g, s, {}, {}};
    t.full_series = catalog(g).hilbert.at(s).coeffs(std::max(K, 0));
    t.report = verify_module_structure(g, s, K, c.trunc, c.ceiling);
    return t;
}

std::string dims_json(const DimsTable& t) {
    nlohmann::ordered_json j;
    j["schema"] = "jfv.dims/1";
    j["group"] = group_name(t.group);
    j["space"] = space_name(t.space);
    j["generating_function"] = catalog(t.group).hilbert.at(t.space).str();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.report.rows) {
        rows.push_back({{"k", r.k},
                        {"full", t.full_series[static_cast<std::size_t>(r.k)]},
                        {"predicted", r.predicted},
                        {"rank", r.rank},
                        {"N", r.n_used},
                        {"status", rank_status_name(r.status)}});
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string dims_text(const DimsTable& t) {
    std::ostringstream o;
    o << group_name(t.group) << " " << space_name(t.space) << "  " << catalog(t.group).hilbert.at(t.space).str()
      << "\n";
    if (!catalog(t.group).ring_complete) o << "(in-scope generators only; 'full' is the complete series)\n";
    o << "k\tfull\tpredicted\trank\tN\tstatus\n";
    for (const auto& r : t.report.rows)
        o << r.k << "\t" << t.full_series[static_cast<std::size_t>(r.k)] << "\t" << r.predicted << "\t" << r.rank
          << "\t" << r.n_used << "\t" << rank_status_name(r.status) << "\n";
    return o.str();
}

int dims_exit_code(const DimsTable& t) {
    bool inc = false;
    for (const auto& r : t.report.rows) {
        if (r.status == RankStatus::Mismatch) return 1;
        inc = inc || r.status == RankStatus::Inconclusive;
    }
    return inc ? 3 : 0;
}

// ------------------------------------------------------------ float smoke test

namespace {

struct C22 {
    cplx a, b, c, d;
    C22 operator*(const C22& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    C22 operator+(const C22& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    cplx det() const { return a * d - b * c; }
    C22 inv() const {
        cplx D = det();
        return {d / D, -b / D, -c / D, a / D};
    }
};

C22 from_int(const Mat2& m) {
    return {cplx(double(m.a)), cplx(double(m.b)), cplx(double(m.c)), cplx(double(m.d))};
}

void collect_scalars(const Expr& e, std::vector<Expr>& out, std::set<std::uint64_t>& seen) {
    if (!e) return;
    if (e->sym2) {
        for (const auto& k : e->kids) collect_scalars(k, out, seen);
        return;
    }
    if (e->kind == NodeKind::Const) return;
    if (seen.insert(e->id).second) out.push_back(e);
}

std::string short_name(const Expr& e) {
    std::string s = to_sexpr(e);
    return s.size() > 60 ? s.substr(0, 57) + "..." : s;
}

}  // namespace

CMat2 smoke_point() { return CMat2{cplx(0, 1.3), cplx(0, 0.1), cplx(0, 1.7)}; }

cplx slash_direct(const Expr& f, const SymplecticMat& M, const CMat2& tau) {
    C22 t{tau.a11, tau.a12, tau.a12, tau.a22};
    C22 num = from_int(M.A()) * t + from_int(M.B());
    C22 den = from_int(M.C()) * t + from_int(M.D());
    C22 mt = num * den.inv();
    CMat2 z{mt.a, 0.5 * (mt.b + mt.c), mt.d};
    const double k = f->weight.to_double();
    if (k != std::round(k)) throw std::invalid_argument("slash_direct: half-integral weight");
    return std::pow(den.det(), -static_cast<int>(std::lround(k))) * eval_jet(f, z).v;
}

std::vector<SmokeItem> smoke_test(GroupId g, const CMat2& tau) {
    const GroupCatalog& cat = catalog(g);
    std::vector<std::pair<std::string, Expr>> forms;
    std::set<std::uint64_t> seen;
    for (JType t : {JType::I, JType::II})
        for (const auto& p : (t == JType::I ? cat.gens_I : cat.gens_II)) {
            std::vector<Expr> s;
            collect_scalars(p.f0, s, seen);
            collect_scalars(p.hhat, s, seen);
            for (const auto& e : s) forms.emplace_back(p.name, e);
        }
    std::vector<SmokeItem> out;
    for (const auto& M : cat.coset_reps) {
        std::vector<Expr> slashed;
        for (const auto& f : forms) slashed.push_back(slash(f.second, M));
        std::vector<Jet> js = eval_jets(slashed, tau);
        // direct side: one shared evaluation at M<tau>
        C22 t{tau.a11, tau.a12, tau.a12, tau.a22};
        C22 den = from_int(M.C()) * t + from_int(M.D());
        C22 mt = (from_int(M.A()) * t + from_int(M.B())) * den.inv();
        CMat2 z{mt.a, 0.5 * (mt.b + mt.c), mt.d};
        std::vector<Expr> plain;
        for (const auto& f : forms) plain.push_back(f.second);
        std::vector<Jet> jd = eval_jets(plain, z);
        for (std::size_t i = 0; i < forms.size(); ++i) {
            const int k = static_cast<int>(std::lround(forms[i].second->weight.to_double()));
            SmokeItem it;
            it.generator = forms[i].first;
            it.form = short_name(forms[i].second);
            it.rep = M.name().empty() ? "1" : M.name();
            it.direct = std::pow(den.det(), -k) * jd[i].v;
            it.structural = js[i].v;
            out.push_back(it);
        }
    }
    // error relative to the size of the same form over all reps; small values are cancellation
    std::map<std::string, double> scale;
    for (const auto& it : out) {
        double& s = scale[it.generator + "|" + it.form];
        s = std::max({s, std::abs(it.direct), std::abs(it.structural)});
    }
    for (auto& it : out)
        it.rel_err = std::abs(it.direct - it.structural) / std::max(scale[it.generator + "|" + it.form], 1e-300);
    return out;
}

}  // namespace jf
