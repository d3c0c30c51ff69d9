#include <map>
#include <stdexcept>

#include "jf/catalog.hpp"
#include "jf/jacobi.hpp"

namespace jf {

namespace {

using FS = FourierSeries;
using G = GroupId;

FS sc(const Rat& r, const FS& f) { return fs_scale(f, CycRat(r)); }
FS sc(const CycRat& r, const FS& f) { return fs_scale(f, r); }
FS P(const FS& f, int n) { return fs_pow(f, n); }
FS F(G g, const std::string& n, int N) { return eval(catalog(g).form(n), N); }
FS FM(G g, const std::string& n, const SymplecticMat& M, int N) { return eval(slash(catalog(g).form(n), M), N); }
FS d12(const FS& f) { return d_partial(f, Var::t12); }
FS d12sq(const FS& f) { return d12(d12(f)); }
FS zero(int N) { return FS::constant(CycRat(0), N); }
FS th(const std::string& spec, int N, const Rat& c = Rat(1)) { return eval(e_theta(spec, CycRat(c)), N); }
const Expr& ex(G g, const std::string& n) { return catalog(g).form(n); }

// degree-1 theta constants: A, B, C in tau11 and a, b, c in tau22
struct Deg1 {
    FS A, B, C, a, b, c;
    explicit Deg1(int N)
        : A(deg1_theta(0, 0, false, N)), B(deg1_theta(0, 1, false, N)), C(deg1_theta(1, 0, false, N)),
          a(deg1_theta(0, 0, true, N)), b(deg1_theta(0, 1, true, N)), c(deg1_theta(1, 0, true, N)) {}
    // A^i B^j C^k a^l b^m c^n
    FS mono(int i, int j, int k, int l, int m, int n) const {
        return P(A, i) * P(B, j) * P(C, k) * P(a, l) * P(b, m) * P(c, n);
    }
};

// level-3 one-variable forms
struct L3 {
    FS F1, F2, G1, G2, x0, x1, y0, y1;
    explicit L3(int N) {
        F1 = theta_lattice(gram_A2(), 1, 1, N);
        F2 = theta_lattice(gram_E6(), 1, 1, N);
        G1 = swap_diag(F1);
        G2 = swap_diag(F2);
        auto t = gamma3_thetas(N);
        x0 = t.first;
        x1 = t.second;
        y0 = swap_diag(x0);
        y1 = swap_diag(x1);
    }
};

std::vector<FS> comps(const Sym2Series& s) { return {s.h20, s.h11, s.h02}; }

SidePairs sym2_eq(const Sym2Series& l, const Sym2Series& r) {
    return {{l.h20, r.h20}, {l.h11, r.h11}, {l.h02, r.h02}};
}

// terms with (a + c)/D <= s
FS low_part(const FS& f, const Rat& s) {
    std::vector<Term> keep;
    for (const auto& t : f.terms())
        if (!(s < Rat(t.key.a + t.key.c, f.denom()))) keep.push_back(t);
    return FS::from_terms(f.denom(), f.trunc(), std::move(keep));
}

FS mon(int a, int b, int c, int D, const Rat& v, int N) {
    return FS::monomial(ExpKey{a, b, c}, D, CycRat(v), N);
}

// sum_i (-1)^i k_i f_i {f_j : j != i}
Sym2Series alt_relation(G g, const std::vector<std::string>& n, int N) {
    Sym2Series acc = Sym2Series::zero(N);
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<Expr> o;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != i) o.push_back(ex(g, n[j]));
        const Expr& fi = ex(g, n[i]);
        CycRat c(i % 2 ? -fi->weight : fi->weight);
        acc = s2_add(acc, s2_mul(sc(c, F(g, n[i], N)), eval_sym2(e_b3(o[0], o[1], o[2]), N)));
    }
    return acc;
}

struct Reg {
    std::vector<Identity> v;
    void add(std::string name, int min_n, std::function<SidePairs(int)> f, std::string note = "") {
        v.push_back(Identity{std::move(name), min_n, std::move(f), std::move(note)});
    }
};

// ------------------------------------------------------------------ level 1
void level1(Reg& r) {
    r.add("level1.theta_jacobi_quartic", 1, [](int N) {
        Deg1 d(N);
        return SidePairs{{P(d.A, 4), P(d.B, 4) + P(d.C, 4)}, {P(d.a, 4), P(d.b, 4) + P(d.c, 4)}};
    });
    r.add("level1.theta_odd_zero", 1, [](int N) {
        SidePairs out;
        for (int i = 0; i < 16; ++i) {
            ThetaChar m = ThetaChar::deg2(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
            if (!m.even()) out.emplace_back(theta_const(m, N), zero(N));
        }
        return out;
    });
    r.add("level1.theta_shift_rule", 1, [](int N) {
        SidePairs out;
        for (int i = 0; i < 16; ++i) {
            std::array<int, 4> m{i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1};
            FS base = theta_const(2, m, N);
            for (int j = 0; j < 16; ++j) {
                std::array<int, 4> n{j >> 3 & 1, j >> 2 & 1, j >> 1 & 1, j & 1};
                std::array<int, 4> mm{m[0] + 2 * n[0], m[1] + 2 * n[1], m[2] + 2 * n[2], m[3] + 2 * n[3]};
                int sgn = (m[0] * n[2] + m[1] * n[3]) % 2 ? -1 : 1;
                out.emplace_back(theta_const(2, mm, N), sc(Rat(sgn), base));
            }
        }
        return out;
    });
    r.add("level1.theta1111_derivative", 1, [](int N) {
        Deg1 d(N);
        return SidePairs{{witt(d12(th("1111", N))), sc(Rat(-1, 4), d.mono(1, 1, 1, 1, 1, 1))}};
    });
    r.add("level1.chi10_a111", 1, [](int N) {
        FS c = F(G::Gamma2, "chi10", N);
        return SidePairs{{FS::constant(c.coeff_at(Rat(1), Rat(1), Rat(1)), N), FS::constant(CycRat(1), N)}};
    });
    r.add("level1.witt_d12sq_chi10", 1, [](int N) {
        FS dl = delta_series(N);
        return SidePairs{{witt(d12sq(F(G::Gamma2, "chi10", N))), sc(Rat(2), dl * swap_diag(dl))}};
    });
    r.add("level1.phi4_E8", 1, [](int N) {
        return SidePairs{{F(G::Gamma2, "phi4", N), theta_lattice(gram_E8(), 2, 1, N)}};
    });
    r.add("level1.chi5_detTheta", 1, [](int N) {
        return SidePairs{{sc(Rat(4), theta_matrix_det(N)), -F(G::Gamma2, "chi5", N)}};
    }, "4 det(Theta) = -chi5 once chi5 is normalized by its leading term -1");
    r.add("level1.chi5_leading", 1, [](int N) {
        FS c = F(G::Gamma2, "chi5", N);
        return SidePairs{{FS::constant(c.coeff_at(Rat(1, 2), Rat(1, 2), Rat(1, 2)), N), FS::constant(CycRat(-1), N)}};
    });
    r.add("conflict.level1.detTheta_leading", 1, [](int N) {
        FS d = sc(Rat(4), theta_matrix_det(N));
        return SidePairs{{FS::constant(d.coeff_at(Rat(1, 2), Rat(1, 2), Rat(1, 2)), N), FS::constant(CycRat(-1), N)}};
    }, "printed det(Theta) = chi5/4 with chi5 = -e(...) + ...; the computed 4 det(Theta) starts with +1");
    r.add("level1.witt_detTheta", 1, [](int N) { return SidePairs{{witt(theta_matrix_det(N)), zero(N)}}; });
    r.add("level1.chi5sq_chi10", 1, [](int N) {
        return SidePairs{{P(F(G::Gamma2, "chi5", N), 2), F(G::Gamma2, "chi10", N)}};
    });
}

// ------------------------------------------------------------------ level 2
void level2(Reg& r) {
    const G g = G::Gamma0_2;
    r.add("level2.witt_d12sq_K6", 1, [g](int N) {
        return SidePairs{{witt(d12sq(F(g, "K6", N))), sc(Rat(1, 2), witt(F(g, "Y4", N) * F(g, "Z4", N)))}};
    });
    r.add("level2.witt_Y4Z4", 1, [g](int N) {
        Deg1 d(N);
        return SidePairs{{witt(F(g, "Y4", N) * F(g, "Z4", N)), sc(Rat(1, 16384), d.mono(4, 4, 8, 4, 4, 8))}};
    });
    r.add("level2.chi19_witt", 1, [g](int N) {
        FS lhs = sc(Rat(512), d12(F(g, "chi19", N))) +
                 sc(Rat(1, 4), F(g, "Y4", N) * F(g, "Z4", N) *
                                   eval_sym2(e_b3(ex(g, "X2"), ex(g, "Y4"), ex(g, "Z4")), N).h11);
        return SidePairs{{witt(lhs), zero(N)}};
    });
    r.add("level2.witt_d12sq_Y4M1_K6M1", 1, [g](int N) {
        return SidePairs{{witt(d12sq(FM(g, "Y4", sp_M1(), N))), sc(Rat(512), witt(FM(g, "K6", sp_M1(), N)))}};
    });
    r.add("level2.witt_d12sq_Y4M1", 1, [g](int N) {
        Deg1 d(N);
        return SidePairs{{witt(d12sq(FM(g, "Y4", sp_M1(), N))), sc(Rat(-1, 8), d.mono(4, 4, 4, 4, 4, 4))}};
    });
    r.add("level2.witt_K6M1", 1, [g](int N) {
        Deg1 d(N);
        return SidePairs{{witt(FM(g, "K6", sp_M1(), N)), sc(Rat(-1, 4096), d.mono(4, 4, 4, 4, 4, 4))}};
    });
    struct Row {
        const char* form;
        const char* m;
        std::function<FS(int)> rhs;
    };
    std::vector<Row> rows = {
        {"X2", "1", [](int N) { return th("0000^4", N, Rat(1, 4)) + th("0001^4", N, Rat(1, 4)) + th("0010^4", N, Rat(1, 4)) + th("0011^4", N, Rat(1, 4)); }},
        {"Y4", "1", [](int N) { return th("0000^2 0001^2 0010^2 0011^2", N); }},
        {"Z4", "1", [](int N) { return sc(Rat(1, 16384), P(th("0100^4", N) - th("0110^4", N), 2)); }},
        {"K6", "1", [](int N) { return th("0100^2 0110^2 1000^2 1001^2 1100^2 1111^2", N, Rat(1, 4096)); }},
        {"X2", "M1", [](int N) { return th("0000^4", N, Rat(1, 4)) + th("0110^4", N, Rat(1, 4)) + th("1001^4", N, Rat(1, 4)) + th("1111^4", N, Rat(1, 4)); }},
        {"Y4", "M1", [](int N) { return th("0000^2 0110^2 1001^2 1111^2", N, Rat(-1)); }},
        {"Z4", "M1", [](int N) { return sc(Rat(1, 16384), P(th("0100^4", N) - th("0010^4", N), 2)); }},
        {"K6", "M1", [](int N) { return th("0100^2 0010^2 1000^2 0001^2 1100^2 0011^2", N, Rat(-1, 4096)); }},
    };
    for (const auto& row : rows) {
        std::string f = row.form, m = row.m;
        auto rhs = row.rhs;
        r.add("level2.slash." + f + "." + m, 1, [g, f, m, rhs](int N) {
            SymplecticMat M = m == "1" ? sp_identity() : sp_M1();
            return SidePairs{{FM(g, f, M, N), rhs(N)}};
        });
    }
    r.add("conflict.level2.slash.Z4.M1", 1, [g](int N) {
        return SidePairs{{FM(g, "Z4", sp_M1(), N), sc(Rat(1, 16384), P(th("0110^4", N) - th("0010^4", N), 2))}};
    }, "printed with theta_0110; the slash of theta_0100 is theta_0100 under M1");
    r.add("level2.rel2", 1, [g](int N) {
        Expr X = ex(g, "X2"), Y = ex(g, "Y4"), K = ex(g, "K6");
        Sym2Series s = s2_add(s2_add(s2_mul(sc(Rat(2), F(g, "X2", N)), eval_sym2(e_b2(Y, K), N)),
                                     s2_mul(sc(Rat(4), F(g, "Y4", N)), eval_sym2(e_b2(K, X), N))),
                              s2_mul(sc(Rat(6), F(g, "K6", N)), eval_sym2(e_b2(X, Y), N)));
        return sym2_eq(s, Sym2Series::zero(N));
    });
    r.add("level2.ref4", 1, [g](int N) {
        const char* nm[4] = {"X2", "Y4", "Z4", "K6"};
        Expr e[4];
        for (int i = 0; i < 4; ++i) e[i] = ex(g, nm[i]);
        // sum_i (-1)^(i+1) d12(f_i) {others}_11 = 2 {f1,f2,f3,f4}
        FS acc = zero(N);
        for (int i = 0; i < 4; ++i) {
            std::vector<Expr> o;
            for (int j = 0; j < 4; ++j)
                if (j != i) o.push_back(e[j]);
            FS t = d12(F(g, nm[i], N)) * eval_sym2(e_b3(o[0], o[1], o[2]), N).h11;
            acc = i % 2 == 0 ? acc + t : acc - t;
        }
        return SidePairs{{acc, sc(Rat(2), eval(e_b4(e[0], e[1], e[2], e[3]), N))}};
    });
}

// ------------------------------------------------------------------ level 3
void level3(Reg& r) {
    const G g = G::Gamma0_3psi;
    r.add("level3.chi10_c4e3sq", 1, [g](int N) {
        return SidePairs{{F(g, "chi10", N), sc(Rat(1, 6144), F(g, "c4", N) * P(F(g, "e3", N), 2))}};
    });
    r.add("level3.c4_harmonic", 1, [g](int N) { return SidePairs{{F(g, "c4_harmonic", N), F(g, "c4", N)}}; });
    r.add("level3.witt_c4", 1, [g](int N) { return SidePairs{{witt(F(g, "c4", N)), zero(N)}}; });
    r.add("level3.witt_d12sq_c4", 1, [g](int N) {
        return SidePairs{{witt(d12sq(F(g, "c4", N))), sc(Rat(1, 16 * 243), witt(F(g, "e3", N) * F(g, "f3", N)))}};
    });
    r.add("level3.witt_d12sq_c4_poly", 1, [g](int N) {
        L3 l(N);
        FS p = (P(l.F1, 3) - l.F2) * (sc(Rat(3), P(l.F1, 3)) - l.F2) * (P(l.G1, 3) - l.G2) *
               (sc(Rat(3), P(l.G1, 3)) - l.G2);
        return SidePairs{{witt(d12sq(F(g, "c4", N))), sc(Rat(1, 243), p)}};
    });
    r.add("level3.delta_F", 1, [](int N) {
        L3 l(N);
        return SidePairs{{delta_series(N), sc(Rat(-1, 432), (P(l.F1, 3) - l.F2) * P(sc(Rat(3), P(l.F1, 3)) - l.F2, 3))}};
    }, "the second factor is cubed (weight 12)");
    r.add("conflict.level3.delta_F", 1, [](int N) {
        L3 l(N);
        return SidePairs{{delta_series(N), sc(Rat(-1, 432), (P(l.F1, 3) - l.F2) * (sc(Rat(3), P(l.F1, 3)) - l.F2))}};
    }, "printed form has weight 6, not 12");
    r.add("level3.theta0_A2", 1, [](int N) {
        L3 l(N);
        return SidePairs{{l.x0, l.F1}};
    });
    r.add("level3.witt.a1", 1, [g](int N) {
        L3 l(N);
        return SidePairs{{witt(F(g, "a1", N)), l.F1 * l.G1}};
    });
    r.add("level3.witt.b3", 1, [g](int N) {
        L3 l(N);
        return SidePairs{{witt(F(g, "b3", N)), l.F2 * l.G2}};
    });
    r.add("level3.witt.thE6s", 1, [g](int N) {
        L3 l(N);
        FS p = (sc(Rat(4), P(l.F1, 3)) - l.F2) * (sc(Rat(4), P(l.G1, 3)) - l.G2);
        return SidePairs{{witt(F(g, "thE6s", N)), sc(Rat(1, 9), p)}};
    }, "the printed second factor (3G1^3 - G2) is inconsistent with W(e3) and W(f3); (4G1^3 - G2) is used");
    r.add("level3.witt.e3", 1, [g](int N) {
        L3 l(N);
        FS p = (sc(Rat(3), P(l.F1, 3)) - l.F2) * (sc(Rat(3), P(l.G1, 3)) - l.G2);
        return SidePairs{{witt(F(g, "e3", N)), sc(Rat(4), p)}};
    });
    r.add("level3.witt.f3", 1, [g](int N) {
        L3 l(N);
        FS p = (P(l.F1, 3) - l.F2) * (P(l.G1, 3) - l.G2);
        return SidePairs{{witt(F(g, "f3", N)), sc(Rat(4), p)}};
    });
    // starred forms f* = f|[K]
    r.add("level3.witt.star.a1", 1, [g](int N) {
        L3 l(N);
        FS p = l.x0 * l.y0 + sc(Rat(2), l.x1 * l.y0) + sc(Rat(2), l.x0 * l.y1) - sc(Rat(2), l.x1 * l.y1);
        return SidePairs{{witt(FM(g, "a1", sp_K(), N)), sc(Rat(-1, 3), p)}};
    });
    r.add("level3.witt.star.b3", 1, [g](int N) {
        L3 l(N);
        auto m = [&](long long c, int i, int j, int k, int n) {
            return sc(Rat(c), P(l.x0, i) * P(l.x1, j) * P(l.y0, k) * P(l.y1, n));
        };
        FS p = m(1, 3, 0, 3, 0) + m(6, 1, 2, 3, 0) + m(2, 0, 3, 3, 0) + m(6, 3, 0, 1, 2) - m(18, 1, 2, 1, 2) +
               m(12, 0, 3, 1, 2) + m(2, 3, 0, 0, 3) + m(12, 1, 2, 0, 3) + m(4, 0, 3, 0, 3);
        return SidePairs{{witt(FM(g, "b3", sp_K(), N)), sc(Rat(-1, 3), p)}};
    });
    r.add("level3.witt.star.e3", 1, [g](int N) { return SidePairs{{witt(FM(g, "e3", sp_K(), N)), zero(N)}}; });
    r.add("level3.witt_d12_e3sq_star", 1, [g](int N) {
        return SidePairs{{witt(d12(FM(g, "e3sq", sp_K(), N))), zero(N)}, {witt(d12(F(g, "e3sq", N))), zero(N)}};
    });
    r.add("level3.witt.star.phi4", 1, [g](int N) {
        L3 l(N);
        FS p = (P(l.x0, 4) + sc(Rat(8), l.x0 * P(l.x1, 3))) * (P(l.y0, 4) + sc(Rat(8), l.y0 * P(l.y1, 3)));
        return SidePairs{{witt(FM(g, "phi4", sp_K(), N)), p}, {witt(F(g, "phi4", N)), p}};
    });
    auto c4star_poly = [](const L3& l) {
        return l.x1 * l.y1 * (l.x0 - l.x1) * (l.y0 - l.y1) * (P(l.x0, 2) + l.x0 * l.x1 + P(l.x1, 2)) *
               (P(l.y0, 2) + l.y0 * l.y1 + P(l.y1, 2));
    };
    r.add("level3.witt.star.c4", 1, [g, c4star_poly](int N) {
        L3 l(N);
        return SidePairs{{witt(FM(g, "c4", sp_K(), N)), sc(Rat(-8, 81), c4star_poly(l))}};
    }, "sign forced by the c4 formula and the images of a1*, b3*, phi4");
    r.add("conflict.level3.witt.star.c4", 1, [g, c4star_poly](int N) {
        L3 l(N);
        return SidePairs{{witt(FM(g, "c4", sp_K(), N)), sc(Rat(8, 81), c4star_poly(l))}};
    }, "printed sign +8/81");
    r.add("level3.witt_d12sq_e3star", 1, [g](int N) {
        return SidePairs{{witt(d12sq(FM(g, "e3", sp_K(), N))),
                          sc(Rat(54), witt(FM(g, "a1", sp_K(), N) * FM(g, "c4", sp_K(), N)))}};
    });
    r.add("conflict.level3.witt_d12sq_e3star", 1, [g](int N) {
        return SidePairs{{witt(d12sq(FM(g, "e3", sp_K(), N))),
                          sc(Rat(-54), witt(FM(g, "a1", sp_K(), N) * FM(g, "c4", sp_K(), N)))}};
    }, "printed factor -2*3^3; consistent only with the printed sign of W(c4*)");
    r.add("level3.witt_d12sq_e3star_poly", 1, [g, c4star_poly](int N) {
        L3 l(N);
        FS p = l.x0 * l.y0 + sc(Rat(2), l.x1 * l.y0) + sc(Rat(2), l.x0 * l.y1) - sc(Rat(2), l.x1 * l.y1);
        return SidePairs{{witt(d12sq(FM(g, "e3", sp_K(), N))), sc(Rat(16, 9), p * c4star_poly(l))}};
    });
    r.add("level3.lead.a1b3e3", 3, [g](int N) {
        FS w = sc(Rat(1, 2), witt(eval_sym2(e_b3(ex(g, "a1"), ex(g, "b3"), ex(g, "e3")), N).h11));
        FS rhs = mon(2, 0, 1, 1, Rat(1889568), N) - mon(1, 0, 2, 1, Rat(1889568), N);
        return SidePairs{{low_part(w, Rat(3)), rhs}};
    });
    r.add("level3.lead.a1b3c4_star", 1, [g](int N) {
        const SymplecticMat K = sp_K();
        Expr e = slash(e_b3(ex(g, "a1"), ex(g, "b3"), ex(g, "c4")), K);
        FS w = sc(Rat(1, 2), witt(eval_sym2(e, N).h11));
        FS rhs = mon(1, 0, 2, 3, Rat(-16, 81), N) - mon(2, 0, 1, 3, Rat(-16, 81), N);
        return SidePairs{{low_part(w, Rat(1)), rhs}};
    }, "computed value; regression only");
    r.add("conflict.level3.lead.a1b3c4_star", 1, [g](int N) {
        Expr e = slash(e_b3(ex(g, "a1"), ex(g, "b3"), ex(g, "c4")), sp_K());
        FS w = sc(Rat(1, 2), witt(eval_sym2(e, N).h11));
        FS rhs = mon(1, 0, 2, 3, Rat(16, 243), N) - mon(2, 0, 1, 3, Rat(16, 243), N);
        return SidePairs{{low_part(w, Rat(1)), rhs}};
    }, "printed 16/243; computed -16/81");
    r.add("level3.lead.det3", 3, [g](int N) {
        Expr e3 = ex(g, "e3");
        std::vector<FS> c1 = comps(eval_sym2(e_b2(ex(g, "a1"), e3), N));
        std::vector<FS> c2 = comps(eval_sym2(e_b2(ex(g, "b3"), e3), N));
        std::vector<FS> c3 = comps(eval_sym2(e_b2(ex(g, "phi4"), e3), N));
        FS det = c1[0] * (c2[1] * c3[2] - c2[2] * c3[1]) - c1[1] * (c2[0] * c3[2] - c2[2] * c3[0]) +
                 c1[2] * (c2[0] * c3[1] - c2[1] * c3[0]);
        // -6^17 (e(-t12) - e(t12)) (e(2 t11 + 3 t22) - e(3 t11 + 2 t22))
        const Rat k(-16926659444736LL);
        FS rhs = mon(2, -1, 3, 1, k, N) - mon(3, -1, 2, 1, k, N) - mon(2, 1, 3, 1, k, N) + mon(3, 1, 2, 1, k, N);
        return SidePairs{{low_part(det, Rat(5)), rhs}};
    }, "computed leading term; antisymmetric under tau11 <-> tau22 as a row swap requires");
    r.add("conflict.level3.lead.det3", 3, [g](int N) {
        Expr e3 = ex(g, "e3");
        std::vector<FS> c1 = comps(eval_sym2(e_b2(ex(g, "a1"), e3), N));
        std::vector<FS> c2 = comps(eval_sym2(e_b2(ex(g, "b3"), e3), N));
        std::vector<FS> c3 = comps(eval_sym2(e_b2(ex(g, "phi4"), e3), N));
        FS det = c1[0] * (c2[1] * c3[2] - c2[2] * c3[1]) - c1[1] * (c2[0] * c3[2] - c2[2] * c3[0]) +
                 c1[2] * (c2[0] * c3[1] - c2[1] * c3[0]);
        const Rat k(16874416668672LL);
        FS rhs = mon(2, -1, 3, 1, k, N) + mon(3, -1, 2, 1, k, N) - mon(2, 1, 3, 1, k, N) - mon(3, 1, 2, 1, k, N);
        return SidePairs{{low_part(det, Rat(5)), rhs}};
    }, "printed 16874416668672 = 2^15 3^13 17 19 with a symmetric monomial part");
    r.add("level3.rel3", 1, [g](int N) {
        return sym2_eq(alt_relation(g, {"a1", "b3", "e3", "c4"}, N), Sym2Series::zero(N));
    }, "a1{b3,e3,c4} - 3b3{a1,e3,c4} + 3e3{a1,b3,c4} - 4c4{a1,b3,e3} = 0");
    r.add("conflict.level3.rel3", 1, [g](int N) {
        Expr a = ex(g, "a1"), b = ex(g, "b3"), c = ex(g, "c4"), e = ex(g, "e3");
        Sym2Series s = s2_add(s2_add(s2_mul(sc(Rat(4), F(g, "c4", N)), eval_sym2(e_b3(a, b, e), N)),
                                     s2_mul(F(g, "a1", N), eval_sym2(e_b3(b, e, c), N))),
                              s2_add(s2_mul(sc(Rat(3), F(g, "b3", N)), eval_sym2(e_b3(e, c, a), N)),
                                     s2_mul(sc(Rat(3), F(g, "e3", N)), eval_sym2(e_b3(c, a, b), N))));
        return sym2_eq(s, Sym2Series::zero(N));
    }, "printed with all plus signs and weights (4,1,3,3); nonzero");
    r.add("level3.X14_phi4", 1, [g](int N) {
        Expr x = e_b4(ex(g, "a1"), ex(g, "b3"), ex(g, "phi4"), ex(g, "e3"));
        return SidePairs{{F(g, "X14", N), sc(Rat(-1, 162), eval(x, N))}};
    });
    r.add("level3.X14_chi14", 1, [g](int N) {
        // chi14 = {alpha1, beta3, c4, delta3} / (2^9 3^10)
        Expr x = e_b4(ex(g, "a1"), ex(g, "beta3"), ex(g, "c4"), ex(g, "delta3"));
        return SidePairs{{F(g, "X14", N), sc(Rat(-3, 2), eval(x, N))}};
    }, "multilinearity gives X14 = -(3/2){a1,beta3,c4,delta3} = -2^8 3^11 chi14; the printed sign is +");
}

// ------------------------------------------------------------------ level 4, Gamma_0(4)
void level4(Reg& r) {
    const G g = G::Gamma0_4psi;
    r.add("level4.f3g3_K6", 1, [g](int N) {
        return SidePairs{{F(g, "f3", N) * F(g, "g3", N), sc(Rat(-36864), F(g, "K6", N))}};
    });
    r.add("level4.chi10_c2sq", 1, [g](int N) {
        return SidePairs{{F(g, "chi10", N),
                          sc(Rat(-1, 36864), P(F(g, "c2", N), 2) * F(g, "f3", N) * F(g, "g3", N))}};
    });
    r.add("level4.g3_f3M1sq", 1, [g](int N) { return SidePairs{{F(g, "g3", N), FM(g, "f3", sp_M1sq(), N)}}; });
    r.add("level4.witt.f3_zero", 1, [g](int N) { return SidePairs{{witt(F(g, "f3", N)), zero(N)}}; });
    r.add("level4.witt_d12sq_f3", 1, [g](int N) {
        return SidePairs{{witt(d12sq(F(g, "f3", N))), sc(Rat(-3, 16), witt(F(g, "F0", N)))}};
    });
    r.add("level4.witt_d12sq_f3_poly", 1, [g](int N) {
        Deg1 d(N);
        FS A2 = P(d.A, 2), B2 = P(d.B, 2), a2 = P(d.a, 2), b2 = P(d.b, 2);
        FS p = A2 * B2 * a2 * b2 * (A2 + B2) * P(A2 - B2, 2) * (a2 + b2) * P(a2 - b2, 2);
        return SidePairs{{witt(d12sq(F(g, "f3", N))), sc(Rat(-3, 16), p)}};
    });
    r.add("level4.witt.g3", 1, [g](int N) {
        Deg1 d(N);
        FS p = d.mono(2, 2, 0, 2, 2, 0) * (P(d.A, 2) + P(d.B, 2)) * (P(d.a, 2) + P(d.b, 2));
        return SidePairs{{witt(F(g, "g3", N)), sc(Rat(6), p)}};
    });
    r.add("level4.witt_d12sq_K6", 1, [g](int N) {
        Deg1 d(N);
        return SidePairs{{witt(sc(Rat(4096), d12sq(F(g, "K6", N)))), sc(Rat(1, 8), d.mono(4, 4, 8, 4, 4, 8))}};
    });
    r.add("level4.witt_d12_c2M1", 1, [g](int N) {
        Deg1 d(N);
        return SidePairs{{witt(d12(FM(g, "c2", sp_M1(), N))),
                          sc(CycRat::root_of_unity(1, 4) * CycRat(Rat(1, 4)), d.mono(2, 2, 2, 2, 2, 2))}};
    });
    r.add("level4.triplerelation", 1, [g](int N) {
        return sym2_eq(alt_relation(g, {"a1", "b2", "c2", "f3"}, N), Sym2Series::zero(N));
    }, "a1{b2,c2,f3} - 2b2{a1,c2,f3} + 2c2{a1,b2,f3} - 3f3{a1,b2,c2} = 0");
    r.add("conflict.level4.triplerelation", 1, [g](int N) {
        Expr a = ex(g, "a1"), b = ex(g, "b2"), c = ex(g, "c2"), f = ex(g, "f3");
        Sym2Series l = s2_mul(sc(Rat(3), F(g, "f3", N)), eval_sym2(e_b3(a, b, c), N));
        Sym2Series rr = s2_scale(s2_add(s2_add(s2_mul(F(g, "a1", N), eval_sym2(e_b3(b, c, f), N)),
                                               s2_mul(F(g, "b2", N), eval_sym2(e_b3(a, c, f), N))),
                                        s2_mul(F(g, "c2", N), eval_sym2(e_b3(a, b, f), N))),
                                 CycRat(-1));
        return sym2_eq(l, rr);
    }, "printed with all plus signs and weight 3 on both sides; nonzero");
    struct Row {
        const char* form;
        const char* m;
        std::function<FS(int)> slash_rhs;
        std::function<FS(const Deg1&)> witt_rhs;
    };
    auto AB = [](const Deg1& d, int k) { return (P(d.A, k) + P(d.B, k)) * (P(d.a, k) + P(d.b, k)); };
    auto M1img = [](const Deg1& d, int k) {
        return P(d.A, k) * P(d.a, k) + P(d.B, k) * P(d.c, k) + P(d.C, k) * P(d.b, k);
    };
    std::vector<Row> rows = {
        {"a1", "1", [](int N) { return th("0000^2", N) + th("0001^2", N) + th("0010^2", N) + th("0011^2", N); },
         [AB](const Deg1& d) { return AB(d, 2); }},
        {"b2", "1", [](int N) { return th("0000^4", N) + th("0001^4", N) + th("0010^4", N) + th("0011^4", N); },
         [AB](const Deg1& d) { return AB(d, 4); }},
        {"c2", "1", [](int N) { return th("0000 0001 0010 0011", N); },
         [](const Deg1& d) { return d.mono(2, 2, 0, 2, 2, 0); }},
        {"d3", "1", [](int N) { return th("0000^6", N) + th("0001^6", N) + th("0010^6", N) + th("0011^6", N); },
         [AB](const Deg1& d) { return AB(d, 6); }},
        {"a1", "M1", [](int N) { return th("0000^2", N) + th("1001^2", N) + th("0110^2", N) - th("1111^2", N); },
         [M1img](const Deg1& d) { return M1img(d, 2); }},
        {"b2", "M1", [](int N) { return th("0000^4", N) + th("1001^4", N) + th("0110^4", N) + th("1111^4", N); },
         [M1img](const Deg1& d) { return M1img(d, 4); }},
        {"c2", "M1", [](int N) { return eval(e_theta("0000 1001 0110 1111", CycRat::root_of_unity(-1, 4)), N); },
         [](const Deg1& d) { return zero(d.A.trunc()); }},
        {"d3", "M1", [](int N) { return th("0000^6", N) + th("1001^6", N) + th("0110^6", N) - th("1111^6", N); },
         [M1img](const Deg1& d) { return M1img(d, 6); }},
        {"a1", "M1sq", [g](int N) { return F(g, "a1", N); }, [AB](const Deg1& d) { return AB(d, 2); }},
        {"b2", "M1sq", [g](int N) { return F(g, "b2", N); }, [AB](const Deg1& d) { return AB(d, 4); }},
        {"c2", "M1sq", [g](int N) { return -F(g, "c2", N); },
         [](const Deg1& d) { return -d.mono(2, 2, 0, 2, 2, 0); }},
        {"d3", "M1sq", [g](int N) { return F(g, "d3", N); }, [AB](const Deg1& d) { return AB(d, 6); }},
    };
    for (const auto& row : rows) {
        std::string f = row.form, m = row.m;
        auto srhs = row.slash_rhs;
        auto wrhs = row.witt_rhs;
        auto mat = [m] { return m == "1" ? sp_identity() : (m == "M1" ? sp_M1() : sp_M1sq()); };
        r.add("level4.slash." + f + "." + m, 1, [g, f, mat, srhs](int N) {
            return SidePairs{{FM(g, f, mat(), N), srhs(N)}};
        });
        r.add("level4.witt." + f + "." + m, 1, [g, f, mat, wrhs](int N) {
            Deg1 d(N);
            return SidePairs{{witt(FM(g, f, mat(), N)), wrhs(d)}};
        });
    }
}

// ------------------------------------------------------------------ level 4, Gamma_0^0(2)
void level00(Reg& r) {
    const G g = G::Gamma00_2psi;
    r.add("level4.00.K6_f3g3", 1, [g](int N) {
        return SidePairs{{F(g, "K6", N), sc(Rat(1, 4096), F(g, "f3", N) * F(g, "g3", N))}};
    });
    r.add("level4.00.Y4_a1d3", 1, [g](int N) { return SidePairs{{F(g, "Y4", N), F(g, "a1", N) * F(g, "d3", N)}}; });
    r.add("level4.00.chi10_a1d3f3g3", 1, [g](int N) {
        return SidePairs{{F(g, "chi10", N),
                          sc(Rat(1, 4096), F(g, "a1", N) * F(g, "d3", N) * F(g, "f3", N) * F(g, "g3", N))}};
    });
    r.add("level4.00.f3_formula", 1, [g](int N) {
        FS a = F(g, "a1", N);
        FS rhs = -F(g, "d3", N) - sc(Rat(2), P(a, 3)) + sc(Rat(2, 3), a * F(g, "b2", N)) +
                 sc(Rat(1, 3), a * F(g, "c2", N));
        return SidePairs{{F(g, "f3", N), rhs}};
    });
    r.add("level4.00.g3_formula", 1, [g](int N) {
        FS a = F(g, "a1", N);
        FS rhs = F(g, "d3", N) - sc(Rat(1, 3), a * F(g, "b2", N)) + sc(Rat(1, 3), a * F(g, "c2", N));
        return SidePairs{{F(g, "g3", N), rhs}};
    });
    r.add("level4.00.witt.kerW", 1, [g](int N) { return SidePairs{{witt(F(g, "kerW", N)), zero(N)}}; });
    r.add("level4.00.witt.f3_zero", 1, [g](int N) { return SidePairs{{witt(F(g, "f3", N)), zero(N)}}; });
    r.add("level4.00.witt_F0M1", 1, [g](int N) {
        Deg1 d(N);
        return SidePairs{{witt(FM(g, "F1", sp_M1(), N)), -d.mono(2, 4, 4, 2, 4, 4)}};
    });
    struct D2 {
        const char* name;
        const char* form;
        const char* m;
        Rat c;
        bool full;  // A^2B^4C^4 vs A^2B^2C^2
    };
    std::vector<D2> d2 = {{"f3", "f3", "1", Rat(1, 8), true},
                          {"d3M1", "d3", "M1", Rat(-1, 8), true},
                          {"g3M2", "g3", "M2", Rat(-1, 8), true},
                          {"a1M3", "a1", "M3", Rat(1, 8), false}};
    auto mat00 = [](const std::string& m) {
        if (m == "1") return sp_identity();
        if (m == "M1") return sp_M1();
        if (m == "M2") return sp_M2();
        return sp_M3();
    };
    for (const auto& x : d2) {
        std::string form = x.form, m = x.m;
        Rat c = x.c;
        bool full = x.full;
        r.add(std::string("level4.00.witt_d12sq_") + x.name, 1, [g, form, m, c, full, mat00](int N) {
            Deg1 d(N);
            FS mono = full ? d.mono(2, 4, 4, 2, 4, 4) : d.mono(2, 2, 2, 2, 2, 2);
            return SidePairs{{witt(d12sq(FM(g, form, mat00(m), N))), sc(c, mono)}};
        });
    }
    // Witt conditions on the raw H (no 1/176)
    struct Sh {
        const char* name;
        const char* m;
        bool last;
    };
    std::vector<Sh> sh = {{"shiki1", "1", false}, {"shiki2", "M1", false}, {"shiki3", "M2", false}, {"shiki4", "M3", true}};
    for (const auto& s : sh) {
        std::string m = s.m;
        bool last = s.last;
        r.add(std::string("level4.00.") + s.name, 1, [g, m, last, mat00](int N) {
            Deg1 d(N);
            SymplecticMat M = mat00(m);
            FS lhs = witt(eval_sym2(slash(ex(g, "Hraw"), M), N).h11);
            Expr br = last ? e_b3(ex(g, "b2"), ex(g, "c2"), ex(g, "d3")) : e_b3(ex(g, "a1"), ex(g, "b2"), ex(g, "c2"));
            FS mono = last ? d.mono(2, 2, 2, 2, 2, 2) : d.mono(2, 4, 4, 2, 4, 4);
            return SidePairs{{lhs, -(mono * witt(eval_sym2(slash(br, M), N).h11))}};
        });
    }
    for (const char* third : {"d3", "f3", "g3"}) {
        std::string t = third;
        std::string suffix = t == "d3" ? "" : "." + t;
        r.add("level4.00.fund00" + suffix, 1, [g, t](int N) {
            return sym2_eq(alt_relation(g, {"a1", "b2", "c2", t}, N), Sym2Series::zero(N));
        }, "a1{b2,c2," + t + "} - 2b2{a1,c2," + t + "} + 2c2{a1,b2," + t + "} - 3" + t + "{a1,b2,c2} = 0");
        r.add("conflict.level4.00.fund00" + suffix, 1, [g, t](int N) {
            Expr a = ex(g, "a1"), b = ex(g, "b2"), c = ex(g, "c2"), d = ex(g, t);
            Sym2Series s = s2_add(s2_add(s2_mul(F(g, "a1", N), eval_sym2(e_b3(b, c, d), N)),
                                         s2_mul(F(g, "b2", N), eval_sym2(e_b3(a, c, d), N))),
                                  s2_add(s2_mul(F(g, "c2", N), eval_sym2(e_b3(a, b, d), N)),
                                         s2_mul(F(g, t, N), eval_sym2(e_b3(a, b, c), N))));
            return sym2_eq(s, Sym2Series::zero(N));
        }, "printed with all plus signs; nonzero");
    }
    struct Row {
        const char* form;
        const char* m;
        std::function<FS(int)> slash_rhs;
        std::function<FS(const Deg1&)> witt_rhs;
    };
    auto M1img = [](const Deg1& d, int k) {
        return P(d.A, k) * P(d.a, k) + P(d.B, k) * P(d.c, k) + P(d.C, k) * P(d.b, k);
    };
    auto Aa2 = [](const Deg1& d) { return d.mono(2, 0, 0, 2, 0, 0); };
    auto ABab4 = [](const Deg1& d) { return (P(d.A, 4) + P(d.B, 4)) * (P(d.a, 4) + P(d.b, 4)); };
    auto ACac4 = [](const Deg1& d) { return (P(d.A, 4) + P(d.C, 4)) * (P(d.a, 4) + P(d.c, 4)); };
    auto d3img = [](const Deg1& d) { return d.mono(2, 4, 0, 2, 4, 0); };
    auto b2def = [](int N) { return th("0000^4", N) + th("0001^4", N) + th("0010^4", N) + th("0011^4", N); };
    auto c2def = [](int N) { return th("0000^4", N) + th("0100^4", N) + th("1000^4", N) + th("1100^4", N); };
    auto mixed = [](int N) { return th("0000^4", N) + th("1001^4", N) + th("0110^4", N) + th("1111^4", N); };
    std::vector<Row> rows = {
        {"a1", "1", [](int N) { return th("0000^2", N); }, Aa2},
        {"b2", "1", b2def, ABab4},
        {"c2", "1", c2def, ACac4},
        {"d3", "1", [](int N) { return th("0001^2 0010^2 0011^2", N); }, d3img},
        {"a1", "M1", [g](int N) { return F(g, "a1", N); }, Aa2},
        {"b2", "M1", mixed, [M1img](const Deg1& d) { return M1img(d, 4); }},
        {"c2", "M1", c2def, ACac4},
        {"d3", "M1", [](int N) { return th("0110^2 1001^2 1111^2", N, Rat(-1)); },
         [](const Deg1& d) { return zero(d.A.trunc()); }},
        {"a1", "M2", [g](int N) { return F(g, "a1", N); }, Aa2},
        {"b2", "M2", b2def, ABab4},
        {"c2", "M2", mixed, [M1img](const Deg1& d) { return M1img(d, 4); }},
        {"d3", "M2", [g](int N) { return F(g, "d3", N); }, d3img},
        {"a1", "M3", [](int N) { return th("1111^2", N); }, [](const Deg1& d) { return zero(d.A.trunc()); }},
        {"b2", "M3", mixed, [M1img](const Deg1& d) { return M1img(d, 4); }},
        {"c2", "M3", [](int N) { return th("1111^4", N) - th("1000^4", N) - th("0100^4", N) + th("0011^4", N); },
         [](const Deg1& d) {
             return P(d.B, 4) * P(d.b, 4) - P(d.A, 4) * P(d.c, 4) - P(d.C, 4) * P(d.a, 4);
         }},
        {"d3", "M3", [](int N) { return th("0000^2 0110^2 1001^2", N, Rat(-1)); },
         [](const Deg1& d) { return -d.mono(2, 2, 2, 2, 2, 2); }},
    };
    for (const auto& row : rows) {
        std::string f = row.form, m = row.m;
        auto srhs = row.slash_rhs;
        auto wrhs = row.witt_rhs;
        r.add("level4.00.slash." + f + "." + m, 1, [g, f, m, srhs, mat00](int N) {
            return SidePairs{{FM(g, f, mat00(m), N), srhs(N)}};
        });
        r.add("level4.00.witt." + f + "." + m, 1, [g, f, m, wrhs, mat00](int N) {
            Deg1 d(N);
            return SidePairs{{witt(FM(g, f, mat00(m), N)), wrhs(d)}};
        });
    }
}

std::vector<Identity> build() {
    Reg r;
    level1(r);
    level2(r);
    level3(r);
    level4(r);
    level00(r);
    return r.v;
}

}  // namespace

const std::vector<Identity>& identities() {
    static const std::vector<Identity> v = build();
    return v;
}

const Identity* find_identity(const std::string& name) {
    for (const auto& i : identities())
        if (i.name == name) return &i;
    return nullptr;
}

IdentityResult verify_ring_identity(const std::string& name, int N) {
    const Identity* id = find_identity(name);
    if (!id) throw std::out_of_range("unknown identity '" + name + "'");
    if (N < id->min_n) throw std::invalid_argument(name + " needs N >= " + std::to_string(id->min_n));
    IdentityResult res;
    res.pass = true;
    SidePairs s = id->sides(N);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CompareResult c = fs_equal_upto(s[i].first, s[i].second, N);
        if (!c.equal) {
            res.pass = false;
            res.component = i;
            res.cmp = c;
            return res;
        }
    }
    return res;
}

}  // namespace jf
