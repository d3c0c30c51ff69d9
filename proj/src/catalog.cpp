#include "jf/catalog.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace jf {

std::string jtype_name(JType t) { return t == JType::I ? "I" : "II"; }

std::string space_name(Space s) {
    switch (s) {
        case Space::AI: return "AI";
        case Space::JI: return "JI";
        case Space::JII: return "JII";
    }
    return "?";
}

Space parse_space(const std::string& s) {
    if (s == "AI" || s == "A^I" || s == "A") return Space::AI;
    if (s == "JI" || s == "J^I" || s == "I") return Space::JI;
    if (s == "JII" || s == "J^II" || s == "II") return Space::JII;
    throw std::invalid_argument("unknown space '" + s + "' (expected AI, JI or JII)");
}

std::vector<long long> HilbertData::coeffs(int K) const {
    std::vector<long long> c(static_cast<std::size_t>(K + 1), 0);
    for (int e : num)
        if (e <= K) c[static_cast<std::size_t>(e)] += 1;
    for (int d : den)
        for (int k = d; k <= K; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - d)];
    return c;
}

std::string HilbertData::str() const {
    std::map<int, int> n;
    for (int e : num) ++n[e];
    std::ostringstream o;
    o << "(";
    bool first = true;
    for (auto [e, m] : n) {
        if (!first) o << "+";
        first = false;
        if (m != 1) o << m;
        if (e == 0)
            o << (m == 1 ? "1" : "");
        else
            o << "t^" << e;
    }
    o << ")/(";
    std::map<int, int> d;
    for (int e : den) ++d[e];
    first = true;
    for (auto [e, m] : d) {
        if (!first) o << "*";
        first = false;
        o << "(1-t^" << e << ")";
        if (m != 1) o << "^" << m;
    }
    o << ")";
    return o.str();
}

const Expr& GroupCatalog::form(const std::string& name) const {
    auto it = forms.find(name);
    if (it == forms.end()) throw std::out_of_range("catalog " + group_name(group) + ": no form '" + name + "'");
    return it->second;
}

std::string group_prefix(GroupId g) {
    switch (g) {
        case GroupId::Gamma2: return "level1";
        case GroupId::Gamma0_2: return "level2";
        case GroupId::Gamma0_3psi: return "level3";
        case GroupId::Gamma0_4psi: return "level4";
        case GroupId::Gamma00_2psi: return "level4.00";
    }
    return "?";
}

FourierSeries deg1_theta(int m1, int m2, bool second_var, int N) {
    FourierSeries t = theta_const(ThetaChar::deg1(m1, m2), N);
    t.set_weight(Rat(1, 2));
    return second_var ? swap_diag(t) : t;
}

std::vector<std::vector<int>> monomials_of_weight(const std::vector<int>& weights, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(weights.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
        if (i == weights.size()) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        for (int e = 0; e * weights[i] <= rest; ++e) {
            cur[i] = e;
            rec(i + 1, rest - e * weights[i]);
        }
        cur[i] = 0;
    };
    if (k >= 0) rec(0, k);
    return out;
}

namespace {

// small polynomial DSL over expressions
struct P {
    Expr e;
};
P operator+(const P& a, const P& b) { return {e_add(a.e, b.e)}; }
P operator-(const P& a, const P& b) { return {e_sub(a.e, b.e)}; }
P operator*(const P& a, const P& b) { return {e_mul(a.e, b.e)}; }
P operator*(const Rat& c, const P& a) { return {e_scale(CycRat(c), a.e)}; }
P pw(const P& a, int n) { return {e_pow(a.e, n)}; }
P th(const std::string& spec, const Rat& c = Rat(1)) { return {e_theta(spec, CycRat(c))}; }
P b3(const P& f, const P& g, const P& h) { return {e_b3(f.e, g.e, h.e)}; }
P b4(const P& f, const P& g, const P& h, const P& k) { return {e_b4(f.e, g.e, h.e, k.e)}; }

struct Builder {
    GroupCatalog c;
    P add(const std::string& name, const P& p) {
        Expr e = e_label(name, p.e);
        c.forms[name] = e;
        return {e};
    }
    void gen(JType t, const std::string& name, const P* f0, const P* h) {
        XiPair x;
        x.name = name;
        x.f0 = f0 ? f0->e : nullptr;
        x.hhat = h ? h->e : nullptr;
        x.weight = f0 ? f0->e->weight : h->e->weight;
        x.group = c.group;
        x.jtype = t;
        (t == JType::I ? c.gens_I : c.gens_II).push_back(x);
    }
    void hilbert(std::vector<int> den, std::vector<int> jI, std::vector<int> jII) {
        c.hilbert[Space::AI] = HilbertData{{0}, den};
        c.hilbert[Space::JI] = HilbertData{std::move(jI), den};
        c.hilbert[Space::JII] = HilbertData{std::move(jII), den};
    }
};

P sum_pow(const std::vector<std::string>& chars, int k) {
    P s = th(chars[0] + "^" + std::to_string(k));
    for (std::size_t i = 1; i < chars.size(); ++i) s = s + th(chars[i] + "^" + std::to_string(k));
    return s;
}

std::string all_even(int power) {
    std::string s;
    for (const auto& c : even_chars()) s += c.str() + "^" + std::to_string(power) + " ";
    return s;
}

P phi4_theta() {
    std::vector<std::string> ch;
    for (const auto& c : even_chars()) ch.push_back(c.str());
    return Rat(1, 4) * sum_pow(ch, 8);
}

P chi10_theta() { return th(all_even(2), Rat(1, 4096)); }

P level2_K6() { return th("0100^2 0110^2 1000^2 1001^2 1100^2 1111^2", Rat(1, 4096)); }

// constants of the type-II generators, fixed by the Witt condition (see tests)
const Rat kChi19C1(1, 19 * 2048);
const Rat kChi19C2(1, 19 * 2);
const Rat kLevel3H1(-1, 14 * 32 * 243);
const Rat kLevel3H2(-1, 14 * 6);
const Rat kLevel4H(-3, 32 * 11);
const Rat kLevel00H(1, 176);

GroupCatalog build_gamma2() {
    Builder b;
    b.c.group = GroupId::Gamma2;
    P phi4 = b.add("phi4", phi4_theta());
    P chi10 = b.add("chi10", chi10_theta());
    b.add("chi5", th(all_even(1), Rat(1, 64)));
    b.c.forms["delta"] = e_opaque("delta", Rat(12), [](int N) { return delta_series(N); });
    b.c.ring_gens = {"phi4", "chi10"};
    b.c.ring_complete = false;
    b.c.coset_reps = coset_reps(GroupId::Gamma2);
    b.gen(JType::I, "I.phi4", &phi4, nullptr);
    b.gen(JType::I, "I.chi10", &chi10, nullptr);
    b.hilbert({4, 6, 10, 12}, {4, 6, 10, 12}, {21, 27, 29, 35});
    return b.c;
}

GroupCatalog build_gamma0_2() {
    Builder b;
    b.c.group = GroupId::Gamma0_2;
    P X2 = b.add("X2", Rat(1, 4) * sum_pow({"0000", "0001", "0010", "0011"}, 4));
    P Y4 = b.add("Y4", th("0000^2 0001^2 0010^2 0011^2"));
    P Z4 = b.add("Z4", Rat(1, 16384) * pw(th("0100^4") - th("0110^4"), 2));
    P K6 = b.add("K6", level2_K6());
    P chi19 = b.add("chi19", Rat(1, 512) * b4(X2, Y4, Z4, K6));
    b.add("chi10", chi10_theta());
    P bXYZ = b3(X2, Y4, Z4);
    P h19 = kChi19C1 * (Y4 * Z4 * bXYZ) + kChi19C2 * (K6 * b3(X2, Z4, K6));
    b.add("h19", h19);
    b.c.ring_gens = {"X2", "Y4", "Z4", "K6"};
    b.c.coset_reps = coset_reps(GroupId::Gamma0_2);
    b.gen(JType::I, "I.X2", &X2, nullptr);
    b.gen(JType::I, "I.Y4", &Y4, nullptr);
    b.gen(JType::I, "I.Z4", &Z4, nullptr);
    b.gen(JType::I, "I.K6", &K6, nullptr);
    P h13 = b3(X2, Y4, K6), h15 = b3(Y4, Z4, K6), h17 = K6 * bXYZ;
    b.gen(JType::II, "II.chi19", &chi19, &h19);
    b.gen(JType::II, "II.w13", nullptr, &h13);
    b.gen(JType::II, "II.w15", nullptr, &h15);
    b.gen(JType::II, "II.w17", nullptr, &h17);
    b.hilbert({2, 4, 4, 6}, {2, 4, 4, 6}, {13, 15, 17, 19});
    return b.c;
}

GroupCatalog build_gamma0_3() {
    Builder b;
    b.c.group = GroupId::Gamma0_3psi;
    P a1 = b.add("a1", {e_lattice(gram_A2())});
    P b3f = b.add("b3", {e_lattice(gram_E6())});
    P s3 = b.add("thE6s", {e_lattice(gram_E6s())});
    P e3 = b.add("e3", b3f - Rat(12) * pw(a1, 3) + Rat(27) * s3);
    P f3 = b.add("f3", Rat(-12) * pw(a1, 3) + Rat(3) * b3f + Rat(9) * s3);
    P phi4 = b.add("phi4", phi4_theta());
    P c4 = b.add("c4", Rat(1, 162) * (Rat(-27) * pw(a1, 4) + Rat(12) * (a1 * b3f) + a1 * e3 - phi4));
    b.c.forms["c4_harmonic"] = e_opaque("c4_harmonic", Rat(4), [](int N) { return theta_harmonic_c4(N); });
    b.add("beta3", b3f - Rat(10) * pw(a1, 3) + Rat(9) * s3);
    b.add("delta3", b3f - Rat(9) * s3);
    P X14 = b.add("X14", b4(a1, b3f, c4, e3));
    b.add("chi10", chi10_theta());
    P e3sq = b.add("e3sq", pw(e3, 2));
    P H = kLevel3H1 * (e3 * f3 * b3(a1, b3f, e3)) + kLevel3H2 * (a1 * c4 * b3(a1, b3f, phi4));
    b.add("H14", H);
    b.c.ring_gens = {"a1", "b3", "e3", "c4"};
    b.c.coset_reps = coset_reps(GroupId::Gamma0_3psi);
    b.gen(JType::I, "I.a1", &a1, nullptr);
    b.gen(JType::I, "I.b3", &b3f, nullptr);
    b.gen(JType::I, "I.phi4", &phi4, nullptr);
    b.gen(JType::I, "I.e3sq", &e3sq, nullptr);
    P h9 = b3(a1, c4, e3), h11 = b3(b3f, c4, e3), h12 = c4 * b3(a1, b3f, e3);
    b.gen(JType::II, "II.X14", &X14, &H);
    b.gen(JType::II, "II.w9", nullptr, &h9);
    b.gen(JType::II, "II.w11", nullptr, &h11);
    b.gen(JType::II, "II.w12", nullptr, &h12);
    b.hilbert({1, 3, 3, 4}, {1, 3, 4, 6}, {9, 11, 12, 14});
    return b.c;
}

GroupCatalog build_gamma0_4() {
    Builder b;
    b.c.group = GroupId::Gamma0_4psi;
    const std::vector<std::string> q{"0000", "0001", "0010", "0011"};
    P a1 = b.add("a1", sum_pow(q, 2));
    P b2 = b.add("b2", sum_pow(q, 4));
    P c2 = b.add("c2", th("0000 0001 0010 0011"));
    P d3 = b.add("d3", sum_pow(q, 6));
    P f3 = b.add("f3", d3 + Rat(1, 2) * (a1 * (pw(a1, 2) - Rat(3) * b2 - Rat(6) * c2)));
    P g3 = b.add("g3", d3 + Rat(1, 2) * (a1 * (pw(a1, 2) - Rat(3) * b2 + Rat(6) * c2)));
    b.add("K6", level2_K6());
    b.add("chi10", chi10_theta());
    P F0 = b.add("F0", Rat(-1, 6) * pw(a1, 5) + Rat(5, 6) * (pw(a1, 3) * b2) - a1 * pw(b2, 2) -
                           Rat(1, 3) * (pw(a1, 2) * d3) + Rat(8) * (a1 * pw(c2, 2)) + Rat(2, 3) * (b2 * d3));
    P X11 = b.add("X11", b4(a1, b2, c2, d3));
    b.add("chi11", Rat(-1, 262144 * 3) * X11);
    P c2sq = b.add("c2sq", pw(c2, 2));
    P H = kLevel4H * (F0 * b3(a1, b2, c2));
    b.add("H11", H);
    b.c.ring_gens = {"a1", "b2", "c2", "d3"};
    b.c.coset_reps = coset_reps(GroupId::Gamma0_4psi);
    b.gen(JType::I, "I.a1", &a1, nullptr);
    b.gen(JType::I, "I.b2", &b2, nullptr);
    b.gen(JType::I, "I.d3", &d3, nullptr);
    b.gen(JType::I, "I.c2sq", &c2sq, nullptr);
    P h9 = f3 * b3(a1, b2, c2) - a1 * b3(b2, c2, f3);
    b.add("h9_printed", g3 * b3(a1, b2, c2) - a1 * b3(b2, c2, f3));
    P h7 = b3(a1, c2, g3);
    P h11 = f3 * b3(b2, c2, g3);
    b.gen(JType::II, "II.X11", &X11, &H);
    b.gen(JType::II, "II.w9", nullptr, &h9);
    b.gen(JType::II, "II.w7", nullptr, &h7);
    b.gen(JType::II, "II.w11", nullptr, &h11);
    b.hilbert({1, 2, 2, 3}, {1, 2, 3, 4}, {7, 9, 11, 11});
    return b.c;
}

GroupCatalog build_gamma00_2() {
    Builder b;
    b.c.group = GroupId::Gamma00_2psi;
    P a1 = b.add("a1", th("0000^2"));
    P b2 = b.add("b2", sum_pow({"0000", "0001", "0010", "0011"}, 4));
    P c2 = b.add("c2", sum_pow({"0000", "0100", "1000", "1100"}, 4));
    P d3 = b.add("d3", th("0001^2 0010^2 0011^2"));
    P f3 = b.add("f3", th("0110^2 1001^2 1111^2"));
    P g3 = b.add("g3", th("0100^2 1000^2 1100^2"));
    b.add("K6", level2_K6());
    b.add("Y4", th("0000^2 0001^2 0010^2 0011^2"));
    b.add("chi10", chi10_theta());
    P kerW = b.add("kerW", Rat(6) * pw(a1, 3) - Rat(2) * (a1 * b2) - a1 * c2 + Rat(3) * d3);
    (void)kerW;
    P a1sq = pw(a1, 2);
    P F1 = b.add("F1", Rat(-1, 9) * (a1 * (Rat(-6) * (a1sq * b2) + Rat(6) * (a1sq * c2) + Rat(2) * pw(b2, 2) -
                                            b2 * c2 - pw(c2, 2))));
    P F2 = b.add("F2", Rat(4) * pw(a1, 4) - Rat(8, 9) * pw(b2, 2) + Rat(2) * (a1sq * c2) - Rat(14, 9) * (b2 * c2) +
                           Rat(4, 9) * pw(c2, 2) + Rat(18) * (a1 * d3));
    P F3 = b.add("F3", Rat(-4) * pw(a1, 4) + Rat(2, 9) * pw(b2, 2) - Rat(2) * (a1sq * c2) + Rat(8, 9) * (b2 * c2) +
                           Rat(8, 9) * pw(c2, 2) - Rat(6) * (a1 * d3));
    P Hraw = b.add("Hraw", F1 * b3(a1, b2, c2) + F2 * b3(a1, b2, d3) + F3 * b3(a1, c2, d3) + d3 * b3(b2, c2, d3));
    P X11 = b.add("X11", b4(a1, b2, c2, d3));
    P H = kLevel00H * Hraw;
    b.add("H11", H);
    b.c.ring_gens = {"a1", "b2", "c2", "d3"};
    b.c.coset_reps = coset_reps(GroupId::Gamma00_2psi);
    b.gen(JType::I, "I.a1", &a1, nullptr);
    b.gen(JType::I, "I.b2", &b2, nullptr);
    b.gen(JType::I, "I.c2", &c2, nullptr);
    b.gen(JType::I, "I.d3", &d3, nullptr);
    P h9 = d3 * b3(a1, b2, c2) + (Rat(2) * a1sq - c2) * b3(a1, b2, d3) + (b2 - Rat(2) * a1sq) * b3(a1, c2, d3);
    P h10a = f3 * (b3(a1, b2, d3) - b3(a1, c2, d3));
    P h10b = g3 * (Rat(2) * b3(a1, b2, d3) + b3(a1, c2, d3));
    b.gen(JType::II, "II.X11", &X11, &H);
    b.gen(JType::II, "II.w9", nullptr, &h9);
    b.gen(JType::II, "II.w10a", nullptr, &h10a);
    b.gen(JType::II, "II.w10b", nullptr, &h10b);
    b.hilbert({1, 2, 2, 3}, {1, 2, 2, 3}, {9, 10, 10, 11});
    return b.c;
}

}  // namespace

const GroupCatalog& catalog(GroupId g) {
    static std::mutex mu;
    static std::map<GroupId, GroupCatalog> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    GroupCatalog c;
    switch (g) {
        case GroupId::Gamma2: c = build_gamma2(); break;
        case GroupId::Gamma0_2: c = build_gamma0_2(); break;
        case GroupId::Gamma0_3psi: c = build_gamma0_3(); break;
        case GroupId::Gamma0_4psi: c = build_gamma0_4(); break;
        case GroupId::Gamma00_2psi: c = build_gamma00_2(); break;
    }
    return cache.emplace(g, std::move(c)).first->second;
}

}  // namespace jf
