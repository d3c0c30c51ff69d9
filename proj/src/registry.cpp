#include "jf/registry.hpp"

#include <algorithm>

#include "jf/catalog.hpp"
#include "jf/jacobi.hpp"

namespace jf {

namespace {

std::vector<NamedSeries> build() {
    std::vector<NamedSeries> v;
    for (int i = 0; i < 16; ++i) {
        ThetaChar m = ThetaChar::deg2(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1);
        v.push_back({"theta_" + m.str(), "degree-2 theta constant", [m](int N) { return theta_const(m, N); }});
    }
    for (int i = 0; i < 4; ++i) {
        ThetaChar m = ThetaChar::deg1(i >> 1 & 1, i & 1);
        v.push_back({"theta_" + m.str() + "_deg1", "degree-1 theta constant in tau11",
                     [m](int N) { return theta_const(m, N); }});
    }
    struct L {
        const char* name;
        const GramMatrix& (*gram)();
    };
    for (const L& l : {L{"A2", gram_A2}, L{"E6", gram_E6}, L{"E6s", gram_E6s}, L{"E8", gram_E8}}) {
        auto gram = l.gram;
        std::string n = l.name;
        v.push_back({"theta_" + n + "_deg1", "lattice theta, one variable", [gram](int N) {
                         return theta_lattice(gram(), 1, 1, N);
                     }});
        v.push_back({"theta_" + n + "_deg2", "lattice theta, degree 2", [gram](int N) {
                         return theta_lattice(gram(), 2, 1, N);
                     }});
    }
    v.push_back({"delta", "Ramanujan Delta in tau11", [](int N) { return delta_series(N); }});
    v.push_back({"c4_harmonic", "harmonic theta of S4", [](int N) { return theta_harmonic_c4(N); }});
    v.push_back({"theta_matrix_det", "det of the second-kind theta matrix", [](int N) { return theta_matrix_det(N); }});
    for (GroupId g : all_groups()) {
        const GroupCatalog& c = catalog(g);
        for (const auto& [name, e] : c.forms) {
            if (e->sym2) continue;
            Expr ex = e;
            v.push_back({group_prefix(g) + "." + name, "catalog form, " + group_name(g), [ex](int N) {
                             FourierSeries f = eval(ex, N);
                             f.set_weight(ex->weight);
                             return f;
                         }});
        }
    }
    std::sort(v.begin(), v.end(), [](const NamedSeries& a, const NamedSeries& b) { return a.name < b.name; });
    return v;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

const std::vector<NamedSeries>& series_registry() {
    static const std::vector<NamedSeries> v = build();
    return v;
}

const NamedSeries* find_series(const std::string& name) {
    for (const auto& s : series_registry())
        if (s.name == name) return &s;
    return nullptr;
}

std::vector<std::string> suggest_series(const std::string& name, std::size_t max) {
    std::vector<std::pair<std::size_t, std::string>> d;
    for (const auto& s : series_registry()) {
        std::size_t e = edit_distance(name, s.name);
        // substring hits rank first
        if (s.name.find(name) != std::string::npos) e = 0;
        d.emplace_back(e, s.name);
    }
    std::stable_sort(d.begin(), d.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < d.size() && out.size() < max; ++i) out.push_back(d[i].second);
    return out;
}

bool glob_match(const std::string& p, const std::string& t) {
    std::size_t i = 0, j = 0, star = std::string::npos, mark = 0;
    while (j < t.size()) {
        if (i < p.size() && (p[i] == '?' || p[i] == t[j])) {
            ++i;
            ++j;
        } else if (i < p.size() && p[i] == '*') {
            star = i++;
            mark = j;
        } else if (star != std::string::npos) {
            i = star + 1;
            j = ++mark;
        } else {
            return false;
        }
    }
    while (i < p.size() && p[i] == '*') ++i;
    return i == p.size();
}

}  // namespace jf
