#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jf/catalog.hpp"

namespace jf {

struct WittResult {
    bool pass = false;
    FourierSeries residual;  // W(hhat^M_11 + (1/k) d12(f0|M))
    std::string describe() const;
};

// f0 part and u1u2 part evaluated after slashing by M
WittResult witt_condition(const XiPair& p, const SymplecticMat& M, int N);

struct GeneratorReport {
    bool pass = true;
    std::vector<std::pair<std::string, WittResult>> per_rep;
};
GeneratorReport verify_jacobi_generator(GroupId g, JType t, const std::string& gen_name, int N);
const XiPair& find_generator(GroupId g, JType t, const std::string& gen_name);

// f.(g, h) = (f g, f h + {f, g}/(k2 (k1 + k2)))
XiPair module_action(const Expr& f, const XiPair& p);

struct XiValue {
    FourierSeries f0;
    Sym2Series hhat;
};
XiValue eval_pair(const XiPair& p, int N);

enum class RankStatus { Confirmed, Mismatch, Inconclusive, Skipped };
std::string rank_status_name(RankStatus s);

struct WeightRow {
    int k = 0;
    long long predicted = 0;
    long long count = 0;      // number of spanning elements built
    long long rank = 0;
    int n_used = 0;
    RankStatus status = RankStatus::Confirmed;
};
struct ModuleReport {
    GroupId group;
    Space space;
    std::vector<WeightRow> rows;
    bool ok() const;
};
// rank of {monomial * generator} against the Hilbert coefficients, escalating N on rank deficit
ModuleReport verify_module_structure(GroupId g, Space s, int K, int N, int ceiling);

// 4 x 4 theta matrix of second-kind thetas and its determinant
std::vector<std::vector<FourierSeries>> theta_matrix(int N);
FourierSeries theta_matrix_det(int N);

}  // namespace jf
