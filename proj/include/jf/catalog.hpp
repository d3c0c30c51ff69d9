#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jf/operators.hpp"
#include "jf/symplectic.hpp"

namespace jf {

enum class JType { I, II };
std::string jtype_name(JType t);

// candidate xi-image (f0, hhat); a null expression stands for 0
struct XiPair {
    std::string name;
    Expr f0;
    Expr hhat;
    Rat weight;
    GroupId group = GroupId::Gamma2;
    JType jtype = JType::I;
};

enum class Space { AI, JI, JII };
std::string space_name(Space s);
Space parse_space(const std::string& s);

// numerator / denominator as exponent lists, e.g. (t+2t^2)/((1-t)(1-t^2)) -> {1,2,2}, {1,2}
struct HilbertData {
    std::vector<int> num;
    std::vector<int> den;
    std::vector<long long> coeffs(int K) const;  // t^0 .. t^K
    std::string str() const;
};

struct GroupCatalog {
    GroupId group;
    std::vector<std::string> ring_gens;          // generators of A^I (in scope)
    bool ring_complete = true;                   // false when some generators are out of scope
    std::map<std::string, Expr> forms;           // every named form, keys without the group prefix
    std::vector<SymplecticMat> coset_reps;
    std::map<Space, HilbertData> hilbert;
    std::vector<XiPair> gens_I, gens_II;

    const Expr& form(const std::string& name) const;
};

const GroupCatalog& catalog(GroupId g);
std::string group_prefix(GroupId g);  // "level1", "level2", "level3", "level4", "level4.00"

// one-variable theta constants of degree 1: A,B,C (tau11) and a,b,c (tau22)
FourierSeries deg1_theta(int m1, int m2, bool second_var, int N);

// identity registry; an identity may consist of several component equalities
using SidePairs = std::vector<std::pair<FourierSeries, FourierSeries>>;
struct Identity {
    std::string name;
    int min_n = 1;
    std::function<SidePairs(int N)> sides;
    std::string note;
};
const std::vector<Identity>& identities();
const Identity* find_identity(const std::string& name);

struct IdentityResult {
    bool pass = false;
    std::size_t component = 0;  // first failing component
    CompareResult cmp;
};
IdentityResult verify_ring_identity(const std::string& name, int N);

// rank of a list of coefficient vectors
std::size_t rank_over_field(const std::vector<FourierSeries>& rows, int N);
// rank of rows already flattened to a common key set
std::size_t rank_of_matrix(const std::vector<std::vector<CycRat>>& rows);
std::vector<std::vector<CycRat>> flatten_rows(const std::vector<std::vector<const FourierSeries*>>& blocks, int N);

// monomials of weight k in the given generator weights, as exponent vectors
std::vector<std::vector<int>> monomials_of_weight(const std::vector<int>& weights, int k);

}  // namespace jf
