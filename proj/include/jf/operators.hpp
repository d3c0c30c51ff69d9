#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "jf/series.hpp"
#include "jf/symplectic.hpp"
#include "jf/theta.hpp"

namespace jf {

// series with a weight tag
struct WeightedForm {
    FourierSeries series;
    Rat weight;
    std::string label;
};
WeightedForm weighted(const FourierSeries& f);  // throws if f carries no weight

// brackets; components of Sym2Series are the u1^2, u1u2, u2^2 coefficients
Sym2Series bracket2(const WeightedForm& f, const WeightedForm& g);
Sym2Series bracket3(const WeightedForm& f1, const WeightedForm& f2, const WeightedForm& f3);
FourierSeries bracket4(const WeightedForm& f1, const WeightedForm& f2, const WeightedForm& f3, const WeightedForm& f4);
// (k/2) d12^2 f - d11 d22 f
FourierSeries d2_op(const WeightedForm& f);

// ------------------------------------------------------------ expression trees

enum class NodeKind { Const, Theta, Lattice, Opaque, Sum, Prod, Bracket2, Bracket3, Bracket4 };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Const;
    std::uint64_t id = 0;
    Rat weight;
    bool sym2 = false;
    CycRat coeff{1};                 // Const value, or scalar factor of a leaf
    std::vector<ThetaChar> chars;    // Theta
    GramMatrix lattice;              // Lattice: coeff * theta_S((tau + T)/scale)
    int scale = 1;
    int s11 = 0, s12 = 0, s22 = 0;
    std::function<FourierSeries(int)> opaque;
    std::string label;               // set for named forms
    std::vector<Expr> kids;
    std::vector<CycRat> coeffs;      // Sum
};

Expr e_const(const CycRat& c);
Expr e_theta(std::vector<ThetaChar> chars, const CycRat& coeff = CycRat(1));
Expr e_theta(const std::string& chars_spec, const CycRat& coeff = CycRat(1));  // "0000^4 0110^2"
Expr e_lattice(const GramMatrix& S, const CycRat& coeff = CycRat(1), int scale = 1, int s11 = 0, int s12 = 0,
               int s22 = 0);
Expr e_opaque(const std::string& name, const Rat& weight, std::function<FourierSeries(int)> fn);
Expr e_sum(const std::vector<std::pair<CycRat, Expr>>& parts);
Expr e_add(const Expr& a, const Expr& b);
Expr e_sub(const Expr& a, const Expr& b);
Expr e_scale(const CycRat& c, const Expr& a);
Expr e_mul(const Expr& a, const Expr& b);
Expr e_prod(const std::vector<Expr>& fs);
Expr e_pow(const Expr& a, int n);
Expr e_b2(const Expr& f, const Expr& g);
Expr e_b3(const Expr& f, const Expr& g, const Expr& h);
Expr e_b4(const Expr& f, const Expr& g, const Expr& h, const Expr& k);
Expr e_label(const std::string& name, const Expr& a);

// structural slash; throws std::invalid_argument on a non-slashable leaf
Expr slash(const Expr& e, const SymplecticMat& M);

FourierSeries eval(const Expr& e, int N);
Sym2Series eval_sym2(const Expr& e, int N);
void clear_eval_cache();

// numeric value with first derivatives; derivatives of a 4-bracket are not provided
Jet eval_jet(const Expr& e, const CMat2& tau);
// several expressions at one point, sharing leaf evaluations
std::vector<Jet> eval_jets(const std::vector<Expr>& es, const CMat2& tau);

// "(b3 (gen a1) (gen b3) (gen e3))"
std::string to_sexpr(const Expr& e);

}  // namespace jf
