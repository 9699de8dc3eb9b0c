#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "lrho/errors.hpp"

namespace lrho {

using Cplx = std::complex<double>;

// The four Wirtinger symbols. Conjugation swaps Z<->Zb and W<->Wb.
enum class Var { Z, Zb, W, Wb };

inline Var conj_var(Var v) {
    switch (v) {
        case Var::Z: return Var::Zb;
        case Var::Zb: return Var::Z;
        case Var::W: return Var::Wb;
        case Var::Wb: return Var::W;
    }
    return Var::Z;
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree for polynomials in z, zb, w, wb with complex
// coefficients. conj(e) is kept as a node; differentiation pushes it through.
struct Expr {
    enum class Kind { Const, Variable, Sum, Prod, Pow, Conj };

    Kind kind{Kind::Const};
    Cplx value{0.0, 0.0};        // Const
    Var var{Var::Z};             // Variable
    std::vector<ExprPtr> kids;   // Sum, Prod
    ExprPtr kid;                 // Pow, Conj
    unsigned exponent{0};        // Pow
};

ExprPtr make_const(Cplx c);
ExprPtr make_var(Var v);
ExprPtr make_sum(std::vector<ExprPtr> kids);
ExprPtr make_prod(std::vector<ExprPtr> kids);
ExprPtr make_pow(ExprPtr base, unsigned n);
ExprPtr make_conj(ExprPtr e);
ExprPtr make_neg(ExprPtr e);

Cplx eval_expr(const ExprPtr& e, Cplx z, Cplx w);

// Symbolic partial derivative w.r.t. one Wirtinger symbol, the four treated
// as independent; conj obeys d/dv conj(e) = conj(d/d conj_var(v) e).
ExprPtr diff_expr(const ExprPtr& e, Var v);

// Structural substitution z <-> zb (first complex coordinate conjugated),
// i.e. e(z, zb, w, wb) |-> e(zb, z, w, wb).
ExprPtr swap_z_zb(const ExprPtr& e);

// True when the tree mentions neither zb nor wb and contains no conj node.
bool expr_is_analytic(const ExprPtr& e);

std::string expr_to_string(const ExprPtr& e);

// Flat postfix program for fast repeated evaluation of one tree.
class CompiledExpr {
  public:
    CompiledExpr() = default;
    explicit CompiledExpr(const ExprPtr& e);
    Cplx eval(Cplx z, Cplx w) const;
    bool empty() const { return ops_.empty(); }

  private:
    enum class Op : unsigned char { Const, Z, Zb, W, Wb, Add, Mul, Pow, Conj };
    struct Instr {
        Op op;
        unsigned arg{0};
        Cplx c{0.0, 0.0};
    };
    void compile(const ExprPtr& e);
    std::vector<Instr> ops_;
    unsigned stack_need_{0};
};

// expr := ["-"] term (("+"|"-") term)*
// term := factor ("*" factor)*
// factor := atom ("^" uint)?
// atom := "z" | "zb" | "w" | "wb" | "i" | number | "(" expr ")"
//       | "conj(" expr ")" | "abs2(" expr ")"
// abs2(e) is sugar for e * conj(e). Whitespace is insignificant.
ExprPtr parse_expr(const std::string& src);

}  // namespace lrho
