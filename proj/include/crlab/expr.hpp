#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "crlab/rational.hpp"

namespace crlab {

// AST for user-supplied functions on H^n in real coordinates x_a, y_a, t.
struct ExprNode {
  enum class Kind { Var, Lit, ImagUnit, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class VarKind { X, Y, T };
  enum class Func { Exp, Log, Sqrt, Abs2 };

  Kind kind;
  VarKind var_kind = VarKind::T;
  int var_index = 0;  // 1-based for X/Y
  Rational lit{0};
  Func func = Func::Exp;
  int ipow = 0;
  std::vector<ExprNode> children;
  std::size_t begin = 0, end = 0;  // byte span in the source text
};

using ExprAST = ExprNode;

// Parses with precedence: ^ (right assoc, integer exponent) > unary minus >
// *,/ > +,-. Throws ParseError with a byte offset on malformed input.
ExprAST parse_expression(const std::string& text);

// Largest x/y index used (0 when none); validates var_index >= 1.
int expr_max_index(const ExprAST& e);

// Slice of the original source covered by a node (for error messages).
std::string expr_source(const std::string& text, const ExprNode& node);

// Generic evaluation. The algebra supplies the scalar type and operations:
//   using Value = ...;
//   Value var(ExprNode::VarKind, int index);
//   Value lit(const Rational&);
//   Value imag_unit();
//   Value add/sub/mul/div(Value, Value);      div checks zero divisor
//   Value neg(Value);
//   Value pow_int(Value, int);
//   Value call(ExprNode::Func, Value, const ExprNode&);  domain-checked
template <class Algebra>
typename Algebra::Value eval_expr(const ExprAST& e, Algebra& alg) {
  using V = typename Algebra::Value;
  switch (e.kind) {
    case ExprNode::Kind::Var: return alg.var(e.var_kind, e.var_index);
    case ExprNode::Kind::Lit: return alg.lit(e.lit);
    case ExprNode::Kind::ImagUnit: return alg.imag_unit();
    case ExprNode::Kind::Neg: return alg.neg(eval_expr(e.children[0], alg));
    case ExprNode::Kind::Add: {
      V a = eval_expr(e.children[0], alg);
      return alg.add(std::move(a), eval_expr(e.children[1], alg));
    }
    case ExprNode::Kind::Sub: {
      V a = eval_expr(e.children[0], alg);
      return alg.sub(std::move(a), eval_expr(e.children[1], alg));
    }
    case ExprNode::Kind::Mul: {
      V a = eval_expr(e.children[0], alg);
      return alg.mul(std::move(a), eval_expr(e.children[1], alg));
    }
    case ExprNode::Kind::Div: {
      V a = eval_expr(e.children[0], alg);
      return alg.div(std::move(a), eval_expr(e.children[1], alg), e);
    }
    case ExprNode::Kind::Pow: return alg.pow_int(eval_expr(e.children[0], alg), e.ipow);
    case ExprNode::Kind::Call: return alg.call(e.func, eval_expr(e.children[0], alg), e);
  }
  throw Error("unreachable expression kind");
}

// Point evaluation over complex doubles.
struct ComplexAlgebra {
  using Value = std::complex<double>;
  const std::string& source;
  std::vector<std::complex<double>> z;  // z_a = x_a + i y_a
  double t;

  Value var(ExprNode::VarKind k, int index) const;
  Value lit(const Rational& r) const { return {rat_double(r), 0.0}; }
  Value imag_unit() const { return {0.0, 1.0}; }
  Value add(Value a, Value b) const { return a + b; }
  Value sub(Value a, Value b) const { return a - b; }
  Value mul(Value a, Value b) const { return a * b; }
  Value div(Value a, Value b, const ExprNode& at) const;
  Value neg(Value a) const { return -a; }
  Value pow_int(Value a, int k) const;
  Value call(ExprNode::Func f, Value a, const ExprNode& at) const;
};

std::complex<double> eval_expr_at(const ExprAST& e, const std::string& source,
                                  const std::vector<std::complex<double>>& z, double t);

}  // namespace crlab
