#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "crlab/parampoly.hpp"
#include "crlab/symbols.hpp"

namespace crlab {

// Canonical sparse multivariate polynomial over the symbols of a
// SymbolTable, with ParamPoly coefficients. This is the plain commutative
// layer; the jet algebra builds its richer term type on the same pieces.
class BasicPoly {
public:
  BasicPoly() = default;

  static BasicPoly constant(ParamPoly c);
  static BasicPoly symbol(SymbolId s);

  bool is_zero() const { return terms_.empty(); }

  BasicPoly operator-() const;
  BasicPoly& operator+=(const BasicPoly& o);
  BasicPoly& operator-=(const BasicPoly& o);
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b);

  BasicPoly pow(unsigned k) const;

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }

  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, ParamPoly>& terms() const { return terms_; }

  std::string str(const SymbolTable& table) const;

private:
  void add_term(const Monomial& m, const ParamPoly& c);
  std::map<Monomial, ParamPoly> terms_;
};

// Raw expression tree for poly_normalize: symbols, scalars, parameters,
// +, *, and nonnegative integer powers.
struct PolyExpr {
  enum class Kind { Scalar, Symbol, Parameter, Add, Mul, Pow };
  Kind kind;
  GaussianRational scalar;           // Scalar
  std::string symbol;                // Symbol (resolved against the table)
  Param parameter{Param::M};         // Parameter
  std::vector<PolyExpr> children;    // Add / Mul / Pow (one child)
  unsigned exponent{0};              // Pow

  static PolyExpr lit(GaussianRational v);
  static PolyExpr sym(std::string name);
  static PolyExpr par(Param p);
  static PolyExpr add(std::vector<PolyExpr> xs);
  static PolyExpr mul(std::vector<PolyExpr> xs);
  static PolyExpr pow(PolyExpr base, unsigned k);
};

// Normalizes an expression tree to its canonical BasicPoly. Unknown symbol
// names raise RegistryError.
BasicPoly poly_normalize(const PolyExpr& e, const SymbolTable& table);

// True iff the numerator normalizes to zero. The denominator factors are
// nonzero by construction on the caller's side; they are accepted only to
// make the contract explicit.
bool rational_is_zero(const BasicPoly& numerator, const std::vector<BasicPoly>& denominator_factors);

}  // namespace crlab
