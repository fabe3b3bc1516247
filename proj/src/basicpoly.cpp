#include "crlab/basicpoly.hpp"

namespace crlab {

void BasicPoly::add_term(const Monomial& m, const ParamPoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BasicPoly BasicPoly::constant(ParamPoly c) {
  BasicPoly p;
  p.add_term(Monomial{}, c);
  return p;
}

BasicPoly BasicPoly::symbol(SymbolId s) {
  BasicPoly p;
  p.add_term(Monomial{{s, 1}}, ParamPoly::constant(1));
  return p;
}

BasicPoly BasicPoly::operator-() const {
  BasicPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

BasicPoly& BasicPoly::operator+=(const BasicPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

BasicPoly& BasicPoly::operator-=(const BasicPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
  BasicPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_mul(ma, mb), ca * cb);
  return r;
}

BasicPoly BasicPoly::pow(unsigned k) const {
  BasicPoly r = constant(ParamPoly::constant(1));
  for (unsigned j = 0; j < k; ++j) r = r * *this;
  return r;
}

std::string BasicPoly::str(const SymbolTable& table) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.str() + ")";
    for (const auto& [sym, e] : m) {
      s += "*" + table.name(sym);
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

PolyExpr PolyExpr::lit(GaussianRational v) {
  PolyExpr e;
  e.kind = Kind::Scalar;
  e.scalar = std::move(v);
  return e;
}
PolyExpr PolyExpr::sym(std::string name) {
  PolyExpr e;
  e.kind = Kind::Symbol;
  e.symbol = std::move(name);
  return e;
}
PolyExpr PolyExpr::par(Param p) {
  PolyExpr e;
  e.kind = Kind::Parameter;
  e.parameter = p;
  return e;
}
PolyExpr PolyExpr::add(std::vector<PolyExpr> xs) {
  PolyExpr e;
  e.kind = Kind::Add;
  e.children = std::move(xs);
  return e;
}
PolyExpr PolyExpr::mul(std::vector<PolyExpr> xs) {
  PolyExpr e;
  e.kind = Kind::Mul;
  e.children = std::move(xs);
  return e;
}
PolyExpr PolyExpr::pow(PolyExpr base, unsigned k) {
  PolyExpr e;
  e.kind = Kind::Pow;
  e.children.push_back(std::move(base));
  e.exponent = k;
  return e;
}

BasicPoly poly_normalize(const PolyExpr& e, const SymbolTable& table) {
  switch (e.kind) {
    case PolyExpr::Kind::Scalar:
      return BasicPoly::constant(ParamPoly::constant(e.scalar));
    case PolyExpr::Kind::Symbol:
      return BasicPoly::symbol(table.lookup(e.symbol));
    case PolyExpr::Kind::Parameter:
      return BasicPoly::constant(ParamPoly::param(e.parameter));
    case PolyExpr::Kind::Add: {
      BasicPoly r;
      for (const auto& c : e.children) r += poly_normalize(c, table);
      return r;
    }
    case PolyExpr::Kind::Mul: {
      BasicPoly r = BasicPoly::constant(ParamPoly::constant(1));
      for (const auto& c : e.children) r = r * poly_normalize(c, table);
      return r;
    }
    case PolyExpr::Kind::Pow:
      return poly_normalize(e.children.at(0), table).pow(e.exponent);
  }
  throw Error("unreachable poly expression kind");
}

bool rational_is_zero(const BasicPoly& numerator, const std::vector<BasicPoly>&) {
  return numerator.is_zero();
}

}  // namespace crlab
