#pragma once

#include <complex>
#include <map>
#include <string>

#include "crlab/gaussian.hpp"
#include "crlab/params.hpp"

namespace crlab {

// Polynomial in the formal parameters m, q, theta with GaussianRational
// coefficients. Zero-coefficient entries are never stored, so map equality
// is polynomial equality.
class ParamPoly {
public:
  ParamPoly() = default;

  static ParamPoly constant(GaussianRational c);
  static ParamPoly constant(long c) { return constant(GaussianRational(c)); }
  static ParamPoly param(Param p);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (zero if absent).
  GaussianRational constant_term() const;

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);

  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
  ParamPoly scaled(const GaussianRational& c) const;

  ParamPoly conj() const;  // conjugates coefficients; parameters are real

  // Substitutes an exact rational value for one parameter.
  ParamPoly substituted(Param p, const Rational& value) const;

  GaussianRational eval_exact(const std::array<Rational, kParamCount>& values) const;
  std::complex<double> eval_double(const std::array<double, kParamCount>& values) const;

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }
  friend bool operator<(const ParamPoly& a, const ParamPoly& b) { return a.terms_ < b.terms_; }

  std::size_t term_count() const { return terms_.size(); }
  std::string str() const;

  const std::map<ParamDeg, GaussianRational>& terms() const { return terms_; }

private:
  void add_term(const ParamDeg& d, const GaussianRational& c);
  std::map<ParamDeg, GaussianRational> terms_;
};

}  // namespace crlab
