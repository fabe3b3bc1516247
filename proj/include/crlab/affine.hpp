#pragma once

#include <array>
#include <string>

#include "crlab/parampoly.hpp"
#include "crlab/rational.hpp"

namespace crlab {

// Exponent of a weight factor: an affine function c + sum_p slope[p] * p over
// the formal parameters. Exponent arithmetic is componentwise addition;
// the zero exponent means the factor is absent.
struct AffineExponent {
  Rational constant{0};
  std::array<Rational, kParamCount> slope{Rational(0), Rational(0), Rational(0)};

  AffineExponent() = default;
  explicit AffineExponent(Rational c) : constant(std::move(c)) {}

  static AffineExponent of_param(Param p, Rational coeff = Rational(1)) {
    AffineExponent e;
    e.slope[static_cast<std::size_t>(p)] = std::move(coeff);
    return e;
  }

  bool is_zero() const {
    if (constant != 0) return false;
    for (const auto& s : slope)
      if (s != 0) return false;
    return true;
  }

  bool is_constant() const {
    for (const auto& s : slope)
      if (s != 0) return false;
    return true;
  }

  AffineExponent operator-() const {
    AffineExponent r;
    r.constant = -constant;
    for (std::size_t k = 0; k < kParamCount; ++k) r.slope[k] = -slope[k];
    return r;
  }
  AffineExponent& operator+=(const AffineExponent& o) {
    constant += o.constant;
    for (std::size_t k = 0; k < kParamCount; ++k) slope[k] += o.slope[k];
    return *this;
  }
  AffineExponent& operator-=(const AffineExponent& o) { return *this += -o; }
  friend AffineExponent operator+(AffineExponent a, const AffineExponent& b) { return a += b; }
  friend AffineExponent operator-(AffineExponent a, const AffineExponent& b) { return a -= b; }

  friend bool operator==(const AffineExponent& a, const AffineExponent& b) {
    return a.constant == b.constant && a.slope == b.slope;
  }
  friend bool operator!=(const AffineExponent& a, const AffineExponent& b) { return !(a == b); }
  friend bool operator<(const AffineExponent& a, const AffineExponent& b) {
    int c = cmp(a.constant, b.constant);
    if (c != 0) return c < 0;
    for (std::size_t k = 0; k < kParamCount; ++k) {
      c = cmp(a.slope[k], b.slope[k]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  // Degree-one ParamPoly with the same value (used when an exponent becomes a
  // multiplicative coefficient under differentiation).
  ParamPoly to_parampoly() const {
    ParamPoly p = ParamPoly::constant(GaussianRational(constant));
    for (std::size_t k = 0; k < kParamCount; ++k) {
      if (slope[k] != 0)
        p += ParamPoly::param(static_cast<Param>(k)).scaled(GaussianRational(slope[k]));
    }
    return p;
  }

  AffineExponent substituted(Param p, const Rational& value) const {
    AffineExponent r = *this;
    auto k = static_cast<std::size_t>(p);
    r.constant += r.slope[k] * value;
    r.slope[k] = 0;
    return r;
  }

  Rational eval_exact(const std::array<Rational, kParamCount>& values) const {
    Rational v = constant;
    for (std::size_t k = 0; k < kParamCount; ++k) v += slope[k] * values[k];
    return v;
  }
  double eval_double(const std::array<double, kParamCount>& values) const {
    double v = rat_double(constant);
    for (std::size_t k = 0; k < kParamCount; ++k) v += rat_double(slope[k]) * values[k];
    return v;
  }

  std::string str() const;
};

}  // namespace crlab
