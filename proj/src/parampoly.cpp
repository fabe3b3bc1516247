#include "crlab/parampoly.hpp"

#include <cmath>

namespace crlab {

void ParamPoly::add_term(const ParamDeg& d, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamPoly ParamPoly::constant(GaussianRational c) {
  ParamPoly p;
  p.add_term(ParamDeg{0, 0, 0}, c);
  return p;
}

ParamPoly ParamPoly::param(Param pr) {
  ParamPoly p;
  ParamDeg d{0, 0, 0};
  d[static_cast<std::size_t>(pr)] = 1;
  p.add_term(d, GaussianRational(1));
  return p;
}

bool ParamPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == ParamDeg{0, 0, 0};
}

GaussianRational ParamPoly::constant_term() const {
  auto it = terms_.find(ParamDeg{0, 0, 0});
  return it == terms_.end() ? GaussianRational() : it->second;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r;
  for (const auto& [d, c] : terms_) r.terms_.emplace(d, -c);
  return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [da, ca] : a.terms_) {
    for (const auto& [db, cb] : b.terms_) {
      ParamDeg d;
      for (std::size_t k = 0; k < kParamCount; ++k)
        d[k] = static_cast<std::uint16_t>(da[k] + db[k]);
      r.add_term(d, ca * cb);
    }
  }
  return r;
}

ParamPoly ParamPoly::scaled(const GaussianRational& c) const {
  ParamPoly r;
  if (c.is_zero()) return r;
  for (const auto& [d, v] : terms_) r.terms_.emplace(d, v * c);
  return r;
}

ParamPoly ParamPoly::conj() const {
  ParamPoly r;
  for (const auto& [d, v] : terms_) r.terms_.emplace(d, v.conj());
  return r;
}

ParamPoly ParamPoly::substituted(Param p, const Rational& value) const {
  auto k = static_cast<std::size_t>(p);
  ParamPoly r;
  for (const auto& [d, c] : terms_) {
    Rational f(1);
    for (std::uint16_t e = 0; e < d[k]; ++e) f *= value;
    ParamDeg nd = d;
    nd[k] = 0;
    r.add_term(nd, c * GaussianRational(f));
  }
  return r;
}

GaussianRational ParamPoly::eval_exact(const std::array<Rational, kParamCount>& values) const {
  GaussianRational sum;
  for (const auto& [d, c] : terms_) {
    Rational f(1);
    for (std::size_t k = 0; k < kParamCount; ++k)
      for (std::uint16_t e = 0; e < d[k]; ++e) f *= values[k];
    sum += c * GaussianRational(f);
  }
  return sum;
}

std::complex<double> ParamPoly::eval_double(const std::array<double, kParamCount>& values) const {
  std::complex<double> sum = 0.0;
  for (const auto& [d, c] : terms_) {
    double f = 1.0;
    for (std::size_t k = 0; k < kParamCount; ++k) f *= std::pow(values[k], d[k]);
    sum += c.to_complex() * f;
  }
  return sum;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < kParamCount; ++k) {
      if (d[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += param_name(static_cast<Param>(k));
      if (d[k] > 1) mono += "^" + std::to_string(d[k]);
    }
    if (mono.empty()) {
      s += c.str();
    } else if (c.is_one()) {
      s += mono;
    } else {
      s += "(" + c.str() + ")*" + mono;
    }
  }
  return s;
}

}  // namespace crlab
