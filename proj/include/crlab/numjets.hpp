#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "crlab/expr.hpp"
#include "crlab/word.hpp"

namespace crlab {

// Shared layout of a truncated multivariate Taylor expansion: the multi-index
// list up to the order cap and the product table. One shape per (nvars,
// order) pair, built once.
class TaylorShape {
public:
  static std::shared_ptr<const TaylorShape> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return idx_.size(); }
  const std::vector<std::vector<std::uint8_t>>& multi_indices() const { return idx_; }
  int degree(std::size_t k) const { return deg_[k]; }
  // index of idx[a] + idx[b], or -1 when the sum exceeds the order cap
  int product_index(std::size_t a, std::size_t b) const { return prod_[a * idx_.size() + b]; }
  // index of the multi-index obtained by raising var v in idx[k] by one
  int raise_index(std::size_t k, int v) const { return raise_[k * nvars_ + v]; }
  std::size_t unit_index(int v) const { return unit_[v]; }

private:
  TaylorShape(int nvars, int order);
  int nvars_, order_;
  std::vector<std::vector<std::uint8_t>> idx_;
  std::vector<int> deg_;
  std::vector<int> prod_;
  std::vector<int> raise_;
  std::vector<std::size_t> unit_;
};

// Truncated Taylor value: coefficients are derivatives divided by the
// multi-index factorial (monomial coefficients of the local expansion).
class TaylorValue {
public:
  TaylorValue() = default;
  explicit TaylorValue(std::shared_ptr<const TaylorShape> shape)
      : shape_(std::move(shape)), c_(shape_->size(), 0.0) {}

  static TaylorValue constant(std::shared_ptr<const TaylorShape> shape, std::complex<double> v);
  static TaylorValue variable(std::shared_ptr<const TaylorShape> shape, int var,
                              std::complex<double> value_at_point);

  const std::shared_ptr<const TaylorShape>& shape() const { return shape_; }
  std::complex<double> value() const { return c_.at(0); }
  const std::vector<std::complex<double>>& coeffs() const { return c_; }
  std::complex<double>& at(std::size_t k) { return c_[k]; }
  const std::complex<double>& at(std::size_t k) const { return c_[k]; }

  // partial derivative of the represented function w.r.t. variable v
  // (exact: the result is one degree lower)
  TaylorValue derivative(int v) const;
  TaylorValue conj() const;  // valid because the variables are real

  TaylorValue operator-() const;
  friend TaylorValue operator+(const TaylorValue& a, const TaylorValue& b);
  friend TaylorValue operator-(const TaylorValue& a, const TaylorValue& b);
  friend TaylorValue operator*(const TaylorValue& a, const TaylorValue& b);
  TaylorValue scaled(std::complex<double> k) const;

  // analytic composition via the truncated series of f around the value
  TaylorValue compose_series(const std::vector<std::complex<double>>& derivs_at_value) const;

private:
  std::shared_ptr<const TaylorShape> shape_;
  std::vector<std::complex<double>> c_;
};

// order-3 Taylor data of a parsed expression at a point (2n+1 real variables)
TaylorValue taylor_eval(const ExprAST& fdef, const std::string& source,
                        const std::vector<std::complex<double>>& z, double t, int order = 3);

// Complex CR jets of a real-coordinates Taylor expansion: all canonical words
// |w| <= order of Z_a = d_{z_a} + i zbar_a d_t, Z_abar, d_t.
struct CRJetNumeric {
  int n = 0;
  std::map<CanonWord, std::complex<double>> jets;
  std::complex<double> f = 0.0;
  std::complex<double> e2f = 0.0;

  std::complex<double> jet(const CanonWord& w) const;
  // max over alpha,beta of |f_{betabar alpha} - canonical + 2i delta f_0|
  double commutator_defect() const;
};

CRJetNumeric cr_jets_from_taylor(const TaylorValue& tv,
                                 const std::vector<std::complex<double>>& z, double t, int n);

// central finite differences (orders 1 and 2) against the Taylor data;
// returns the worst relative deviation
struct FdReport {
  double max_rel_order1 = 0.0;
  double max_rel_order2 = 0.0;
  double h1 = 1e-6;
  double h2 = 1e-4;
};
FdReport fd_crosscheck(const ExprAST& fdef, const std::string& source,
                       const std::vector<std::complex<double>>& z, double t);

// residual of the logarithmic CR Yamabe equation plus tensor norms
struct NumericResidual {
  double residual16 = 0.0;  // Delta_b f - n|df|^2 - n e^{2f} (real part)
  double tensorD = 0.0;     // sqrt(sum |D_{ab}|^2)
  double tensorE = 0.0;
  double tensorG = 0.0;
};
NumericResidual numeric_residual(const CRJetNumeric& jets);

}  // namespace crlab
