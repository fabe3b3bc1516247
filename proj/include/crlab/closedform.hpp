#pragma once

#include <map>
#include <string>
#include <vector>

#include "crlab/gaussian.hpp"
#include "crlab/word.hpp"

namespace crlab {

// Exact point of H^n = C^n x R.
struct HPoint {
  std::vector<GaussianRational> z;
  Rational t{0};
};

// Pairing convention for <mu, z> in the denominator of the extremal family;
// the paper does not define it, so both are implemented and the residual
// oracle picks the one that solves the equation.
enum class Pairing { MuDotZ, MuDotZBar };

const char* pairing_name(Pairing p);
Pairing pairing_from_name(const std::string& name);

// Member of the extremal family: u = N^{n/2} / |t + i|z|^2 + <mu,z> + lambda|^n
// with N = 4 Im(lambda) - |mu|^2 > 0.
class ClosedFormSolution {
public:
  static ClosedFormSolution make(int n, std::vector<GaussianRational> mu,
                                 GaussianRational lambda, Pairing pairing);

  int n() const { return n_; }
  const std::vector<GaussianRational>& mu() const { return mu_; }
  const GaussianRational& lambda() const { return lambda_; }
  Pairing pairing() const { return pairing_; }
  const Rational& N() const { return N_; }

  // w(p) = t + i|z|^2 + <mu,z> + lambda, exact.
  GaussianRational eval_w(const HPoint& p) const;
  // u^2 = N^n / |w|^{2n}, exact positive rational.
  Rational eval_u_squared(const HPoint& p) const;
  double eval_u(const HPoint& p) const;
  // e^{2f} = N / (4 |w|^2), exact positive rational.
  Rational eval_e2f(const HPoint& p) const;

  // plain-text parameter record (CLI config format)
  std::string to_config() const;
  static ClosedFormSolution from_config(const std::string& text);

private:
  ClosedFormSolution() = default;
  int n_ = 1;
  std::vector<GaussianRational> mu_;
  GaussianRational lambda_;
  Pairing pairing_ = Pairing::MuDotZ;
  Rational N_;
};

// ---------------------------------------------------------------------------
// Exact jets of f = (1/n) ln u - ln 2 as rational functions
// ---------------------------------------------------------------------------

// Sparse polynomial in (z_1..z_n, zb_1..zb_n, t) over Q(i). The zb variables
// are formally independent (Wirtinger calculus).
class CoordPoly {
public:
  using Deg = std::vector<std::uint8_t>;  // length 2n+1

  CoordPoly() = default;
  explicit CoordPoly(std::size_t nvars) : nvars_(nvars) {}

  static CoordPoly constant(std::size_t nvars, GaussianRational c);
  static CoordPoly variable(std::size_t nvars, std::size_t idx);

  bool is_zero() const { return terms_.empty(); }
  std::size_t nvars() const { return nvars_; }

  CoordPoly operator-() const;
  CoordPoly& operator+=(const CoordPoly& o);
  friend CoordPoly operator+(CoordPoly a, const CoordPoly& b) { return a += b; }
  friend CoordPoly operator*(const CoordPoly& a, const CoordPoly& b);
  CoordPoly scaled(const GaussianRational& c) const;

  CoordPoly derivative(std::size_t var) const;
  GaussianRational eval(const std::vector<GaussianRational>& vals) const;

  void add_term(const Deg& d, const GaussianRational& c);
  const std::map<Deg, GaussianRational>& terms() const { return terms_; }

private:
  std::size_t nvars_ = 0;
  std::map<Deg, GaussianRational> terms_;
};

// Sum of P_{ab} * w^{-a} * wbar^{-b}; closed under the left-invariant fields.
class WExpr {
public:
  WExpr() = default;

  static WExpr from_poly(CoordPoly p);
  static WExpr w_inverse_pair(std::size_t nvars, int a, int b, GaussianRational coeff);

  WExpr operator-() const;
  WExpr& operator+=(const WExpr& o);
  friend WExpr operator+(WExpr a, const WExpr& b) { return a += b; }
  friend WExpr operator-(WExpr a, const WExpr& b) { return a += -b; }
  friend WExpr operator*(const WExpr& a, const WExpr& b);
  WExpr scaled(const GaussianRational& c) const;

  void add(int a, int b, const CoordPoly& p);
  const std::map<std::pair<int, int>, CoordPoly>& parts() const { return parts_; }

private:
  std::map<std::pair<int, int>, CoordPoly> parts_;
};

// Exact evaluator of all canonical CR jets |word| <= 3 of f for one solution.
class ExactJetEvaluator {
public:
  explicit ExactJetEvaluator(const ClosedFormSolution& sol, int max_order = 3);

  struct JetValues {
    std::map<CanonWord, GaussianRational> jets;
    Rational e2f;
    GaussianRational w;
  };

  JetValues eval(const HPoint& p) const;
  const ClosedFormSolution& solution() const { return sol_; }

  // Z_d applied to a represented function (exposed for cross-checks).
  WExpr apply_z(const WExpr& e, Letter d) const;

private:
  CoordPoly z_poly(std::size_t alpha_1based) const;
  CoordPoly zb_poly(std::size_t alpha_1based) const;
  GaussianRational eval_wexpr(const WExpr& e, const std::vector<GaussianRational>& vals,
                              const GaussianRational& wval) const;

  ClosedFormSolution sol_;
  std::size_t nv_;
  CoordPoly w_poly_, wbar_poly_;
  std::vector<CoordPoly> zw_;     // Z_d(w) per letter (holo 1..n, anti 1..n, t)
  std::vector<CoordPoly> zwbar_;  // Z_d(wbar)
  std::vector<std::pair<CanonWord, WExpr>> jets_;
  WExpr e2f_;
};

// Residual of the logarithmic equation: Delta_b f - n|df|^2 - n e^{2f};
// exactly zero on the family under the correct pairing.
GaussianRational residual_eq16(const ExactJetEvaluator::JetValues& v, int n);
// Same with the e^{2f} coefficient bumped to n+1 (sanity mutation).
GaussianRational residual_eq16_mutated(const ExactJetEvaluator::JetValues& v, int n);

struct TensorValues {
  std::vector<std::vector<GaussianRational>> D;  // D_{alpha beta}
  std::vector<std::vector<GaussianRational>> E;  // E_{alpha betabar}
  std::vector<GaussianRational> G;               // G_alpha
  bool all_zero() const;
};
TensorValues tensors_at(const ExactJetEvaluator::JetValues& v, int n);

// Empirically determines the pairing convention by requiring an exactly zero
// residual on random valid solutions with mu != 0.
struct ConventionFinding {
  Pairing chosen = Pairing::MuDotZ;
  bool mu_dot_z_zero = false;
  bool mu_dot_zbar_zero = false;
  std::size_t trials = 0;
};
ConventionFinding determine_pairing(int n, std::uint64_t seed, std::size_t trials);

// sup of u * rho^{n-2} over sampled dyadic Koranyi shells up to rho = 2^10.
struct DecayReport {
  double sup_constant = 0.0;
  double sup_rho = 0.0;  // gauge radius where the sup was attained
  std::size_t samples = 0;
};
DecayReport pointwise_decay_check(const ClosedFormSolution& sol, std::size_t samples,
                                  std::uint64_t seed);

// Fast double-precision evaluation used by the quadrature module.
struct FastSolution {
  int n;
  std::vector<std::complex<double>> mu;
  std::complex<double> lambda;
  double N;
  Pairing pairing;

  explicit FastSolution(const ClosedFormSolution& sol);

  std::complex<double> w(const std::vector<std::complex<double>>& z, double t) const;
  double u(const std::vector<std::complex<double>>& z, double t) const;
  double e2f(const std::vector<std::complex<double>>& z, double t) const;
  // |df|^2
  double grad2(const std::vector<std::complex<double>>& z, double t) const;
};

}  // namespace crlab
