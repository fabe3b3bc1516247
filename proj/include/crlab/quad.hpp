#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crlab/closedform.hpp"
#include "crlab/rational.hpp"

namespace crlab {

// Koranyi gauge rho = (|z|^4 + t^2)^{1/4} and its ball.
double gauge_rho(const std::vector<std::complex<double>>& z, double t);

// |z|^4 + t^2 exactly (rho^4); used by the exact homogeneity tests.
Rational gauge_rho4_exact(const HPoint& p);
HPoint dilate(const HPoint& p, const Rational& s);

struct KoranyiBall {
  double R;
  bool contains(const std::vector<std::complex<double>>& z, double t) const {
    double z2 = 0;
    for (const auto& c : z) z2 += std::norm(c);
    return z2 * z2 + t * t < R * R * R * R;
  }
};

// analytic vol(B_1) for the dimensions used in tests
double unit_ball_volume(int n);

struct QuadratureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  double exclusion = 0.0;  // inner gauge radius removed (0 = none)
};

using Integrand = std::function<double(const std::vector<std::complex<double>>&, double)>;

// Plain Monte Carlo over B_R via rejection from the bounding box
// |x|,|y| <= R, |t| <= R^2. Deterministic per (seed, workers).
QuadratureEstimate integrate(const Integrand& f, int n, double R, std::size_t samples,
                             std::uint64_t seed, int workers = 1, double exclusion = 0.0);

// Stratified by near-dyadic gauge shells (for integrands peaked at the
// origin). splits_per_octave subdivides each factor-of-two shell.
QuadratureEstimate integrate_stratified(const Integrand& f, int n, double R,
                                        std::size_t samples, std::uint64_t seed,
                                        int workers = 1, int splits_per_octave = 3,
                                        double exclusion = 0.0);

struct GrowthPoint {
  double R = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
};

struct GrowthSeries {
  std::string label;
  std::vector<GrowthPoint> points;
  double slope = 0.0;
  double bound = 0.0;
  double tolerance = 0.3;
  bool within_bound = false;
  std::size_t samples_per_radius = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

// least-squares slope of log(estimate) against log(R)
double fit_log_slope(const std::vector<GrowthPoint>& pts);

// default log-spaced grid 2^0..2^6
std::vector<double> default_radius_grid();

// integral growth of e^{qf} |df|^r over B_R for the extremal solution;
// validates Lemma 5's ranges: r in [0,2], q in [0, n+2] if r = 0,
// q in [0, n+2-r) otherwise. Bound: 2n+2-q-r.
GrowthSeries growth_exponent(const ClosedFormSolution& sol, const Rational& q, const Rational& r,
                             const std::vector<double>& grid, std::size_t samples,
                             std::uint64_t seed, int workers = 1, double tolerance = 0.3);

// integral growth of u^q over B_R; chooses the hypothesis range:
// q in ((2n+1)/n, (2n+2)/n] -> bound 2; q in [0, (n+2)/n] -> bound 2n+2-nq.
GrowthSeries th2_check(const ClosedFormSolution& sol, const Rational& q,
                       const std::vector<double>& grid, std::size_t samples,
                       std::uint64_t seed, int workers = 1, double tolerance = 0.3);

void write_series_csv(const std::string& path, const GrowthSeries& series);

}  // namespace crlab
