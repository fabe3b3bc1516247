#include "crlab/numeric_checks.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "crlab/error.hpp"
#include "crlab/sampling.hpp"

namespace crlab {

TensorChainReport tensor_identity_tests(int n, std::uint64_t seed, std::size_t samples) {
  if (samples < 1) throw ParamError("samples must be >= 1");
  TensorChainReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.samples = samples;
  Rng rng(seed);

  using Mat = std::vector<std::vector<GaussianRational>>;
  for (std::size_t trial = 0; trial < samples; ++trial) {
    Mat D(n, std::vector<GaussianRational>(n));
    Mat E(n, std::vector<GaussianRational>(n));
    std::vector<GaussianRational> f(n);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        D[a][b] = rng.gaussian(6);
        D[b][a] = D[a][b];  // symmetric
      }
      E[a][a] = GaussianRational(rng.rational(6));  // hermitian: real diagonal
      for (int b = a + 1; b < n; ++b) {
        E[a][b] = rng.gaussian(6);
        E[b][a] = E[a][b].conj();
      }
      f[a] = rng.gaussian(6);
    }
    // occasionally exercise the degenerate slices
    if (trial % 7 == 0)
      for (auto& row : E)
        for (auto& x : row) x = GaussianRational();
    if (trial % 11 == 0) {
      for (auto& row : D)
        for (auto& x : row) x = GaussianRational();
      for (auto& row : E)
        for (auto& x : row) x = GaussianRational();
    }

    // brute-force left side
    Rational lhs(0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          GaussianRational t = D[a][b] * f[c].conj() + E[a][c] * f[b];
          lhs += t.abs2();
        }

    Rational d2(0), e2(0), f2(0);
    for (int a = 0; a < n; ++a) {
      f2 += f[a].abs2();
      for (int b = 0; b < n; ++b) {
        d2 += D[a][b].abs2();
        e2 += E[a][b].abs2();
      }
    }
    std::vector<GaussianRational> Dv(n), Ev(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Dv[a] += D[a][b] * f[b].conj();
        Ev[a] += E[a][b] * f[b];
      }
    GaussianRational cross;
    Rational de2(0);
    for (int a = 0; a < n; ++a) {
      cross += Dv[a] * Ev[a].conj() + Ev[a] * Dv[a].conj();
      de2 += (Dv[a] + Ev[a]).abs2();
    }
    if (cross.im != 0) throw Error("internal: cross term must be real");

    Rational mid = d2 * f2 + cross.re + e2 * f2;
    if (lhs != mid) ++rep.equality_violations;
    if (mid < de2) ++rep.inequality_violations;
  }
  return rep;
}

BoundsReport coefficient_bounds_check(std::uint64_t seed, std::size_t samples,
                                      const Rational& m_max) {
  if (!(m_max < 1)) throw ParamError("coefficient bounds need m_max < 1");
  BoundsReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.m_max = m_max;
  Rng rng(seed);

  for (std::size_t k = 0; k < samples; ++k) {
    Rational m = rng.rational01(100) * m_max;
    Rational f0 = rng.rational(40);
    if (k % 5 == 0) f0 = 0;  // the bound-tight slice
    Rational s = rng.rational_positive(40);
    Rational f02 = f0 * f0;
    Rational h = s * s + f02;
    Rational hmf = h - m * f02;
    Rational K = (5 - 3 * m) * h - m * (1 + m) * f02;

    // c1 >= 3(1-m): 3 hmf / h >= 3(1-m) with h > 0
    if (3 * hmf < 3 * (1 - m) * h) ++rep.violations_c1;
    // c4 >= (5-3m)/3: c4 = ((5-3m) hmf + 4m(1-m) f0^2)/(3 hmf), hmf > 0
    Rational c4num = (5 - 3 * m) * hmf + 4 * m * (1 - m) * f02;
    if (3 * c4num < (5 - 3 * m) * (3 * hmf)) ++rep.violations_c4;
    // c6 >= (3-2m)/(5-3m): c6 = ((3-2m) h + m(5-6m) f0^2)/K, K > 0, 5-3m > 0
    Rational c6num = (3 - 2 * m) * h + m * (5 - 6 * m) * f02;
    if (c6num * (5 - 3 * m) < (3 - 2 * m) * K) ++rep.violations_c6;

    // |c2| + |c3| + |c5| empirical record (double precision is enough here)
    double md = rat_double(m), f0d = rat_double(f0), sd = rat_double(s);
    double hd = rat_double(h), hmfd = rat_double(hmf), Kd = rat_double(K);
    double root = 2.0 * md * f0d * sd / hmfd;
    double c2abs = std::sqrt(1.0 + root * root) / 3.0;
    double c5re = ((4 - 3 * md) * hd * hd - md * (2 + md) * f0d * f0d * hd +
                   2 * md * md * std::pow(f0d, 4)) /
                  (hd * Kd);
    double c5im = -2.0 * md * f0d * sd * hmfd / (hd * Kd);
    double total = 2.0 * c2abs + std::hypot(c5re, c5im);
    double mfrac = rat_double(m / m_max);
    int decile = std::min(9, static_cast<int>(mfrac * 10.0));
    rep.max_c235_by_decile[decile] = std::max(rep.max_c235_by_decile[decile], total);
  }
  return rep;
}

PsdReport psd_check_psi(const Rational& m, std::size_t samples, std::uint64_t seed) {
  if (!(m < 1) || m < 0) throw ParamError("psd check needs m in [0, 1)");
  PsdReport rep;
  rep.m = m;
  rep.samples = samples;
  rep.seed = seed;
  Rng rng(seed);

  double md = rat_double(m);
  rep.positive = true;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    double f0 = rat_double(rng.rational(30));
    double s = rat_double(rng.rational_positive(30));
    double h = s * s + f0 * f0;
    double hmf = h - md * f0 * f0;

    // psi = v^H M v in v = (G, D, E)
    Eigen::Matrix3cd M;
    std::complex<double> i(0, 1);
    std::complex<double> kGD = (hmf + 2.0 * i * md * f0 * s) / h;
    std::complex<double> kGE = (-hmf + 2.0 * i * md * f0 * s) / h;
    std::complex<double> kDE = ((1 - md) * h + md * f0 * f0 + 2.0 * i * md * f0 * s) / h;
    M(0, 0) = 3.0 * hmf / h;
    M(1, 1) = M(2, 2) = ((2 - md) * h + md * f0 * f0) / h;
    // 2 Re(kappa X Ybar) contributes kappa to M(Y, X) and conj to M(X, Y)
    M(1, 0) = kGD;
    M(0, 1) = std::conj(kGD);
    M(2, 0) = kGE;
    M(0, 2) = std::conj(kGE);
    M(2, 1) = kDE;
    M(1, 2) = std::conj(kDE);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(M);
    double lo = solver.eigenvalues().minCoeff();
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, lo);
    if (!(lo > 0)) rep.positive = false;
  }
  return rep;
}

}  // namespace crlab
