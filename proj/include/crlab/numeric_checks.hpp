#pragma once

#include <array>
#include <cstdint>

#include "crlab/gaussian.hpp"

namespace crlab {

// Exact verification of the pointwise chain
//   |D_{ab} f_cbar + E_{acbar} f_b|^2
//     = |D_{ab}|^2 |f|^2 + D_a conj(E_a) + E_a conj(D_a) + |E_{abbar}|^2 |f|^2
//     >= |D_a + E_a|^2
// on random rational samples (D symmetric, E hermitian), against a brute
// force expansion of the left side.
struct TensorChainReport {
  int n = 2;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t equality_violations = 0;
  std::size_t inequality_violations = 0;
  bool passed() const { return equality_violations == 0 && inequality_violations == 0; }
};
TensorChainReport tensor_identity_tests(int n, std::uint64_t seed, std::size_t samples);

// Exact lower bounds c1 >= 3(1-m), c4 >= (5-3m)/3, c6 >= (3-2m)/(5-3m) on
// random rational (m, f0, s) with m <= m_max < 1, plus the empirical maximum
// of |c2|+|c3|+|c5| per m-decile (a finiteness observation, no constant is
// asserted).
struct BoundsReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Rational m_max{0};
  std::size_t violations_c1 = 0;
  std::size_t violations_c4 = 0;
  std::size_t violations_c6 = 0;
  std::array<double, 10> max_c235_by_decile{};
  bool passed() const { return violations_c1 + violations_c4 + violations_c6 == 0; }
};
BoundsReport coefficient_bounds_check(std::uint64_t seed, std::size_t samples,
                                      const Rational& m_max);

// Minimum eigenvalue of the 3x3 hermitian coefficient matrix of psi in
// (G, D, E) over sampled (f0, s); the infimum found is reported, positivity
// is asserted per sample.
struct PsdReport {
  Rational m{0};
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double min_eigenvalue = 0.0;
  bool positive = false;
};
PsdReport psd_check_psi(const Rational& m, std::size_t samples, std::uint64_t seed);

}  // namespace crlab
