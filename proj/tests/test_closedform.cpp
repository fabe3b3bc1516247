#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crlab/closedform.hpp"
#include "crlab/sampling.hpp"

using namespace crlab;

namespace {

ClosedFormSolution basic(int n) {
  return ClosedFormSolution::make(n, std::vector<GaussianRational>(n, GaussianRational()),
                                  GaussianRational::i(), Pairing::MuDotZ);
}

HPoint origin(int n) {
  HPoint p;
  p.z.assign(n, GaussianRational());
  p.t = 0;
  return p;
}

ClosedFormSolution random_valid(int n, Rng& rng, Pairing pairing) {
  std::vector<GaussianRational> mu;
  Rational mu2(0);
  for (int a = 0; a < n; ++a) {
    mu.push_back(rng.gaussian(3));
    mu2 += mu.back().abs2();
  }
  GaussianRational lambda(rng.rational(3), mu2 / 4 + rng.rational_positive(5));
  return ClosedFormSolution::make(n, std::move(mu), lambda, pairing);
}

HPoint random_point(int n, Rng& rng) {
  HPoint p;
  for (int a = 0; a < n; ++a) p.z.push_back(rng.gaussian(4));
  p.t = rng.rational(4);
  return p;
}

}  // namespace

TEST_CASE("validity invariant") {
  CHECK(basic(2).N() == 4);

  // lambda = 0: 0 < 0 is false
  CHECK_THROWS_AS(ClosedFormSolution::make(1, {GaussianRational()}, GaussianRational(),
                                           Pairing::MuDotZ),
                  ParamError);
  // boundary |mu|^2 = 4 Im lambda excluded
  CHECK_THROWS_AS(ClosedFormSolution::make(
                      2, {grat(2), GaussianRational()}, GaussianRational::i(), Pairing::MuDotZ),
                  ParamError);
}

TEST_CASE("w evaluation") {
  auto sol = basic(2);
  CHECK(sol.eval_w(origin(2)) == GaussianRational::i());

  HPoint p = origin(2);
  p.z[0] = grat(1);  // |z|^2 = 1
  CHECK(sol.eval_w(p) == GaussianRational(Rational(0), Rational(2)));

  // mu = (1,0), lambda = i, z = (1,0), t = 0, mu-dot-z: w = i + 1 + i = 1 + 2i
  auto sol2 = ClosedFormSolution::make(2, {grat(1), GaussianRational()}, GaussianRational::i(),
                                       Pairing::MuDotZ);
  CHECK(sol2.eval_w(p) == GaussianRational(Rational(1), Rational(2)));
}

TEST_CASE("u evaluation") {
  CHECK(basic(2).eval_u(origin(2)) == doctest::Approx(4.0));
  CHECK(basic(1).eval_u(origin(1)) == doctest::Approx(2.0));

  HPoint p = origin(2);
  p.z[0] = grat(1);
  CHECK(basic(2).eval_u_squared(p) == 1);
  CHECK(basic(2).eval_u(p) == doctest::Approx(1.0));
}

TEST_CASE("config round trip") {
  Rng rng(5);
  auto sol = random_valid(2, rng, Pairing::MuDotZBar);
  auto back = ClosedFormSolution::from_config(sol.to_config());
  CHECK(back.n() == sol.n());
  CHECK(back.lambda() == sol.lambda());
  CHECK(back.mu() == sol.mu());
  CHECK(back.pairing() == sol.pairing());
}

TEST_CASE("the pairing convention is determined by the residual oracle") {
  for (int n = 1; n <= 2; ++n) {
    auto finding = determine_pairing(n, 31337, 5);
    CHECK(finding.mu_dot_z_zero != finding.mu_dot_zbar_zero);
    // the holomorphic pairing is the one that solves the equation
    CHECK(finding.chosen == Pairing::MuDotZ);
  }
}

TEST_CASE("residual of the logarithmic equation vanishes exactly") {
  Rng rng(2024);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      auto sol = random_valid(n, rng, Pairing::MuDotZ);
      ExactJetEvaluator eval(sol, 2);
      for (int k = 0; k < 5; ++k) {
        auto jv = eval.eval(random_point(n, rng));
        REQUIRE(residual_eq16(jv, n).is_zero());
        REQUIRE_FALSE(residual_eq16_mutated(jv, n).is_zero());
      }
    }
  }
  // the explicit example: n=1, mu=0, lambda=i at the origin
  ExactJetEvaluator eval(basic(1), 2);
  CHECK(residual_eq16(eval.eval(origin(1)), 1).is_zero());
}

TEST_CASE("torsion and Einstein tensors vanish on the family") {
  Rng rng(77);
  for (int n = 1; n <= 2; ++n) {
    auto sol = random_valid(n, rng, Pairing::MuDotZ);
    ExactJetEvaluator eval(sol, 2);
    for (int k = 0; k < 10; ++k) {
      auto tv = tensors_at(eval.eval(random_point(n, rng)), n);
      REQUIRE(tv.all_zero());
    }
  }
}

TEST_CASE("exact jets are hermitian and satisfy the trace identity") {
  Rng rng(9);
  auto sol = random_valid(2, rng, Pairing::MuDotZ);
  ExactJetEvaluator eval(sol, 3);
  auto jv = eval.eval(random_point(2, rng));

  // conj(f_alpha) = f_alphabar for the real function f
  for (std::uint8_t a = 1; a <= 2; ++a) {
    REQUIRE(jv.jets.at(CanonWord{{a}, {}, 0}).conj() == jv.jets.at(CanonWord{{}, {a}, 0}));
  }
  // Im(sum f_{a abar}) = n f_0
  GaussianRational tr;
  for (std::uint8_t a = 1; a <= 2; ++a) tr += jv.jets.at(CanonWord{{a}, {a}, 0});
  GaussianRational f0 = jv.jets.at(CanonWord{{}, {}, 1});
  CHECK(tr.im == 2 * f0.re);
  CHECK(f0.im == 0);
}

TEST_CASE("fast double evaluation matches the exact engine") {
  Rng rng(123);
  for (Pairing pairing : {Pairing::MuDotZ, Pairing::MuDotZBar}) {
    auto sol = random_valid(2, rng, pairing);
    ExactJetEvaluator eval(sol, 2);
    FastSolution fast(sol);
    for (int k = 0; k < 20; ++k) {
      HPoint p = random_point(2, rng);
      std::vector<std::complex<double>> z;
      for (const auto& c : p.z) z.push_back(c.to_complex());
      double t = rat_double(p.t);

      double u_exact = std::sqrt(rat_double(sol.eval_u_squared(p)));
      CHECK(fast.u(z, t) == doctest::Approx(u_exact).epsilon(1e-12));

      auto jv = eval.eval(p);
      GaussianRational grad2;
      for (std::uint8_t a = 1; a <= 2; ++a)
        grad2 += jv.jets.at(CanonWord{{a}, {}, 0}) * jv.jets.at(CanonWord{{}, {a}, 0});
      REQUIRE(grad2.im == 0);
      CHECK(fast.grad2(z, t) == doctest::Approx(rat_double(grad2.re)).epsilon(1e-10));
      CHECK(fast.e2f(z, t) == doctest::Approx(rat_double(jv.e2f)).epsilon(1e-12));
    }
  }
}

TEST_CASE("pointwise decay constant") {
  // n = 2: exponent 0, the sup is just sup u over the shells, bounded by u's max
  auto rep2 = pointwise_decay_check(basic(2), 4000, 99);
  CHECK(rep2.sup_constant > 0.0);
  CHECK(rep2.sup_constant <= 4.0);

  // n = 3: u ~ rho^{-2n} decays faster than rho^{-(n-2)}, so the sup is finite
  // and attained on the innermost shell
  auto rep3 = pointwise_decay_check(basic(3), 4000, 99);
  CHECK(rep3.sup_constant > 0.0);
  CHECK(rep3.sup_rho < 4.0);

  CHECK_THROWS_AS(pointwise_decay_check(basic(1), 100, 1), ParamError);
}
