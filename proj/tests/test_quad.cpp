#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crlab/quad.hpp"
#include "crlab/sampling.hpp"

using namespace crlab;

namespace {

ClosedFormSolution basic(int n) {
  return ClosedFormSolution::make(n, std::vector<GaussianRational>(n, GaussianRational()),
                                  GaussianRational::i(), Pairing::MuDotZ);
}

}  // namespace

TEST_CASE("gauge homogeneity is exact on rational samples") {
  Rng rng(314);
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < 50; ++k) {
      HPoint p;
      for (int a = 0; a < n; ++a) p.z.push_back(rng.gaussian(9));
      p.t = rng.rational(9);
      Rational s = rng.rational_positive(9);
      // rho(delta_s p)^4 = s^4 rho(p)^4
      CHECK(gauge_rho4_exact(dilate(p, s)) == rat_pow(s, 4) * gauge_rho4_exact(p));
    }
  }
}

TEST_CASE("ball membership of accepted samples") {
  KoranyiBall ball{2.0};
  Integrand ind = [&](const std::vector<std::complex<double>>& z, double t) {
    CHECK(ball.contains(z, t));
    return 1.0;
  };
  // the callback only fires inside the ball
  integrate(ind, 1, 2.0, 20000, 42);
}

TEST_CASE("volume of the unit ball, n = 1 and 2") {
  Integrand one = [](const std::vector<std::complex<double>>&, double) { return 1.0; };
  for (int n = 1; n <= 2; ++n) {
    auto est = integrate(one, n, 1.0, 400000, 7);
    double expect = unit_ball_volume(n);
    INFO("n=", n, " est=", est.value, " expect=", expect, " se=", est.std_error);
    CHECK(std::abs(est.value - expect) <= 4 * est.std_error);
    // matches the analytic value to three significant digits
    CHECK(std::abs(est.value - expect) / expect < 5e-3);
  }
}

TEST_CASE("volume scales like R^(2n+2)") {
  Integrand one = [](const std::vector<std::complex<double>>&, double) { return 1.0; };
  int n = 2;
  auto v1 = integrate(one, n, 1.0, 200000, 11);
  for (double R : {2.0, 4.0, 8.0}) {
    auto vr = integrate(one, n, R, 200000, 13);
    double ratio = vr.value / v1.value;
    double expect = std::pow(R, 2 * n + 2);
    CHECK(std::abs(ratio - expect) / expect < 0.02);
  }
}

TEST_CASE("odd integrand integrates to zero") {
  Integrand odd = [](const std::vector<std::complex<double>>&, double t) { return t; };
  auto est = integrate(odd, 1, 1.5, 200000, 21);
  CHECK(std::abs(est.value) <= 4 * est.std_error);
}

TEST_CASE("estimates are deterministic per (seed, workers)") {
  Integrand f = [](const std::vector<std::complex<double>>& z, double t) {
    return std::exp(-std::norm(z[0]) - t * t);
  };
  auto a = integrate(f, 1, 1.0, 50000, 99, 1);
  auto b = integrate(f, 1, 1.0, 50000, 99, 1);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);

  auto c = integrate_stratified(f, 1, 1.0, 50000, 99, 2);
  auto d = integrate_stratified(f, 1, 1.0, 50000, 99, 2);
  CHECK(c.value == d.value);
}

TEST_CASE("stratified and plain estimates agree") {
  FastSolution fast(basic(2));
  Integrand u3 = [&](const std::vector<std::complex<double>>& z, double t) {
    return std::pow(fast.u(z, t), 3.0);
  };
  auto plain = integrate(u3, 2, 2.0, 400000, 5);
  auto strat = integrate_stratified(u3, 2, 2.0, 400000, 5);
  CHECK(std::abs(plain.value - strat.value) <=
        4 * std::sqrt(plain.std_error * plain.std_error + strat.std_error * strat.std_error) +
            0.01 * plain.value);
}

TEST_CASE("u^3 tail is convergent between R=2 and R=4") {
  FastSolution fast(basic(2));
  Integrand u3 = [&](const std::vector<std::complex<double>>& z, double t) {
    return std::pow(fast.u(z, t), 3.0);
  };
  auto i2 = integrate_stratified(u3, 2, 2.0, 300000, 5);
  auto i4 = integrate_stratified(u3, 2, 4.0, 300000, 5);
  CHECK(i4.value > i2.value);
  // u ~ rho^-4 so the tail from 2 to 4 is a small fraction of the total
  CHECK((i4.value - i2.value) / i4.value < 0.25);
}

TEST_CASE("growth range validation follows the lemma") {
  auto sol = basic(2);
  auto grid = default_radius_grid();
  CHECK_THROWS_AS(growth_exponent(sol, rat(1), rat(3), grid, 100, 1), ParamError);
  CHECK_THROWS_AS(growth_exponent(sol, rat(5), rat(0), grid, 100, 1), ParamError);   // q > n+2
  CHECK_THROWS_AS(growth_exponent(sol, rat(3), rat(1), grid, 100, 1), ParamError);   // q = n+2-r
  CHECK_THROWS_AS(growth_exponent(sol, rat(-1), rat(0), grid, 100, 1), ParamError);
  CHECK_THROWS_AS(th2_check(sol, rat(7, 2), grid, 100, 1), ParamError);  // between ranges
}

TEST_CASE("volume growth slope is the homogeneous dimension") {
  auto sol = basic(2);
  auto series = growth_exponent(sol, rat(0), rat(0), default_radius_grid(), 60000, 17);
  INFO("slope=", series.slope);
  CHECK(series.bound == doctest::Approx(6.0));
  CHECK(std::abs(series.slope - 6.0) <= 0.3);
  CHECK(series.within_bound);
}

TEST_CASE("csv series output") {
  auto sol = basic(2);
  auto series = growth_exponent(sol, rat(0), rat(0), {1.0, 2.0}, 5000, 3);
  std::string path = "test_series_out.csv";
  write_series_csv(path, series);
  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  CHECK(header == "R,estimate,stderr");
  int rows = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
  std::remove(path.c_str());
}
