#include "crlab/quad.hpp"

#include <cmath>
#include <fstream>
#include <thread>

#include "crlab/error.hpp"
#include "crlab/sampling.hpp"

namespace crlab {

double gauge_rho(const std::vector<std::complex<double>>& z, double t) {
  double z2 = 0;
  for (const auto& c : z) z2 += std::norm(c);
  return std::pow(z2 * z2 + t * t, 0.25);
}

Rational gauge_rho4_exact(const HPoint& p) {
  Rational z2(0);
  for (const auto& c : p.z) z2 += c.abs2();
  return z2 * z2 + p.t * p.t;
}

HPoint dilate(const HPoint& p, const Rational& s) {
  HPoint out;
  for (const auto& c : p.z) out.z.push_back(c * GaussianRational(s));
  out.t = p.t * s * s;
  return out;
}

double unit_ball_volume(int n) {
  const double pi = 3.14159265358979323846;
  switch (n) {
    case 1: return pi * pi / 2.0;        // int over C x R of 1_{|z|^4+t^2<1}
    case 2: return 2.0 * pi * pi / 3.0;  // C^2 x R
    default: throw ParamError("analytic unit ball volume is tabulated for n = 1, 2 only");
  }
}

namespace {

// Neumaier compensated accumulator.
struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double total() const { return sum + comp; }
};

struct ShellSpec {
  double r_in;   // gauge radius, 0 for the inner ball
  double r_out;
};

// One stratum: uniform samples in the bounding box of B_{r_out}, counted when
// the gauge radius falls in [r_in, r_out).
void sample_stratum(const Integrand& f, int n, const ShellSpec& shell, std::size_t samples,
                    std::uint64_t seed, int workers, Kahan& sum, Kahan& sumsq) {
  const double R = shell.r_out;
  const double rin4 = std::pow(shell.r_in, 4.0);
  const double rout4 = std::pow(shell.r_out, 4.0);

  auto work = [&](std::uint64_t wseed, std::size_t count, Kahan& s1, Kahan& s2) {
    Rng rng(wseed);
    std::vector<std::complex<double>> z(n);
    for (std::size_t k = 0; k < count; ++k) {
      double z2 = 0;
      for (auto& c : z) {
        c = {rng.uniform(-R, R), rng.uniform(-R, R)};
        z2 += std::norm(c);
      }
      double t = rng.uniform(-R * R, R * R);
      double rho4 = z2 * z2 + t * t;
      if (rho4 < rin4 || rho4 >= rout4) continue;
      double v = f(z, t);
      if (!std::isfinite(v))
        throw DomainError("non-finite integrand value at rho = " +
                          std::to_string(std::pow(rho4, 0.25)));
      s1.add(v);
      s2.add(v * v);
    }
  };

  if (workers <= 1) {
    work(derive_seed(seed, 0), samples, sum, sumsq);
    return;
  }
  std::vector<Kahan> s1(workers), s2(workers);
  std::vector<std::thread> threads;
  std::size_t base = samples / workers, rem = samples % workers;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    std::size_t count = base + (static_cast<std::size_t>(w) < rem ? 1 : 0);
    threads.emplace_back([&, w, count]() {
      try {
        work(derive_seed(seed, static_cast<std::uint64_t>(w)), count, s1[w], s2[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int w = 0; w < workers; ++w)
    if (errors[w]) std::rethrow_exception(errors[w]);
  // merge in worker order
  for (int w = 0; w < workers; ++w) {
    sum.add(s1[w].total());
    sumsq.add(s2[w].total());
  }
}

QuadratureEstimate estimate_from(const Kahan& sum, const Kahan& sumsq, std::size_t samples,
                                 double boxvol) {
  QuadratureEstimate est;
  est.samples = samples;
  double m1 = sum.total() / static_cast<double>(samples);
  double m2 = sumsq.total() / static_cast<double>(samples);
  est.value = boxvol * m1;
  double var = std::max(0.0, m2 - m1 * m1);
  est.std_error = boxvol * std::sqrt(var / static_cast<double>(samples));
  return est;
}

double boxvol_of(int n, double R) {
  // |x_a|,|y_a| <= R and |t| <= R^2
  return std::pow(2.0 * R, 2 * n) * 2.0 * R * R;
}

}  // namespace

QuadratureEstimate integrate(const Integrand& f, int n, double R, std::size_t samples,
                             std::uint64_t seed, int workers, double exclusion) {
  if (samples < 1) throw ParamError("samples must be >= 1");
  Kahan sum, sumsq;
  sample_stratum(f, n, ShellSpec{exclusion, R}, samples, seed, workers, sum, sumsq);
  QuadratureEstimate est = estimate_from(sum, sumsq, samples, boxvol_of(n, R));
  est.seed = seed;
  est.workers = workers;
  est.exclusion = exclusion;
  return est;
}

QuadratureEstimate integrate_stratified(const Integrand& f, int n, double R,
                                        std::size_t samples, std::uint64_t seed, int workers,
                                        int splits_per_octave, double exclusion) {
  if (samples < 1) throw ParamError("samples must be >= 1");
  // shells from ~1/8 out to R in near-dyadic steps
  double r_min = std::max(R / 512.0, 0.125);
  r_min = std::max(r_min, exclusion);
  std::vector<ShellSpec> shells;
  if (exclusion < r_min) shells.push_back(ShellSpec{exclusion, r_min});
  double step = std::pow(2.0, 1.0 / splits_per_octave);
  for (double r = r_min; r < R * 0.9999; r *= step)
    shells.push_back(ShellSpec{r, std::min(r * step, R)});
  if (shells.empty()) shells.push_back(ShellSpec{exclusion, R});

  std::size_t per = std::max<std::size_t>(samples / shells.size(), 64);
  QuadratureEstimate total;
  total.seed = seed;
  total.workers = workers;
  total.exclusion = exclusion;
  double var = 0.0;
  std::size_t used = 0;
  for (std::size_t si = 0; si < shells.size(); ++si) {
    Kahan sum, sumsq;
    sample_stratum(f, n, shells[si], per, derive_seed(seed, 1000 + si), workers, sum, sumsq);
    QuadratureEstimate part = estimate_from(sum, sumsq, per, boxvol_of(n, shells[si].r_out));
    total.value += part.value;
    var += part.std_error * part.std_error;
    used += per;
  }
  total.std_error = std::sqrt(var);
  total.samples = used;
  return total;
}

double fit_log_slope(const std::vector<GrowthPoint>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& p : pts) {
    if (p.estimate <= 0) throw DomainError("nonpositive estimate in the growth series");
    double x = std::log(p.R), y = std::log(p.estimate);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0) throw ParamError("growth fit needs at least two distinct radii");
  return (n * sxy - sx * sy) / denom;
}

std::vector<double> default_radius_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 6; ++k) grid.push_back(std::pow(2.0, k));
  return grid;
}

namespace {

GrowthSeries run_series(const ClosedFormSolution& sol, const Integrand& f,
                        const std::string& label, double bound,
                        const std::vector<double>& grid, std::size_t samples,
                        std::uint64_t seed, int workers, double tolerance) {
  GrowthSeries out;
  out.label = label;
  out.bound = bound;
  out.tolerance = tolerance;
  out.samples_per_radius = samples;
  out.seed = seed;
  out.workers = workers;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    QuadratureEstimate est = integrate_stratified(f, sol.n(), grid[k], samples,
                                                  derive_seed(seed, 7000 + k), workers);
    out.points.push_back(GrowthPoint{grid[k], est.value, est.std_error});
  }
  out.slope = fit_log_slope(out.points);
  out.within_bound = out.slope <= bound + tolerance;
  return out;
}

}  // namespace

GrowthSeries growth_exponent(const ClosedFormSolution& sol, const Rational& q, const Rational& r,
                             const std::vector<double>& grid, std::size_t samples,
                             std::uint64_t seed, int workers, double tolerance) {
  const int n = sol.n();
  if (r < 0 || r > 2)
    throw ParamError("growth exponent needs r in [0, 2] (got r = " + rat_str(r) + ")");
  if (r == 0) {
    if (q < 0 || q > n + 2)
      throw ParamError("growth exponent with r = 0 needs q in [0, n+2] (got q = " + rat_str(q) +
                       ", n = " + std::to_string(n) + ")");
  } else {
    if (q < 0 || !(q < Rational(n + 2) - r))
      throw ParamError("growth exponent with r > 0 needs q in [0, n+2-r) (got q = " +
                       rat_str(q) + ", r = " + rat_str(r) + ", n = " + std::to_string(n) + ")");
  }

  FastSolution fast(sol);
  double qd = rat_double(q), rd = rat_double(r);
  Integrand f = [fast, qd, rd](const std::vector<std::complex<double>>& z, double t) {
    double val = std::pow(fast.e2f(z, t), qd / 2.0);
    if (rd != 0.0) val *= std::pow(fast.grad2(z, t), rd / 2.0);
    return val;
  };
  double bound = 2 * n + 2 - qd - rd;
  std::string label = "e^(qf)|df|^r with q=" + rat_str(q) + ", r=" + rat_str(r);
  return run_series(sol, f, label, bound, grid, samples, seed, workers, tolerance);
}

GrowthSeries th2_check(const ClosedFormSolution& sol, const Rational& q,
                       const std::vector<double>& grid, std::size_t samples,
                       std::uint64_t seed, int workers, double tolerance) {
  const int n = sol.n();
  Rational lo14 = rat(2 * n + 1, n), hi14 = rat(2 * n + 2, n), hi15 = rat(n + 2, n);
  double bound;
  if (q > lo14 && q <= hi14) {
    bound = 2.0;
  } else if (q >= 0 && q <= hi15) {
    bound = 2 * n + 2 - n * rat_double(q);
  } else {
    throw ParamError("q = " + rat_str(q) + " is outside both hypothesis ranges ((" +
                     rat_str(lo14) + ", " + rat_str(hi14) + "] and [0, " + rat_str(hi15) + "])");
  }

  FastSolution fast(sol);
  double e = n * rat_double(q) / 2.0;
  Integrand f = [fast, e](const std::vector<std::complex<double>>& z, double t) {
    return std::pow(fast.N / std::norm(fast.w(z, t)), e);
  };
  return run_series(sol, f, "u^q with q=" + rat_str(q), bound, grid, samples, seed, workers,
                    tolerance);
}

void write_series_csv(const std::string& path, const GrowthSeries& series) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open CSV output file: " + path);
  os << "R,estimate,stderr\n";
  char buf[128];
  for (const auto& p : series.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.R, p.estimate, p.std_error);
    os << buf;
  }
}

}  // namespace crlab
