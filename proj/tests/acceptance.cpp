// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "crlab/closedform.hpp"
#include "crlab/identities.hpp"
#include "crlab/numeric_checks.hpp"
#include "crlab/numjets.hpp"
#include "crlab/quad.hpp"
#include "crlab/sampling.hpp"

using namespace crlab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, const std::function<bool(std::string&)>& run) {
  auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double sec = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(),
              sec, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

ClosedFormSolution extremal_n2() {
  return ClosedFormSolution::make(2, {GaussianRational(), GaussianRational()},
                                  GaussianRational::i(), Pairing::MuDotZ);
}

bool slope_leq(const GrowthSeries& s, double bound, std::string& detail, double max_seconds,
               double actual_seconds) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "slope=%.3f bound=%.3f (+/-%.2g)", s.slope, bound, s.tolerance);
  if (!detail.empty()) detail += "; ";
  detail += buf;
  if (actual_seconds > max_seconds) {
    detail += " [series exceeded the runtime budget]";
    return false;
  }
  return s.slope <= bound + s.tolerance;
}

}  // namespace

int main() {
  const std::uint64_t seed = 20231110;

  // 1. Lemma 1 symbolic: n = 1, 2 with m formal; n = 3 at m in {0, 1/2, 1}.
  criterion(1, "Lemma 1 divergence formula: zero residual, n=1,2 formal m; n=3 at m=0,1/2,1",
            [&](std::string& detail) {
              auto t0 = Clock::now();
              bool ok = true;
              for (int n = 1; n <= 2; ++n)
                ok &= verify_identity(IdentityId::Lemma1, n, MMode::formal_m()).passed();
              for (const char* mv : {"0", "1/2", "1"})
                ok &= verify_identity(IdentityId::Lemma1, 3, MMode::at(rat_from_string(mv)))
                          .passed();
              double sec = std::chrono::duration<double>(Clock::now() - t0).count();
              char buf[64];
              std::snprintf(buf, sizeof(buf), "total runtime %.1fs (budget 300s)", sec);
              detail = buf;
              return ok && sec < 300.0;
            });

  // 2. The companion identities at n = 1, 2 with q, theta formal.
  criterion(2, "identities (2.2), (2.3), g/gbar pair, (2.20), (2.26), (2.33): zero residual, n=1,2",
            [&](std::string& detail) {
              bool ok = true;
              for (int n = 1; n <= 2; ++n) {
                for (IdentityId id :
                     {IdentityId::JLFormula, IdentityId::WeightDerivative,
                      IdentityId::GDerivativePair, IdentityId::Lem3Div, IdentityId::Lem4Div,
                      IdentityId::Lem5Div}) {
                  auto rep = verify_identity(id, n, MMode::formal_m());
                  if (!rep.passed()) {
                    ok = false;
                    detail += std::string(identity_name(id)) + "[n=" + std::to_string(n) +
                              "] failed; ";
                  }
                }
              }
              return ok;
            });

  // 3. Mutations: each must produce a nonzero residual with a witness.
  criterion(3, "12 mutations of Lemma 1 (c1..c6 +1; drop each right-side group) all fail",
            [&](std::string& detail) {
              bool ok = true;
              int checked = 0;
              for (int i = 1; i <= 6; ++i) {
                for (Mutation::Kind kind :
                     {Mutation::Kind::CoeffPlusOne, Mutation::Kind::DropTerm}) {
                  Mutation mut{kind, i};
                  auto rep = verify_identity(IdentityId::Lemma1, 2, MMode::formal_m(), &mut);
                  ++checked;
                  bool failed_as_expected =
                      rep.error.empty() && !rep.zero && !rep.witness.empty();
                  if (!failed_as_expected) {
                    ok = false;
                    detail += mut.str() + " did not fail with a witness; ";
                  }
                }
              }
              if (ok) detail = std::to_string(checked) + " mutations, all rejected with witnesses";
              return ok;
            });

  // 4. Completion of squares (2.5): symbolic, numeric, and the m = 0 shape.
  criterion(4, "psi completion of squares: symbolic zero, 1e4 numeric samples <= 1e-10, m=0 oracle",
            [&](std::string& detail) {
              auto rep = verify_identity(IdentityId::PsiSquares, 1, MMode::formal_m());
              auto num = psi_numeric_check(seed, 10000);
              char buf[96];
              std::snprintf(buf, sizeof(buf), "max numeric rel err %.2e", num.max_rel_err);
              detail = buf;
              return rep.passed() && num.max_rel_err <= 1e-10;
            });

  // 5. Coefficient bounds, exact rational samples.
  criterion(5, "coefficient bounds (2.13)-(2.15): 1e5 exact samples with m <= 99/100, 0 violations",
            [&](std::string& detail) {
              auto rep = coefficient_bounds_check(seed, 100000, rat(99, 100));
              detail = "violations c1/c4/c6: " + std::to_string(rep.violations_c1) + "/" +
                       std::to_string(rep.violations_c4) + "/" + std::to_string(rep.violations_c6);
              return rep.passed();
            });

  // 6. Tensor chain (2.12), exact expansion oracle.
  criterion(6, "tensor chain (2.12): 1e4 exact samples for n=2 and n=3 against brute force",
            [&](std::string& detail) {
              auto r2 = tensor_identity_tests(2, seed, 10000);
              auto r3 = tensor_identity_tests(3, seed + 1, 10000);
              detail = "equality/inequality violations: n=2: " +
                       std::to_string(r2.equality_violations) + "/" +
                       std::to_string(r2.inequality_violations) + ", n=3: " +
                       std::to_string(r3.equality_violations) + "/" +
                       std::to_string(r3.inequality_violations);
              return r2.passed() && r3.passed();
            });

  // 7. Closed-form family: exact zeros at 100 points x 20 solutions, n = 1, 2.
  criterion(7, "closed-form family: (1.6) residual and (D,E,G) exactly 0, 20 solutions x 100 points",
            [&](std::string& detail) {
              auto finding = determine_pairing(2, seed, 5);
              detail = std::string("convention: ") + pairing_name(finding.chosen) +
                       " (mu-dot-z residual zero: " + (finding.mu_dot_z_zero ? "yes" : "no") +
                       ", mu-dot-zbar: " + (finding.mu_dot_zbar_zero ? "yes" : "no") + ")";
              bool ok = true;
              for (int n = 1; n <= 2 && ok; ++n) {
                Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
                for (int s = 0; s < 20 && ok; ++s) {
                  std::vector<GaussianRational> mu;
                  Rational mu2(0);
                  for (int a = 0; a < n; ++a) {
                    mu.push_back(rng.gaussian(4));
                    mu2 += mu.back().abs2();
                  }
                  GaussianRational lambda(rng.rational(4), mu2 / 4 + rng.rational_positive(5));
                  auto sol = ClosedFormSolution::make(n, mu, lambda, finding.chosen);
                  ExactJetEvaluator eval(sol, 2);
                  for (int k = 0; k < 100 && ok; ++k) {
                    HPoint p;
                    for (int a = 0; a < n; ++a) p.z.push_back(rng.gaussian(5));
                    p.t = rng.rational(5);
                    auto jv = eval.eval(p);
                    if (!residual_eq16(jv, n).is_zero() || !tensors_at(jv, n).all_zero())
                      ok = false;
                  }
                }
              }
              return ok;
            });

  // 8. AD vs exact closed-form jets at 50 points; FD cross-check.
  criterion(8, "AD/symbolic consistency: all jets |w|<=3 within 1e-9 at 50 points; FD <= 1e-6",
            [&](std::string& detail) {
              auto sol = ClosedFormSolution::make(
                  2,
                  {GaussianRational(rat(1, 2), rat(-1, 3)), GaussianRational(rat(1, 4), rat(0))},
                  GaussianRational(rat(1, 3), rat(2)), Pairing::MuDotZ);
              ExactJetEvaluator exact(sol, 3);
              std::ostringstream os;
              os << "(1/2) * log(" << rat_str(sol.N()) << " / abs2(t + i*(x1^2+y1^2+x2^2+y2^2)"
                 << " + (" << rat_str(sol.mu()[0].re) << " + i*(" << rat_str(sol.mu()[0].im)
                 << "))*(x1 + i*y1) + (" << rat_str(sol.mu()[1].re) << ")*(x2 + i*y2) + "
                 << rat_str(sol.lambda().re) << " + i*(" << rat_str(sol.lambda().im) << ")))"
                 << " - log(2)";
              std::string text = os.str();
              ExprAST ast = parse_expression(text);

              Rng rng(seed);
              double worst_jet = 0.0, worst_fd = 0.0;
              for (int k = 0; k < 50; ++k) {
                HPoint p;
                for (int a = 0; a < 2; ++a) p.z.push_back(rng.gaussian(3));
                p.t = rng.rational(3);
                auto jv = exact.eval(p);

                std::vector<std::complex<double>> z;
                for (const auto& c : p.z) z.push_back(c.to_complex());
                double t = rat_double(p.t);
                auto jets = cr_jets_from_taylor(taylor_eval(ast, text, z, t), z, t, 2);
                for (const auto& [word, val] : jv.jets) {
                  std::complex<double> expect = val.to_complex();
                  double scale = std::max(1.0, std::abs(expect));
                  worst_jet = std::max(worst_jet, std::abs(jets.jet(word) - expect) / scale);
                }
                if (k < 5) {
                  auto fd = fd_crosscheck(ast, text, z, t);
                  worst_fd = std::max({worst_fd, fd.max_rel_order1, fd.max_rel_order2});
                }
              }
              char buf[96];
              std::snprintf(buf, sizeof(buf), "worst jet dev %.2e, worst FD dev %.2e", worst_jet,
                            worst_fd);
              detail = buf;
              return worst_jet <= 1e-9 && worst_fd <= 1e-6;
            });

  // 9. Quadrature exponents for the extremal solution at n = 2.
  criterion(9, "quadrature exponents (n=2, N=1e6, grid 2^0..2^6, tol 0.3, <=120s per series)",
            [&](std::string& detail) {
              auto sol = extremal_n2();
              auto grid = default_radius_grid();
              const std::size_t N = 1000000;
              bool ok = true;

              auto timed = [&](const std::function<GrowthSeries()>& run, double& sec) {
                auto t0 = Clock::now();
                GrowthSeries s = run();
                sec = std::chrono::duration<double>(Clock::now() - t0).count();
                return s;
              };

              double sec = 0.0;
              // volume growth: slope equals the homogeneous dimension 6
              GrowthSeries vol = timed(
                  [&] { return growth_exponent(sol, rat(0), rat(0), grid, N, seed, 1); }, sec);
              ok &= slope_leq(vol, 6.0, detail, 120.0, sec) && std::abs(vol.slope - 6.0) <= 0.3;

              // (q, r) = (2, 0): slope about 2, bound 4
              GrowthSeries g20 = timed(
                  [&] { return growth_exponent(sol, rat(2), rat(0), grid, N, seed, 1); }, sec);
              ok &= slope_leq(g20, 4.0, detail, 120.0, sec) && std::abs(g20.slope - 2.0) <= 0.3;

              // hypothesis (1.4) at q = (2n+2)/n = 3: slope <= 2
              GrowthSeries t3 =
                  timed([&] { return th2_check(sol, rat(3), grid, N, seed, 1); }, sec);
              ok &= slope_leq(t3, 2.0, detail, 120.0, sec);

              // estimate (1.5) for q in {0, 1/2, 1, 2}: slope <= 2n+2-nq
              for (const char* qs : {"0", "1/2", "1", "2"}) {
                Rational q = rat_from_string(qs);
                GrowthSeries s =
                    timed([&] { return th2_check(sol, q, grid, N, seed, 1); }, sec);
                ok &= slope_leq(s, 6.0 - 2.0 * rat_double(q), detail, 120.0, sec);
              }
              return ok;
            });

  // 10. CLI: exit 0, schema-valid JSON, byte-identical reruns.
  criterion(10, "CLI verify lemma1 --n 1 --m formal: exit 0, schema-valid, byte-identical reruns",
            [&](std::string& detail) {
              const char* env = std::getenv("CRLAB_BIN");
              if (!env) {
                detail = "CRLAB_BIN not set";
                return false;
              }
              std::string bin = env;
              auto runit = [&](const std::string& out) {
                std::string cmd =
                    bin + " verify lemma1 --n 1 --m formal --out " + out + " 2>/dev/null";
                int rc = std::system(cmd.c_str());
                return WEXITSTATUS(rc);
              };
              if (runit("acc_a.json") != 0 || runit("acc_b.json") != 0) {
                detail = "nonzero exit";
                return false;
              }
              auto slurp = [](const std::string& p) {
                std::ifstream is(p, std::ios::binary);
                std::stringstream ss;
                ss << is.rdbuf();
                return ss.str();
              };
              std::string a = slurp("acc_a.json"), b = slurp("acc_b.json");
              std::remove("acc_a.json");
              std::remove("acc_b.json");
              if (a.empty() || a != b) {
                detail = "reports differ between identical runs";
                return false;
              }
              // minimal schema check without a JSON dependency in this binary
              for (const char* key :
                   {"\"command\"", "\"inputs\"", "\"seed\"", "\"results\"", "\"elapsed\"",
                    "\"status\": \"pass\""}) {
                if (a.find(key) == std::string::npos) {
                  detail = std::string("missing schema key ") + key;
                  return false;
                }
              }
              return true;
            });

  std::printf("%s: %d/10 criteria passed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              10 - failures);
  return failures == 0 ? 0 : 1;
}
