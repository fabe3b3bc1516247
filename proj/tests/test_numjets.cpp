#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "crlab/closedform.hpp"
#include "crlab/numjets.hpp"
#include "crlab/sampling.hpp"

using namespace crlab;

namespace {

struct Parsed {
  std::string text;
  ExprAST ast;
  explicit Parsed(std::string s) : text(std::move(s)), ast(parse_expression(text)) {}
};

CRJetNumeric jets_of(const Parsed& p, const std::vector<std::complex<double>>& z, double t) {
  return cr_jets_from_taylor(taylor_eval(p.ast, p.text, z, t), z, t,
                             static_cast<int>(z.size()));
}

}  // namespace

TEST_CASE("parser accepts the grammar with standard precedence") {
  Parsed ok("t^2 + x1*y1");
  CHECK(ok.ast.kind == ExprNode::Kind::Add);

  Parsed prec("x1 + y1 * t");
  REQUIRE(prec.ast.kind == ExprNode::Kind::Add);
  CHECK(prec.ast.children[1].kind == ExprNode::Kind::Mul);

  Parsed deep("exp(2*log(sqrt(abs2(x1 + i*y1) + 1)))");
  CHECK(deep.ast.kind == ExprNode::Kind::Call);
}

TEST_CASE("parser reports byte offsets") {
  try {
    parse_expression("(");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(parse_expression("x1 + zz"), ParseError);
  CHECK_THROWS_AS(parse_expression("exp 3"), ParseError);
  CHECK_THROWS_AS(parse_expression("x1 ^ t"), ParseError);
}

TEST_CASE("taylor derivatives of simple functions") {
  std::vector<std::complex<double>> z{{0.3, -0.2}};
  double t = 0.7;

  Parsed pt("t");
  TaylorValue tv = taylor_eval(pt.ast, pt.text, z, t);
  const auto& shape = *tv.shape();
  CHECK(tv.value().real() == doctest::Approx(0.7));
  CHECK(tv.coeffs()[shape.unit_index(2)].real() == doctest::Approx(1.0));  // d/dt
  CHECK(tv.coeffs()[shape.unit_index(0)].real() == doctest::Approx(0.0));

  Parsed px("x1");
  TaylorValue tx = taylor_eval(px.ast, px.text, z, t);
  CHECK(tx.coeffs()[shape.unit_index(0)].real() == doctest::Approx(1.0));

  // f = x1^2 y1: d^3/dx1^2 dy1 = 2
  Parsed pm("x1^2 * y1");
  TaylorValue tm = taylor_eval(pm.ast, pm.text, z, t);
  // coefficient of xi_x^2 xi_y equals derivative / (2! 1!)
  int ix = static_cast<int>(shape.unit_index(0));
  int up = shape.raise_index(ix, 0);
  REQUIRE(up >= 0);
  int upy = shape.raise_index(up, 1);
  REQUIRE(upy >= 0);
  CHECK(tm.coeffs()[upy].real() * 2.0 == doctest::Approx(2.0));
}

TEST_CASE("CR jets of coordinate functions") {
  std::vector<std::complex<double>> z{{0.4, 0.25}};
  double t = -0.3;

  // f = x1: f_1 = 1/2
  auto j1 = jets_of(Parsed("x1"), z, t);
  CHECK(std::abs(j1.jet(CanonWord{{1}, {}, 0}) - std::complex<double>(0.5, 0)) < 1e-12);

  // f = |z1|^2: f_1 = zbar_1
  auto j2 = jets_of(Parsed("x1^2 + y1^2"), z, t);
  CHECK(std::abs(j2.jet(CanonWord{{1}, {}, 0}) - std::conj(z[0])) < 1e-12);

  // f = t: f_1 = i zbar_1, f_0 = 1
  auto j3 = jets_of(Parsed("t"), z, t);
  CHECK(std::abs(j3.jet(CanonWord{{1}, {}, 0}) -
                 std::complex<double>(0, 1) * std::conj(z[0])) < 1e-12);
  CHECK(std::abs(j3.jet(CanonWord{{}, {}, 1}) - 1.0) < 1e-12);
}

TEST_CASE("hermitian symmetry of mixed jets for random smooth functions") {
  std::vector<Parsed> fdefs;
  fdefs.emplace_back("exp(x1*y2 - t) + x2^2");
  fdefs.emplace_back("log(4 + x1^2 + y1^2 + t^2)");
  fdefs.emplace_back("sqrt(1 + abs2(x1 + i*y1 + t))");
  Rng rng(404);
  for (const auto& p : fdefs) {
    for (int k = 0; k < 5; ++k) {
      std::vector<std::complex<double>> z{{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                          {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
      double t = rng.uniform(-1, 1);
      auto jets = jets_of(p, z, t);
      REQUIRE(jets.commutator_defect() <= 1e-9);
      // conj(f_a) = f_abar for real-valued f
      for (std::uint8_t a = 1; a <= 2; ++a) {
        auto fa = jets.jet(CanonWord{{a}, {}, 0});
        auto fab = jets.jet(CanonWord{{}, {a}, 0});
        REQUIRE(std::abs(std::conj(fa) - fab) <= 1e-9 * std::max(1.0, std::abs(fa)));
      }
    }
  }
}

TEST_CASE("finite differences agree with the Taylor data") {
  std::vector<std::complex<double>> z{{0.35, -0.15}};
  double t = 0.45;

  // cubics are exact for the central stencils
  Parsed poly("x1^3 + 2*x1*y1*t - t^2");
  auto r1 = fd_crosscheck(poly.ast, poly.text, z, t);
  CHECK(r1.max_rel_order1 <= 1e-9);
  CHECK(r1.max_rel_order2 <= 1e-7);

  Parsed comp("exp(2*log(1 + x1^2 + y1^2) - t)");
  auto r2 = fd_crosscheck(comp.ast, comp.text, z, t);
  CHECK(r2.max_rel_order1 <= 1e-6);
  CHECK(r2.max_rel_order2 <= 1e-6);

  Parsed cst("5");
  auto r3 = fd_crosscheck(cst.ast, cst.text, z, t);
  CHECK(r3.max_rel_order1 == 0.0);
  CHECK(r3.max_rel_order2 == 0.0);
}

TEST_CASE("numeric residual of the constant function is -n") {
  // f = 0: |df|^2 = 0, e^{2f} = 1, Delta_b f = 0
  for (int n = 1; n <= 2; ++n) {
    std::vector<std::complex<double>> z(n, {0.2, 0.1});
    Parsed zero("0");
    auto res = numeric_residual(jets_of(zero, z, 0.3));
    CHECK(res.residual16 == doctest::Approx(-double(n)).epsilon(1e-12));
  }
}

namespace {

// f = (1/n) log u - log 2 for the solution with mu = 0, lambda = i;
// u = 2^n / |w|^n so f = -(1/2) log(abs2(w))
std::string family_f_expr(int n) {
  std::ostringstream os;
  os << "(-1/2) * log(abs2(t + i*(";
  for (int a = 1; a <= n; ++a) {
    if (a > 1) os << " + ";
    os << "x" << a << "^2 + y" << a << "^2";
  }
  os << " + 1)))";
  return os.str();
}

}  // namespace

TEST_CASE("numeric residual vanishes on a family member and not on a bump") {
  Rng rng(11);
  for (int n = 1; n <= 2; ++n) {
    Parsed f(family_f_expr(n));
    for (int k = 0; k < 10; ++k) {
      std::vector<std::complex<double>> z;
      for (int a = 0; a < n; ++a) z.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      double t = rng.uniform(-1, 1);
      auto res = numeric_residual(jets_of(f, z, t));
      REQUIRE(std::abs(res.residual16) <= 1e-9);
      REQUIRE(res.tensorD <= 1e-9);
      REQUIRE(res.tensorE <= 1e-9);
      REQUIRE(res.tensorG <= 1e-9);
    }
    // perturbed: u -> u (1 + |z|^2/1000) is no longer a solution
    std::string pert = "(1/" + std::to_string(n) + ") * log((1 + (x1^2+y1^2)/1000)) + " +
                       family_f_expr(n);
    Parsed g(pert);
    std::vector<std::complex<double>> z(n, {0.5, 0.5});
    auto res = numeric_residual(jets_of(g, z, 0.25));
    CHECK(std::abs(res.residual16) > 1e-6);
  }
}

TEST_CASE("AD jets match the exact closed-form jets") {
  Rng rng(606);
  auto sol = ClosedFormSolution::make(
      2, {GaussianRational(rat(1, 2), rat(-1, 3)), GaussianRational(rat(1, 4), rat(0))},
      GaussianRational(rat(1, 3), rat(2)), Pairing::MuDotZ);
  ExactJetEvaluator exact(sol, 3);

  // f through the generic expression path
  // f = (1/n) log u - log 2 = (1/2) log(N / abs2(w)) - log(2) for n = 2
  std::ostringstream os;
  os << "(1/2) * log(" << rat_str(sol.N()) << " / abs2(t + i*(x1^2+y1^2+x2^2+y2^2)"
     << " + (" << rat_str(sol.mu()[0].re) << " + i*(" << rat_str(sol.mu()[0].im)
     << "))*(x1 + i*y1) + (" << rat_str(sol.mu()[1].re) << ")*(x2 + i*y2) + "
     << rat_str(sol.lambda().re) << " + i*(" << rat_str(sol.lambda().im) << ")))"
     << " - log(2)";
  Parsed f(os.str());

  for (int k = 0; k < 5; ++k) {
    HPoint p;
    for (int a = 0; a < 2; ++a) p.z.push_back(rng.gaussian(3));
    p.t = rng.rational(3);
    auto jv = exact.eval(p);

    std::vector<std::complex<double>> z;
    for (const auto& c : p.z) z.push_back(c.to_complex());
    auto jets = jets_of(f, z, rat_double(p.t));

    for (const auto& [word, val] : jv.jets) {
      std::complex<double> expect = val.to_complex();
      std::complex<double> got = jets.jet(word);
      double scale = std::max(1.0, std::abs(expect));
      REQUIRE(std::abs(got - expect) <= 1e-9 * scale);
    }
  }
}
