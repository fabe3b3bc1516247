#pragma once

#include <array>
#include <memory>
#include <string>

#include "crlab/jetexpr.hpp"

namespace crlab {

// Whether m is carried formally (one run certifies the whole family) or
// substituted by an exact rational.
struct MMode {
  bool formal = true;
  Rational value{0};

  static MMode formal_m() { return MMode{}; }
  static MMode at(Rational v) { return MMode{false, std::move(v)}; }

  ParamPoly poly() const {
    return formal ? ParamPoly::param(Param::M)
                  : ParamPoly::constant(GaussianRational(value));
  }
  // coeff * m as an affine exponent
  AffineExponent exponent(const Rational& coeff) const {
    if (formal) return AffineExponent::of_param(Param::M, coeff);
    return AffineExponent(coeff * value);
  }
  std::string str() const { return formal ? "formal" : rat_str(value); }
};

// Tracked nonzero denominator factors of the c-coefficients:
// h, h - m f0^2 and (5-3m) h - m(1+m) f0^2. All three are positive since
// 0 <= |f_0| < |g|.
enum class DenFactor : std::size_t { H = 0, HmF = 1, K = 2 };

struct FactorSet {
  std::array<JetExpr, 3> poly;
};

// Formal fraction over the tracked factor set; addition goes through the
// factor-exponent lcm, so no division ever happens.
struct Quot {
  JetExpr num;
  std::array<unsigned, 3> den{0, 0, 0};

  static Quot from(JetExpr e) { return Quot{std::move(e), {0, 0, 0}}; }
};

// H^a HmF^b K^c as an expanded polynomial, assembled small-first.
JetExpr factors_product(const FactorSet& fs, const std::array<unsigned, 3>& pow);

Quot quot_add(const FactorSet& fs, const Quot& a, const Quot& b);
Quot quot_sub(const FactorSet& fs, const Quot& a, const Quot& b);
Quot quot_mul(const Quot& a, const Quot& b);
Quot quot_neg(const Quot& a);
Quot quot_conj(const Quot& a);  // factors are real
Quot quot_scale(const Quot& a, const ParamPoly& c);
// Numerator after aligning on the common denominator (zero test target).
JetExpr quot_residual_num(const FactorSet& fs, const Quot& a);
std::complex<double> quot_eval_double(const FactorSet& fs, const Quot& a, const EvalDouble& v);

// Everything needed to write the c1..c6 coefficients over some context:
// the parameter m, and the expanded polynomials h, s and the symbol f0.
struct CoeffBasis {
  const CRContext* ctx = nullptr;
  ParamPoly m;
  JetExpr h;
  JetExpr s;
  JetExpr f0;

  FactorSet factors() const;
  // c_i = c_num(i) / (H^a HmF^b K^c with (a,b,c) = c_den(i)); kept in lowest
  // terms so products of coefficients clear with small denominators.
  JetExpr c_num(int i) const;
  static std::array<unsigned, 3> c_den(int i);
};

// c1..c6 of the divergence formula, with sqrt(|g|^2 - f0^2) replaced by s.
Quot coeff_c(const CoeffBasis& basis, int i);

// Named quantities of the CR Yamabe calculus over a Heisenberg context.
class Quantities {
public:
  Quantities(std::shared_ptr<const CRContext> ctx, MMode m);

  const CRContext& ctx() const { return *ctx_; }
  std::shared_ptr<const CRContext> ctx_ptr() const { return ctx_; }
  int n() const { return ctx_->n(); }
  const MMode& m_mode() const { return m_; }

  JetExpr fh(int a) const;  // f_alpha
  JetExpr fa(int a) const;  // f_alphabar
  JetExpr f0() const;
  JetExpr phi() const;
  JetExpr phib(int a) const;  // phi_alphabar

  JetExpr e2f() const;
  JetExpr grad2() const;  // |df|^2
  JetExpr s() const;      // |df|^2 + e^{2f}
  JetExpr g() const;
  JetExpr gbar() const;
  JetExpr h() const;  // |g|^2 expanded

  JetExpr D(int a, int b) const;     // D_{alpha beta}
  JetExpr E(int a, int b) const;     // E_{alpha betabar}
  JetExpr Dv(int a) const;           // D_alpha
  JetExpr Ev(int a) const;           // E_alpha
  JetExpr Gv(int a) const;           // G_alpha
  JetExpr Dvb(int a) const { return Dv(a).conjugated(); }
  JetExpr Evb(int a) const { return Ev(a).conjugated(); }
  JetExpr Gvb(int a) const { return Gv(a).conjugated(); }

  // e^{(2n+m-2)f} |g|^{-m}
  JetExpr weight() const;
  // e^{2(n-1)f}
  JetExpr weight_jl() const;
  // flux entry of the divergence formula: g(D_a+E_a) - i f0 (D_a - 3E_a + 3G_a)
  JetExpr flux(int a) const;

  JetExpr A_f() const;

  CoeffBasis coeff_basis() const;

  // |V|^2 = sum_a V_a conj(V_a) for a family built by the callback.
  template <class F>
  JetExpr norm2(F&& component) const {
    JetExpr sum(ctx_.get());
    for (int a = 1; a <= n(); ++a) {
      JetExpr v = component(a);
      sum += v * v.conjugated();
    }
    return sum;
  }

private:
  std::shared_ptr<const CRContext> ctx_;
  MMode m_;
};

// The completion-of-squares playground: one free component of (D, E, G) and
// free reals f0, s over CRContext::free_quadratic().
class PsiForms {
public:
  explicit PsiForms(MMode m);

  const CRContext& ctx() const { return *ctx_; }
  std::shared_ptr<const CRContext> ctx_ptr() const { return ctx_; }
  const MMode& m_mode() const { return m_; }

  JetExpr D() const { return sym("D"); }
  JetExpr Db() const { return sym("Db"); }
  JetExpr E() const { return sym("E"); }
  JetExpr Eb() const { return sym("Eb"); }
  JetExpr G() const { return sym("G"); }
  JetExpr Gb() const { return sym("Gb"); }
  JetExpr f0() const { return sym("f0"); }
  JetExpr s() const { return sym("s"); }
  JetExpr h() const;  // s^2 + f0^2 expanded
  JetExpr g() const;  // s - i f0

  // psi as defined: four squares plus the m-correction cross term.
  JetExpr psi_definition() const;
  // psi expanded in the middle form (coefficients in h, f0, s, m).
  JetExpr psi_expanded() const;
  // completed squares c1|G + c2 D + c3 E|^2 + c4|D + c5 E|^2 + c6|E|^2.
  Quot psi_squares() const;
  // |G|^2 + |G+D|^2 + |G-E|^2 + |D+E|^2 (the m = 0 shape).
  JetExpr four_squares() const;

  CoeffBasis coeff_basis() const;

private:
  JetExpr sym(const std::string& name) const { return ctx_->jet(name, {}); }
  std::shared_ptr<const CRContext> ctx_;
  MMode m_;
};

}  // namespace crlab
