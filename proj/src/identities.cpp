#include "crlab/identities.hpp"

#include <chrono>

#include "crlab/sampling.hpp"

namespace crlab {

const char* identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::Lemma1: return "lemma1";
    case IdentityId::JLFormula: return "jl";
    case IdentityId::WeightDerivative: return "weight-derivative";
    case IdentityId::PsiSquares: return "psi-squares";
    case IdentityId::GDerivativePair: return "g-derivative";
    case IdentityId::Lem3Div: return "lem3-div";
    case IdentityId::Lem4Div: return "lem4-div";
    case IdentityId::Lem5Div: return "lem5-div";
  }
  return "?";
}

std::optional<IdentityId> identity_from_name(const std::string& name) {
  for (IdentityId id : all_identities())
    if (name == identity_name(id)) return id;
  return std::nullopt;
}

std::vector<IdentityId> all_identities() {
  return {IdentityId::Lemma1,          IdentityId::JLFormula,
          IdentityId::WeightDerivative, IdentityId::PsiSquares,
          IdentityId::GDerivativePair,  IdentityId::Lem3Div,
          IdentityId::Lem4Div,          IdentityId::Lem5Div};
}

const char* lemma1_term_name(int index) {
  switch (index) {
    case 1: return "e2f-tensor-norms";
    case 2: return "cubic-norm";
    case 3: return "minus-DE-norm";
    case 4: return "c1-square";
    case 5: return "c4-square";
    case 6: return "c6-square";
  }
  return "?";
}

std::optional<Mutation> Mutation::parse(const std::string& text) {
  for (int i = 1; i <= 6; ++i) {
    if (text == "c" + std::to_string(i) + "+1") return Mutation{Kind::CoeffPlusOne, i};
    if (text == "drop" + std::to_string(i)) return Mutation{Kind::DropTerm, i};
    if (text == std::string("drop:") + lemma1_term_name(i)) return Mutation{Kind::DropTerm, i};
  }
  return std::nullopt;
}

std::string Mutation::str() const {
  if (kind == Kind::CoeffPlusOne) return "c" + std::to_string(index) + "+1";
  return std::string("drop:") + lemma1_term_name(index);
}

namespace {

struct Component {
  std::string name;
  JetExpr residual;  // not yet normal-formed
  // JetExpr carries a raw context pointer; the component keeps the context
  // alive until the residual has been normal-formed.
  std::shared_ptr<const CRContext> ctx;
};

// Shared assembly of the divergence-formula sides; mutation hooks live here.
class Builder {
public:
  Builder(int n, const MMode& m)
      : ctx_(CRContext::heisenberg(n, true, true)), Q_(ctx_, m), m_(m) {}

  const CRContext& ctx() const { return *ctx_; }
  std::shared_ptr<const CRContext> ctx_ptr() const { return ctx_; }
  Quantities& Q() { return Q_; }

  JetExpr tensor_norms() {
    JetExpr sum(ctx_.get());
    for (int a = 1; a <= Q_.n(); ++a) {
      for (int b = 1; b <= Q_.n(); ++b) {
        JetExpr d = Q_.D(a, b);
        JetExpr e = Q_.E(a, b);
        sum += d * d.conjugated() + e * e.conjugated();
      }
    }
    return sum;
  }

  // sum_{a,b,c} |D_{ab} f_cbar + E_{acbar} f_b|^2
  JetExpr cubic_norm() {
    JetExpr sum(ctx_.get());
    for (int a = 1; a <= Q_.n(); ++a) {
      for (int b = 1; b <= Q_.n(); ++b) {
        for (int c = 1; c <= Q_.n(); ++c) {
          JetExpr t = Q_.D(a, b) * Q_.fa(c) + Q_.E(a, c) * Q_.fh(b);
          sum += t * t.conjugated();
        }
      }
    }
    return sum;
  }

  JetExpr de_norm() {
    return Q_.norm2([&](int a) { return Q_.Dv(a) + Q_.Ev(a); });
  }

  JetExpr lhs_divergence(const JetExpr& weight) {
    std::vector<JetExpr> v;
    for (int a = 1; a <= Q_.n(); ++a) v.push_back(weight * Q_.flux(a));
    return divergence_real(v);
  }

  // Right side of the divergence formula as a Quot, with optional mutation.
  // The squares are expanded bilinearly so that coefficient products are
  // multiplied out small-first and shared factors stay out of the common
  // denominator where the coefficients permit.
  Quot rhs(const Mutation* mutation) {
    CoeffBasis basis = Q_.coeff_basis();
    FactorSet fs = basis.factors();
    const int n = Q_.n();

    std::vector<JetExpr> Dv, Ev, Gv, Dvb, Evb, Gvb;
    for (int a = 1; a <= n; ++a) {
      Dv.push_back(Q_.Dv(a));
      Ev.push_back(Q_.Ev(a));
      Gv.push_back(Q_.Gv(a));
      Dvb.push_back(Dv.back().conjugated());
      Evb.push_back(Ev.back().conjugated());
      Gvb.push_back(Gv.back().conjugated());
    }
    auto pair_sum = [&](const std::vector<JetExpr>& x, const std::vector<JetExpr>& yb) {
      JetExpr s(ctx_.get());
      for (int a = 0; a < n; ++a) s += x[a] * yb[a];
      return s;
    };
    JetExpr S_GG = pair_sum(Gv, Gvb), S_DD = pair_sum(Dv, Dvb), S_EE = pair_sum(Ev, Evb);
    JetExpr S_GD = pair_sum(Gv, Dvb), S_DG = pair_sum(Dv, Gvb);
    JetExpr S_GE = pair_sum(Gv, Evb), S_EG = pair_sum(Ev, Gvb);
    JetExpr S_DE = pair_sum(Dv, Evb), S_ED = pair_sum(Ev, Dvb);

    auto mutated_coeff = [&](int i) {
      return mutation && mutation->kind == Mutation::Kind::CoeffPlusOne && mutation->index == i;
    };
    // c_i (+1 under mutation: the bump adds the denominator to the numerator)
    auto cquot = [&](int i) {
      Quot q{basis.c_num(i), CoeffBasis::c_den(i)};
      if (mutated_coeff(i)) q.num += factors_product(fs, q.den);
      return q;
    };
    auto dropped = [&](int k) {
      return mutation && mutation->kind == Mutation::Kind::DropTerm && mutation->index == k;
    };

    std::vector<Quot> groups;
    if (!dropped(1)) groups.push_back(Quot::from(Q_.e2f() * tensor_norms()));
    if (!dropped(2)) groups.push_back(Quot::from(cubic_norm()));
    if (!dropped(3)) groups.push_back(Quot::from(-de_norm()));

    if (!dropped(4)) {
      if (!mutated_coeff(1) && !mutated_coeff(2) && !mutated_coeff(3)) {
        // c1 = 3 HmF / H cancels one HmF against c2, c3 and their conjugates.
        JetExpr c2n = basis.c_num(2), c3n = basis.c_num(3);
        JetExpr c2nb = c2n.conjugated(), c3nb = c3n.conjugated();
        const JetExpr& hmf = fs.poly[static_cast<std::size_t>(DenFactor::HmF)];
        JetExpr p1 =
            (hmf * S_GG + c2nb * S_GD + c2n * S_DG + c3nb * S_GE + c3n * S_EG).scaled(grat(3));
        JetExpr p2 = (c2n * c2nb * S_DD + c2n * c3nb * S_DE + c3n * c2nb * S_ED +
                      c3n * c3nb * S_EE)
                         .scaled(grat(3));
        groups.push_back(quot_add(fs, Quot{p1, {1, 0, 0}}, Quot{p2, {1, 1, 0}}));
      } else {
        Quot c1 = cquot(1), c2 = cquot(2), c3 = cquot(3);
        Quot sum = Quot::from(S_GG);
        sum = quot_add(fs, sum, quot_mul(quot_conj(c2), Quot::from(S_GD)));
        sum = quot_add(fs, sum, quot_mul(c2, Quot::from(S_DG)));
        sum = quot_add(fs, sum, quot_mul(quot_conj(c3), Quot::from(S_GE)));
        sum = quot_add(fs, sum, quot_mul(c3, Quot::from(S_EG)));
        sum = quot_add(fs, sum, quot_mul(quot_mul(c2, quot_conj(c2)), Quot::from(S_DD)));
        sum = quot_add(fs, sum, quot_mul(quot_mul(c2, quot_conj(c3)), Quot::from(S_DE)));
        sum = quot_add(fs, sum, quot_mul(quot_mul(c3, quot_conj(c2)), Quot::from(S_ED)));
        sum = quot_add(fs, sum, quot_mul(quot_mul(c3, quot_conj(c3)), Quot::from(S_EE)));
        groups.push_back(quot_mul(c1, sum));
      }
    }
    if (!dropped(5)) {
      Quot c4 = cquot(4), c5 = cquot(5);
      Quot sum = Quot::from(S_DD);
      sum = quot_add(fs, sum, quot_mul(quot_conj(c5), Quot::from(S_DE)));
      sum = quot_add(fs, sum, quot_mul(c5, Quot::from(S_ED)));
      sum = quot_add(fs, sum, quot_mul(quot_mul(c5, quot_conj(c5)), Quot::from(S_EE)));
      groups.push_back(quot_mul(c4, sum));
    }
    if (!dropped(6)) groups.push_back(quot_mul(cquot(6), Quot::from(S_EE)));

    // Fold largest denominator first: the accumulator is then never rescaled.
    std::sort(groups.begin(), groups.end(), [](const Quot& a, const Quot& b) {
      return a.den[0] + a.den[1] + a.den[2] > b.den[0] + b.den[1] + b.den[2];
    });
    Quot total = Quot::from(JetExpr::zero(*ctx_));
    for (const Quot& g : groups) total = quot_add(fs, total, g);
    return quot_mul(Quot::from(Q_.weight()), total);
  }

  FactorSet factors() { return Q_.coeff_basis().factors(); }

private:
  std::shared_ptr<const CRContext> ctx_;
  Quantities Q_;
  MMode m_;
};

std::vector<Component> build_lemma1(int n, const MMode& m, const Mutation* mutation) {
  Builder b(n, m);
  JetExpr lhs = b.lhs_divergence(b.Q().weight());
  FactorSet fs = b.factors();
  Quot residual = quot_sub(fs, Quot::from(lhs), b.rhs(mutation));
  return {{"lemma1", residual.num, b.ctx_ptr()}};
}

std::vector<Component> build_jl(int n, const MMode& m) {
  Builder b(n, m);
  Quantities& Q = b.Q();
  JetExpr W = Q.weight_jl();
  JetExpr lhs = b.lhs_divergence(W);
  JetExpr squares = Q.norm2([&](int a) { return Q.Gv(a); }) +
                    Q.norm2([&](int a) { return Q.Gv(a) + Q.Dv(a); }) +
                    Q.norm2([&](int a) { return Q.Gv(a) - Q.Ev(a); });
  JetExpr rhs = W * (Q.e2f() * b.tensor_norms() + squares + b.cubic_norm());
  return {{"jl", lhs - rhs, b.ctx_ptr()}};
}

std::vector<Component> build_weight_derivative(int n, const MMode& m) {
  Builder b(n, m);
  Quantities& Q = b.Q();
  const CRContext& ctx = b.ctx();
  ParamPoly mp = m.poly();
  AffineExponent em = m.exponent(rat(1));
  AffineExponent hm = m.exponent(rat(-1, 2));
  JetExpr wexpr = ctx.ef(em).times_h(hm);
  JetExpr g = Q.g(), gb = Q.gbar();

  std::vector<Component> out;
  for (int a = 1; a <= n; ++a) {
    JetExpr lhs = wexpr.derived(an(static_cast<std::uint8_t>(a)));
    JetExpr core = Q.s() * (Q.Dvb(a) + Q.Evb(a)) +
                   (Q.f0() * Q.Gvb(a)).scaled(GaussianRational::i());
    JetExpr rhs = -(ctx.ef(em).times_h(hm + AffineExponent(rat(-1))) * core).scaled(mp);
    out.push_back({"alpha=" + std::to_string(a), lhs - rhs, b.ctx_ptr()});

    // intermediate form: m e^{mf}|g|^{-m} (f_abar - |g|^{-2}(gbar g_abar + g gbar_abar)/2)
    JetExpr inner = Q.fa(a) -
                    ((gb * g.derived(an(static_cast<std::uint8_t>(a))) +
                      g * gb.derived(an(static_cast<std::uint8_t>(a))))
                         .times_h(AffineExponent(rat(-1)))
                         .scaled(grat(1, 2)));
    JetExpr mid = (wexpr * inner).scaled(mp);
    out.push_back({"mid-alpha=" + std::to_string(a), lhs - mid, b.ctx_ptr()});
  }
  return out;
}

std::vector<Component> build_g_derivative(int n, const MMode& m) {
  Builder b(n, m);
  Quantities& Q = b.Q();
  JetExpr g = Q.g(), gb = Q.gbar();
  std::vector<Component> out;
  for (int a = 1; a <= n; ++a) {
    JetExpr r1 = g.derived(an(static_cast<std::uint8_t>(a))) -
                 (Q.Dvb(a) + Q.Evb(a) + Q.Gvb(a));
    JetExpr r2 = gb.derived(an(static_cast<std::uint8_t>(a))) -
                 (Q.Dvb(a) + Q.Evb(a) - Q.Gvb(a) + (gb * Q.fa(a)).scaled(grat(2)));
    out.push_back({"g-alpha=" + std::to_string(a), r1, b.ctx_ptr()});
    out.push_back({"gbar-alpha=" + std::to_string(a), r2, b.ctx_ptr()});
  }
  return out;
}

std::vector<Component> build_psi_squares(const MMode& m) {
  PsiForms P(m);
  FactorSet fs = P.coeff_basis().factors();
  std::vector<Component> out;
  out.push_back({"definition-vs-expanded", P.psi_definition() - P.psi_expanded(), P.ctx_ptr()});
  Quot r = quot_sub(fs, Quot::from(P.psi_expanded()), P.psi_squares());
  out.push_back({"expanded-vs-squares", r.num, P.ctx_ptr()});

  // m = 0 specialization: the squares reduce to the four-square shape.
  PsiForms P0(MMode::at(rat(0)));
  FactorSet fs0 = P0.coeff_basis().factors();
  Quot r0 = quot_sub(fs0, Quot::from(P0.four_squares()), P0.psi_squares());
  out.push_back({"m0-four-squares", r0.num, P0.ctx_ptr()});
  return out;
}

std::vector<Component> build_lem3(int n, const MMode& m) {
  Builder b(n, m);
  Quantities& Q = b.Q();
  const CRContext& ctx = b.ctx();
  ParamPoly mp = m.poly();
  JetExpr W = Q.weight();
  JetExpr phi = Q.phi();
  JetExpr f0 = Q.f0();

  std::vector<JetExpr> v;
  for (int a = 1; a <= n; ++a) v.push_back(W * f0 * Q.fh(a) * phi);
  JetExpr lhs = divergence_imag(v);

  JetExpr first =
      W * (f0 * f0).scaled(grat(n)) * phi -
      W * (Q.e2f() * Q.grad2() + Q.grad2() * Q.grad2()) * phi;

  JetExpr hmf = Q.h() - (f0 * f0).scaled(mp);
  JetExpr inner(&ctx);
  for (int a = 1; a <= n; ++a) {
    JetExpr bracket = (hmf * Q.Gvb(a)).scaled(GaussianRational::i()) -
                      (f0 * Q.s() * (Q.Dvb(a) + Q.Evb(a))).scaled(mp);
    inner += W * Q.fh(a) *
             (bracket.times_h(AffineExponent(rat(-1))) * phi + f0 * Q.phib(a));
  }
  JetExpr rhs = first + inner.im_part();

  std::vector<Component> out;
  out.push_back({"lem3-div", lhs - rhs, b.ctx_ptr()});
  // observation used in the proof: f_{0 abar} = i Gbar_a - i gbar f_abar
  for (int a = 1; a <= n; ++a) {
    JetExpr obs = ctx.jet("f", {tt(), an(static_cast<std::uint8_t>(a))}) -
                  (Q.Gvb(a) - Q.gbar() * Q.fa(a)).scaled(GaussianRational::i());
    out.push_back({"f0bar-obs-alpha=" + std::to_string(a), obs, b.ctx_ptr()});
  }
  return out;
}

std::vector<Component> build_lem4(int n, const MMode& m) {
  Builder b(n, m);
  Quantities& Q = b.Q();
  const CRContext& ctx = b.ctx();
  ParamPoly mp = m.poly();
  JetExpr W = Q.weight();
  JetExpr phi = Q.phi();
  JetExpr grad2 = Q.grad2();

  std::vector<JetExpr> v;
  for (int a = 1; a <= n; ++a) v.push_back(W * grad2 * Q.fh(a) * phi);
  JetExpr lhs = divergence_real(v);

  JetExpr first = W * (grad2 * grad2).scaled(grat(n - 1)) * phi -
                  W * (Q.e2f() * grad2).scaled(grat(n + 1)) * phi;

  JetExpr inner(&ctx);
  for (int a = 1; a <= n; ++a) {
    JetExpr coef = Q.h() - (Q.e2f() * grad2 + grad2 * grad2).scaled(mp);
    JetExpr bracket = coef * (Q.Dvb(a) + Q.Evb(a)) -
                      (grad2 * Q.f0() * Q.Gvb(a)).scaled(mp).scaled(GaussianRational::i());
    inner += W * Q.fh(a) *
             (bracket.times_h(AffineExponent(rat(-1))) * phi + grad2 * Q.phib(a));
  }
  JetExpr rhs = first + inner.re_part();

  std::vector<Component> out;
  out.push_back({"lem4-div", lhs - rhs, b.ctx_ptr()});

  // f_{abar bbar} f_a f_b = f_a Dbar_a + 2 |df|^4
  JetExpr lhsA(&ctx);
  for (int a = 1; a <= n; ++a)
    for (int bb = 1; bb <= n; ++bb)
      lhsA += ctx.jet("f", {an(static_cast<std::uint8_t>(a)), an(static_cast<std::uint8_t>(bb))}) *
              Q.fh(a) * Q.fh(bb);
  JetExpr rhsA(&ctx);
  for (int a = 1; a <= n; ++a) rhsA += Q.fh(a) * Q.Dvb(a);
  rhsA += (grad2 * grad2).scaled(grat(2));
  out.push_back({"aux-D", lhsA - rhsA, b.ctx_ptr()});

  // f_{b abar} f_a f_bbar = f_a Ebar_a - g |df|^2
  JetExpr lhsB(&ctx);
  for (int a = 1; a <= n; ++a)
    for (int bb = 1; bb <= n; ++bb)
      lhsB += ctx.jet("f", {ho(static_cast<std::uint8_t>(bb)), an(static_cast<std::uint8_t>(a))}) *
              Q.fh(a) * Q.fa(bb);
  JetExpr rhsB(&ctx);
  for (int a = 1; a <= n; ++a) rhsB += Q.fh(a) * Q.Evb(a);
  rhsB -= Q.g() * grad2;
  out.push_back({"aux-E", lhsB - rhsB, b.ctx_ptr()});
  return out;
}

std::vector<Component> build_lem5(int n, const MMode& m) {
  Builder b(n, m);
  Quantities& Q = b.Q();
  const CRContext& ctx = b.ctx();
  AffineExponent eq = AffineExponent::of_param(Param::Q);
  AffineExponent th = AffineExponent::of_param(Param::Theta);

  std::vector<JetExpr> v;
  for (int a = 1; a <= n; ++a)
    v.push_back(ctx.ef(eq).times_eta(th) * Q.fh(a));
  JetExpr lhs = divergence_real(v);

  ParamPoly q_minus_n = ParamPoly::param(Param::Q) - ParamPoly::constant(n);
  JetExpr rhs1 = ctx.ef(eq).times_eta(th) *
                 (Q.grad2().scaled(q_minus_n) - Q.e2f().scaled(grat(n)));
  JetExpr inner(&ctx);
  for (int a = 1; a <= n; ++a)
    inner += ctx.ef(eq).times_eta(th + AffineExponent(rat(-1))) * Q.fh(a) *
             ctx.jet("eta", {an(static_cast<std::uint8_t>(a))});
  JetExpr rhs2 = inner.re_part().scaled(ParamPoly::param(Param::Theta));

  return {{"lem5-div", lhs - (rhs1 + rhs2), b.ctx_ptr()}};
}

}  // namespace

VerificationReport verify_identity(IdentityId id, int n, const MMode& m,
                                   const Mutation* mutation) {
  VerificationReport rep;
  rep.identity = identity_name(id);
  rep.n = n;
  rep.m_mode = m.str();
  if (mutation) rep.mutation = mutation->str();

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (mutation && id != IdentityId::Lemma1)
      throw ParamError("mutations apply to lemma1 only");

    std::vector<Component> comps;
    switch (id) {
      case IdentityId::Lemma1: comps = build_lemma1(n, m, mutation); break;
      case IdentityId::JLFormula: comps = build_jl(n, m); break;
      case IdentityId::WeightDerivative: comps = build_weight_derivative(n, m); break;
      case IdentityId::PsiSquares: comps = build_psi_squares(m); break;
      case IdentityId::GDerivativePair: comps = build_g_derivative(n, m); break;
      case IdentityId::Lem3Div: comps = build_lem3(n, m); break;
      case IdentityId::Lem4Div: comps = build_lem4(n, m); break;
      case IdentityId::Lem5Div: comps = build_lem5(n, m); break;
    }

    rep.components = comps.size();
    rep.zero = true;
    for (const auto& c : comps) {
      JetExpr nf = c.residual.nf();
      if (!nf.is_zero()) {
        rep.zero = false;
        rep.residual_terms += nf.term_count();
        if (rep.witness.empty()) rep.witness = c.name + ": " + nf.witness();
      }
    }
  } catch (const Error& e) {
    rep.error = e.what();
    rep.zero = false;
  }
  auto t1 = std::chrono::steady_clock::now();
  rep.elapsed_sec = std::chrono::duration<double>(t1 - t0).count();
  return rep;
}

PsiNumericReport psi_numeric_check(std::uint64_t seed, std::size_t samples) {
  PsiNumericReport rep;
  rep.seed = seed;
  rep.samples = samples;
  Rng rng(seed);

  MMode m = MMode::formal_m();
  PsiForms P(m);
  const CRContext& ctx = P.ctx();
  CoeffBasis basis = P.coeff_basis();
  FactorSet fs = basis.factors();
  JetExpr def = P.psi_definition();
  std::array<Quot, 7> cs;
  for (int i = 1; i <= 6; ++i) cs[i] = coeff_c(basis, i);

  for (std::size_t k = 0; k < samples; ++k) {
    EvalDouble v;
    v.params[static_cast<std::size_t>(Param::M)] = rat_double(rng.rational01(50));
    auto set = [&](const std::string& name, std::complex<double> val) {
      v.symbols[ctx.symbol_id(ctx.field_index(name), CanonWord{})] = val;
    };
    auto cval = [&]() {
      return std::complex<double>(rat_double(rng.rational(10)), rat_double(rng.rational(10)));
    };
    std::complex<double> dv = cval(), ev = cval(), gv = cval();
    set("D", dv);
    set("Db", std::conj(dv));
    set("E", ev);
    set("Eb", std::conj(ev));
    set("G", gv);
    set("Gb", std::conj(gv));
    double f0v = rat_double(rng.rational(10));
    double sv = rat_double(rng.rational_positive(10));
    set("f0", f0v);
    set("s", sv);

    std::complex<double> lhs = def.eval_double(v);
    // evaluate the coefficients first, then compose the squares; this keeps
    // every intermediate at the sample scale
    std::complex<double> c[7];
    for (int i = 1; i <= 6; ++i) c[i] = quot_eval_double(fs, cs[i], v);
    std::complex<double> x1 = gv + c[2] * dv + c[3] * ev;
    std::complex<double> x2 = dv + c[5] * ev;
    std::complex<double> rhs =
        c[1] * std::norm(x1) + c[4] * std::norm(x2) + c[6] * std::norm(ev);
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    double err = std::abs(lhs - rhs) / scale;
    if (err > rep.max_rel_err) rep.max_rel_err = err;
  }
  return rep;
}

}  // namespace crlab
