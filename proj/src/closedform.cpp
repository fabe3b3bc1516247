#include "crlab/closedform.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "crlab/error.hpp"
#include "crlab/sampling.hpp"

namespace crlab {

const char* pairing_name(Pairing p) { return p == Pairing::MuDotZ ? "mu-dot-z" : "mu-dot-zbar"; }

Pairing pairing_from_name(const std::string& name) {
  if (name == "mu-dot-z") return Pairing::MuDotZ;
  if (name == "mu-dot-zbar") return Pairing::MuDotZBar;
  throw ParamError("unknown pairing convention '" + name + "'");
}

// ---------------------------------------------------------------------------
// ClosedFormSolution
// ---------------------------------------------------------------------------

ClosedFormSolution ClosedFormSolution::make(int n, std::vector<GaussianRational> mu,
                                            GaussianRational lambda, Pairing pairing) {
  if (n < 1) throw ParamError("n must be >= 1");
  if (static_cast<int>(mu.size()) != n)
    throw ParamError("mu must have exactly n entries");
  Rational mu2(0);
  for (const auto& m : mu) mu2 += m.abs2();
  Rational N = 4 * lambda.im - mu2;
  if (!(N > 0))
    throw ParamError("invalid parameters: need |mu|^2 < 4 Im(lambda), got |mu|^2 = " +
                     rat_str(mu2) + ", 4 Im(lambda) = " + rat_str(4 * lambda.im));
  ClosedFormSolution s;
  s.n_ = n;
  s.mu_ = std::move(mu);
  s.lambda_ = std::move(lambda);
  s.pairing_ = pairing;
  s.N_ = std::move(N);
  return s;
}

GaussianRational ClosedFormSolution::eval_w(const HPoint& p) const {
  if (static_cast<int>(p.z.size()) != n_) throw ParamError("point dimension mismatch");
  GaussianRational w(p.t);
  Rational z2(0);
  for (const auto& zc : p.z) z2 += zc.abs2();
  w += GaussianRational(Rational(0), z2);  // i |z|^2
  for (int a = 0; a < n_; ++a)
    w += mu_[a] * (pairing_ == Pairing::MuDotZ ? p.z[a] : p.z[a].conj());
  w += lambda_;
  return w;
}

Rational ClosedFormSolution::eval_u_squared(const HPoint& p) const {
  GaussianRational w = eval_w(p);
  Rational w2 = w.abs2();
  if (w2 == 0) throw Error("internal: |w| = 0 at an admissible point");
  return rat_pow(N_, n_) / rat_pow(w2, n_);
}

double ClosedFormSolution::eval_u(const HPoint& p) const {
  return std::sqrt(rat_double(eval_u_squared(p)));
}

Rational ClosedFormSolution::eval_e2f(const HPoint& p) const {
  GaussianRational w = eval_w(p);
  Rational w2 = w.abs2();
  if (w2 == 0) throw Error("internal: |w| = 0 at an admissible point");
  return N_ / (4 * w2);
}

std::string ClosedFormSolution::to_config() const {
  std::ostringstream os;
  os << "# extremal solution parameters\n";
  os << "n = " << n_ << "\n";
  os << "convention = " << pairing_name(pairing_) << "\n";
  for (int a = 0; a < n_; ++a) {
    os << "mu" << (a + 1) << ".re = " << rat_str(mu_[a].re) << "\n";
    os << "mu" << (a + 1) << ".im = " << rat_str(mu_[a].im) << "\n";
  }
  os << "lambda.re = " << rat_str(lambda_.re) << "\n";
  os << "lambda.im = " << rat_str(lambda_.im) << "\n";
  return os.str();
}

ClosedFormSolution ClosedFormSolution::from_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParamError("solution config is missing key '" + k + "'");
    return it->second;
  };
  int n = std::stoi(need("n"));
  Pairing pairing = kv.count("convention") ? pairing_from_name(kv.at("convention"))
                                           : Pairing::MuDotZ;
  std::vector<GaussianRational> mu;
  for (int a = 1; a <= n; ++a) {
    std::string base = "mu" + std::to_string(a);
    Rational re = kv.count(base + ".re") ? rat_from_string(kv.at(base + ".re")) : Rational(0);
    Rational im = kv.count(base + ".im") ? rat_from_string(kv.at(base + ".im")) : Rational(0);
    mu.emplace_back(re, im);
  }
  GaussianRational lambda(rat_from_string(need("lambda.re")), rat_from_string(need("lambda.im")));
  return make(n, std::move(mu), lambda, pairing);
}

// ---------------------------------------------------------------------------
// CoordPoly
// ---------------------------------------------------------------------------

void CoordPoly::add_term(const Deg& d, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoordPoly CoordPoly::constant(std::size_t nvars, GaussianRational c) {
  CoordPoly p(nvars);
  p.add_term(Deg(nvars, 0), c);
  return p;
}

CoordPoly CoordPoly::variable(std::size_t nvars, std::size_t idx) {
  CoordPoly p(nvars);
  Deg d(nvars, 0);
  d.at(idx) = 1;
  p.add_term(d, GaussianRational(1));
  return p;
}

CoordPoly CoordPoly::operator-() const {
  CoordPoly r(nvars_);
  for (const auto& [d, c] : terms_) r.terms_.emplace(d, -c);
  return r;
}

CoordPoly& CoordPoly::operator+=(const CoordPoly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

CoordPoly operator*(const CoordPoly& a, const CoordPoly& b) {
  CoordPoly r(a.nvars_ ? a.nvars_ : b.nvars_);
  for (const auto& [da, ca] : a.terms_) {
    for (const auto& [db, cb] : b.terms_) {
      CoordPoly::Deg d(r.nvars_, 0);
      for (std::size_t k = 0; k < r.nvars_; ++k)
        d[k] = static_cast<std::uint8_t>(da[k] + db[k]);
      r.add_term(d, ca * cb);
    }
  }
  return r;
}

CoordPoly CoordPoly::scaled(const GaussianRational& c) const {
  CoordPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [d, v] : terms_) r.terms_.emplace(d, v * c);
  return r;
}

CoordPoly CoordPoly::derivative(std::size_t var) const {
  CoordPoly r(nvars_);
  for (const auto& [d, c] : terms_) {
    if (d[var] == 0) continue;
    Deg nd = d;
    --nd[var];
    r.add_term(nd, c * grat(d[var]));
  }
  return r;
}

GaussianRational CoordPoly::eval(const std::vector<GaussianRational>& vals) const {
  GaussianRational sum;
  for (const auto& [d, c] : terms_) {
    GaussianRational t = c;
    for (std::size_t k = 0; k < nvars_; ++k)
      for (std::uint8_t e = 0; e < d[k]; ++e) t *= vals[k];
    sum += t;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// WExpr
// ---------------------------------------------------------------------------

WExpr WExpr::from_poly(CoordPoly p) {
  WExpr e;
  if (!p.is_zero()) e.parts_.emplace(std::make_pair(0, 0), std::move(p));
  return e;
}

WExpr WExpr::w_inverse_pair(std::size_t nvars, int a, int b, GaussianRational coeff) {
  WExpr e;
  e.parts_.emplace(std::make_pair(a, b), CoordPoly::constant(nvars, std::move(coeff)));
  return e;
}

void WExpr::add(int a, int b, const CoordPoly& p) {
  if (p.is_zero()) return;
  auto key = std::make_pair(a, b);
  auto it = parts_.find(key);
  if (it == parts_.end()) {
    parts_.emplace(key, p);
  } else {
    it->second += p;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

WExpr WExpr::operator-() const {
  WExpr r;
  for (const auto& [k, p] : parts_) r.parts_.emplace(k, -p);
  return r;
}

WExpr& WExpr::operator+=(const WExpr& o) {
  for (const auto& [k, p] : o.parts_) add(k.first, k.second, p);
  return *this;
}

WExpr operator*(const WExpr& a, const WExpr& b) {
  WExpr r;
  for (const auto& [ka, pa] : a.parts_)
    for (const auto& [kb, pb] : b.parts_)
      r.add(ka.first + kb.first, ka.second + kb.second, pa * pb);
  return r;
}

WExpr WExpr::scaled(const GaussianRational& c) const {
  WExpr r;
  if (c.is_zero()) return r;
  for (const auto& [k, p] : parts_) r.parts_.emplace(k, p.scaled(c));
  return r;
}

// ---------------------------------------------------------------------------
// ExactJetEvaluator
// ---------------------------------------------------------------------------

namespace {

// canonical words of length <= cap over n indices, shortest first
std::vector<CanonWord> canonical_words(int n, int cap) {
  std::vector<CanonWord> out;
  std::vector<std::vector<std::uint8_t>> sets[4];
  for (int size = 0; size <= cap; ++size) {
    std::vector<std::vector<std::uint8_t>> cur;
    std::vector<std::uint8_t> tmp;
    std::function<void()> gen = [&]() {
      if (static_cast<int>(tmp.size()) == size) {
        cur.push_back(tmp);
        return;
      }
      std::uint8_t lo = tmp.empty() ? 1 : tmp.back();
      for (std::uint8_t a = lo; a <= n; ++a) {
        tmp.push_back(a);
        gen();
        tmp.pop_back();
      }
    };
    gen();
    sets[size] = std::move(cur);
  }
  for (int len = 1; len <= cap; ++len)
    for (int nh = 0; nh <= len; ++nh)
      for (int na = 0; na + nh <= len; ++na)
        for (const auto& hs : sets[nh])
          for (const auto& as : sets[na])
            out.push_back(CanonWord{hs, as, static_cast<std::uint8_t>(len - nh - na)});
  return out;
}

}  // namespace

CoordPoly ExactJetEvaluator::z_poly(std::size_t a) const {
  return CoordPoly::variable(nv_, a - 1);
}
CoordPoly ExactJetEvaluator::zb_poly(std::size_t a) const {
  return CoordPoly::variable(nv_, sol_.n() + a - 1);
}

ExactJetEvaluator::ExactJetEvaluator(const ClosedFormSolution& sol, int max_order)
    : sol_(sol), nv_(2 * static_cast<std::size_t>(sol.n()) + 1) {
  const int n = sol_.n();
  const std::size_t tvar = nv_ - 1;

  // w = t + i |z|^2 + <mu, z> + lambda
  w_poly_ = CoordPoly::variable(nv_, tvar);
  for (int a = 1; a <= n; ++a)
    w_poly_ += (z_poly(a) * zb_poly(a)).scaled(GaussianRational::i());
  for (int a = 1; a <= n; ++a) {
    CoordPoly zc = sol_.pairing() == Pairing::MuDotZ ? z_poly(a) : zb_poly(a);
    w_poly_ += zc.scaled(sol_.mu()[a - 1]);
  }
  w_poly_ += CoordPoly::constant(nv_, sol_.lambda());

  // wbar: conjugate coefficients, z <-> zbar
  wbar_poly_ = CoordPoly::variable(nv_, tvar);
  for (int a = 1; a <= n; ++a)
    wbar_poly_ += (z_poly(a) * zb_poly(a)).scaled(-GaussianRational::i());
  for (int a = 1; a <= n; ++a) {
    CoordPoly zc = sol_.pairing() == Pairing::MuDotZ ? zb_poly(a) : z_poly(a);
    wbar_poly_ += zc.scaled(sol_.mu()[a - 1].conj());
  }
  wbar_poly_ += CoordPoly::constant(nv_, sol_.lambda().conj());

  // Z_d on coordinate polynomials
  auto apply_z_poly = [&](const CoordPoly& p, Letter d) -> CoordPoly {
    const std::size_t zi = d.index ? d.index - 1 : 0;
    switch (d.kind) {
      case LetterKind::Holo:
        return p.derivative(zi) +
               (zb_poly(d.index) * p.derivative(tvar)).scaled(GaussianRational::i());
      case LetterKind::Anti:
        return p.derivative(n + zi) +
               (z_poly(d.index) * p.derivative(tvar)).scaled(-GaussianRational::i());
      case LetterKind::T:
        return p.derivative(tvar);
    }
    throw Error("unreachable letter kind");
  };

  std::vector<Letter> letters;
  for (int a = 1; a <= n; ++a) letters.push_back(ho(static_cast<std::uint8_t>(a)));
  for (int a = 1; a <= n; ++a) letters.push_back(an(static_cast<std::uint8_t>(a)));
  letters.push_back(tt());
  for (const Letter& d : letters) {
    zw_.push_back(apply_z_poly(w_poly_, d));
    zwbar_.push_back(apply_z_poly(wbar_poly_, d));
  }

  // e^{2f} = (N/4) w^{-1} wbar^{-1}
  e2f_ = WExpr::w_inverse_pair(nv_, 1, 1, GaussianRational(sol_.N() / 4));

  auto letter_idx = [&](Letter d) -> std::size_t {
    switch (d.kind) {
      case LetterKind::Holo: return d.index - 1;
      case LetterKind::Anti: return n + d.index - 1;
      default: return 2 * static_cast<std::size_t>(n);
    }
  };

  // seed jets: f_d = -1/2 (Z_d(w) w^{-1} + Z_d(wbar) wbar^{-1})
  auto seed = [&](Letter d) -> WExpr {
    std::size_t li = letter_idx(d);
    WExpr e;
    e += WExpr::w_inverse_pair(nv_, 1, 0, grat(-1, 2)) * WExpr::from_poly(zw_[li]);
    e += WExpr::w_inverse_pair(nv_, 0, 1, grat(-1, 2)) * WExpr::from_poly(zwbar_[li]);
    return e;
  };

  for (const CanonWord& w : canonical_words(n, max_order)) {
    WordSeq seq = w.app_seq();
    WExpr cur = seed(seq[0]);
    for (std::size_t k = 1; k < seq.size(); ++k) cur = apply_z(cur, seq[k]);
    jets_.emplace_back(w, std::move(cur));
  }
}

WExpr ExactJetEvaluator::apply_z(const WExpr& e, Letter d) const {
  const int n = sol_.n();
  const std::size_t tvar = nv_ - 1;
  std::size_t li;
  switch (d.kind) {
    case LetterKind::Holo: li = d.index - 1; break;
    case LetterKind::Anti: li = n + d.index - 1; break;
    default: li = 2 * static_cast<std::size_t>(n); break;
  }
  WExpr out;
  for (const auto& [key, p] : e.parts()) {
    const auto [a, b] = key;
    // Z_d(P)
    CoordPoly dp;
    switch (d.kind) {
      case LetterKind::Holo:
        dp = p.derivative(d.index - 1) +
             (zb_poly(d.index) * p.derivative(tvar)).scaled(GaussianRational::i());
        break;
      case LetterKind::Anti:
        dp = p.derivative(n + d.index - 1) +
             (z_poly(d.index) * p.derivative(tvar)).scaled(-GaussianRational::i());
        break;
      case LetterKind::T:
        dp = p.derivative(tvar);
        break;
    }
    out.add(a, b, dp);
    if (a != 0) out.add(a + 1, b, (p * zw_[li]).scaled(grat(-a)));
    if (b != 0) out.add(a, b + 1, (p * zwbar_[li]).scaled(grat(-b)));
  }
  return out;
}

GaussianRational ExactJetEvaluator::eval_wexpr(const WExpr& e,
                                               const std::vector<GaussianRational>& vals,
                                               const GaussianRational& wval) const {
  GaussianRational wbarval = wval.conj();
  GaussianRational sum;
  for (const auto& [key, p] : e.parts()) {
    GaussianRational t = p.eval(vals);
    for (int k = 0; k < key.first; ++k) t /= wval;
    for (int k = 0; k < key.second; ++k) t /= wbarval;
    sum += t;
  }
  return sum;
}

ExactJetEvaluator::JetValues ExactJetEvaluator::eval(const HPoint& p) const {
  if (static_cast<int>(p.z.size()) != sol_.n()) throw ParamError("point dimension mismatch");
  std::vector<GaussianRational> vals;
  for (const auto& zc : p.z) vals.push_back(zc);
  for (const auto& zc : p.z) vals.push_back(zc.conj());
  vals.emplace_back(p.t);

  GaussianRational wval = w_poly_.eval(vals);
  if (wval.is_zero()) throw Error("internal: |w| = 0 at an admissible point");

  JetValues out;
  out.w = wval;
  out.e2f = sol_.eval_e2f(p);
  for (const auto& [word, expr] : jets_) out.jets.emplace(word, eval_wexpr(expr, vals, wval));
  return out;
}

// ---------------------------------------------------------------------------
// Residuals and tensors
// ---------------------------------------------------------------------------

namespace {

GaussianRational jet(const ExactJetEvaluator::JetValues& v, const CanonWord& w) {
  auto it = v.jets.find(w);
  if (it == v.jets.end()) throw Error("internal: jet value missing");
  return it->second;
}

CanonWord word_h(std::uint8_t a) { return CanonWord{{a}, {}, 0}; }
CanonWord word_a(std::uint8_t a) { return CanonWord{{}, {a}, 0}; }
CanonWord word_t() { return CanonWord{{}, {}, 1}; }
CanonWord word_hh(std::uint8_t a, std::uint8_t b) {
  return CanonWord{{std::min(a, b), std::max(a, b)}, {}, 0};
}
CanonWord word_ha(std::uint8_t a, std::uint8_t b) { return CanonWord{{a}, {b}, 0}; }
CanonWord word_ht(std::uint8_t a) { return CanonWord{{a}, {}, 1}; }

GaussianRational grad2_of(const ExactJetEvaluator::JetValues& v, int n) {
  GaussianRational s;
  for (int a = 1; a <= n; ++a)
    s += jet(v, word_h(static_cast<std::uint8_t>(a))) *
         jet(v, word_a(static_cast<std::uint8_t>(a)));
  return s;
}

}  // namespace

GaussianRational residual_eq16(const ExactJetEvaluator::JetValues& v, int n) {
  // Delta_b f = -Re sum_a f_{a abar}
  GaussianRational tr;
  for (int a = 1; a <= n; ++a)
    tr += jet(v, word_ha(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(a)));
  GaussianRational lap(-tr.re);
  GaussianRational rhs = (grad2_of(v, n) + GaussianRational(v.e2f)) * grat(n);
  return lap - rhs;
}

GaussianRational residual_eq16_mutated(const ExactJetEvaluator::JetValues& v, int n) {
  GaussianRational tr;
  for (int a = 1; a <= n; ++a)
    tr += jet(v, word_ha(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(a)));
  GaussianRational lap(-tr.re);
  GaussianRational rhs = grad2_of(v, n) * grat(n) + GaussianRational(v.e2f) * grat(n + 1);
  return lap - rhs;
}

TensorValues tensors_at(const ExactJetEvaluator::JetValues& v, int n) {
  TensorValues out;
  out.D.assign(n, std::vector<GaussianRational>(n));
  out.E.assign(n, std::vector<GaussianRational>(n));
  out.G.assign(n, GaussianRational());

  GaussianRational trace;
  for (int a = 1; a <= n; ++a)
    trace += jet(v, word_ha(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(a)));

  GaussianRational g = grad2_of(v, n) + GaussianRational(v.e2f) -
                       GaussianRational::i() * jet(v, word_t());

  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      auto ua = static_cast<std::uint8_t>(a), ub = static_cast<std::uint8_t>(b);
      out.D[a - 1][b - 1] =
          jet(v, word_hh(ua, ub)) - grat(2) * jet(v, word_h(ua)) * jet(v, word_h(ub));
      out.E[a - 1][b - 1] = jet(v, word_ha(ua, ub));
      if (a == b) out.E[a - 1][b - 1] -= trace * grat(1, n);
    }
    auto ua = static_cast<std::uint8_t>(a);
    out.G[a - 1] = GaussianRational::i() * jet(v, word_ht(ua)) + g * jet(v, word_h(ua));
  }
  return out;
}

bool TensorValues::all_zero() const {
  for (const auto& row : D)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  for (const auto& row : E)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  for (const auto& x : G)
    if (!x.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Convention finding and decay
// ---------------------------------------------------------------------------

namespace {

ClosedFormSolution random_solution(int n, Rng& rng, Pairing pairing) {
  std::vector<GaussianRational> mu;
  Rational mu2(0);
  for (int a = 0; a < n; ++a) {
    GaussianRational m = rng.gaussian(4);
    mu2 += m.abs2();
    mu.push_back(std::move(m));
  }
  // Im(lambda) = |mu|^2/4 + positive margin
  Rational margin = rng.rational_positive(6);
  GaussianRational lambda(rng.rational(4), mu2 / 4 + margin);
  return ClosedFormSolution::make(n, std::move(mu), std::move(lambda), pairing);
}

HPoint random_point(int n, Rng& rng) {
  HPoint p;
  for (int a = 0; a < n; ++a) p.z.push_back(rng.gaussian(5));
  p.t = rng.rational(5);
  return p;
}

}  // namespace

ConventionFinding determine_pairing(int n, std::uint64_t seed, std::size_t trials) {
  ConventionFinding out;
  out.trials = trials;
  for (Pairing pairing : {Pairing::MuDotZ, Pairing::MuDotZBar}) {
    Rng rng(seed);
    bool all_zero = true;
    for (std::size_t k = 0; k < trials && all_zero; ++k) {
      ClosedFormSolution sol = random_solution(n, rng, pairing);
      ExactJetEvaluator eval(sol, 2);
      for (int pt = 0; pt < 3; ++pt) {
        auto jv = eval.eval(random_point(n, rng));
        if (!residual_eq16(jv, n).is_zero()) {
          all_zero = false;
          break;
        }
      }
    }
    (pairing == Pairing::MuDotZ ? out.mu_dot_z_zero : out.mu_dot_zbar_zero) = all_zero;
  }
  if (out.mu_dot_z_zero == out.mu_dot_zbar_zero)
    throw Error("pairing convention oracle is inconclusive");
  out.chosen = out.mu_dot_z_zero ? Pairing::MuDotZ : Pairing::MuDotZBar;
  return out;
}

DecayReport pointwise_decay_check(const ClosedFormSolution& sol, std::size_t samples,
                                  std::uint64_t seed) {
  if (sol.n() < 2) throw ParamError("the decay hypothesis needs n >= 2");
  Rng rng(seed);
  FastSolution fast(sol);
  DecayReport rep;
  rep.samples = samples;
  const int shells = 11;  // rho in [2^0, 2^10]
  std::size_t per_shell = samples / shells + 1;
  double expo = (sol.n() - 2) / 2.0;
  for (int k = 0; k < shells; ++k) {
    double rlo = std::pow(2.0, k), rhi = 2 * rlo;
    for (std::size_t s = 0; s < per_shell; ++s) {
      // rejection into the shell from the gauge box of radius rhi
      std::vector<std::complex<double>> z(sol.n());
      double t, rho;
      do {
        for (auto& zc : z) zc = {rng.uniform(-rhi, rhi), rng.uniform(-rhi, rhi)};
        t = rng.uniform(-rhi * rhi, rhi * rhi);
        double z2 = 0;
        for (auto& zc : z) z2 += std::norm(zc);
        rho = std::pow(z2 * z2 + t * t, 0.25);
      } while (rho < rlo || rho >= rhi);
      double val = fast.u(z, t) * std::pow(rho * rho, expo);
      if (val > rep.sup_constant) {
        rep.sup_constant = val;
        rep.sup_rho = rho;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// FastSolution
// ---------------------------------------------------------------------------

FastSolution::FastSolution(const ClosedFormSolution& sol)
    : n(sol.n()), lambda(sol.lambda().to_complex()), N(rat_double(sol.N())),
      pairing(sol.pairing()) {
  for (const auto& m : sol.mu()) mu.push_back(m.to_complex());
}

std::complex<double> FastSolution::w(const std::vector<std::complex<double>>& z, double t) const {
  double z2 = 0;
  for (const auto& zc : z) z2 += std::norm(zc);
  std::complex<double> sum(t, z2);
  for (int a = 0; a < n; ++a)
    sum += mu[a] * (pairing == Pairing::MuDotZ ? z[a] : std::conj(z[a]));
  return sum + lambda;
}

double FastSolution::u(const std::vector<std::complex<double>>& z, double t) const {
  return std::pow(N / std::norm(w(z, t)), n / 2.0);
}

double FastSolution::e2f(const std::vector<std::complex<double>>& z, double t) const {
  return N / (4.0 * std::norm(w(z, t)));
}

double FastSolution::grad2(const std::vector<std::complex<double>>& z, double t) const {
  std::complex<double> wv = w(z, t);
  double sum = 0;
  for (int a = 0; a < n; ++a) {
    std::complex<double> zw, zwb;  // Z_a(w), Z_a(wbar)
    if (pairing == Pairing::MuDotZ) {
      zw = mu[a] + 2.0 * std::complex<double>(0, 1) * std::conj(z[a]);
      zwb = 0.0;
    } else {
      zw = 2.0 * std::complex<double>(0, 1) * std::conj(z[a]);
      zwb = std::conj(mu[a]);
    }
    std::complex<double> fa = -0.5 * (zw / wv + zwb / std::conj(wv));
    sum += std::norm(fa);
  }
  return sum;
}

}  // namespace crlab
