#include "crlab/jetexpr.hpp"

#include <cassert>
#include <cmath>

namespace crlab {

// ---------------------------------------------------------------------------
// JetExpr arithmetic
// ---------------------------------------------------------------------------

void JetExpr::add_term(const TermKey& key, const ParamPoly& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

JetExpr JetExpr::constant(const CRContext& ctx, ParamPoly c) {
  JetExpr e(&ctx);
  e.add_term(TermKey{}, c);
  return e;
}

JetExpr JetExpr::symbol(const CRContext& ctx, SymbolId s) {
  JetExpr e(&ctx);
  TermKey key;
  key.mono = Monomial{{s, 1}};
  e.add_term(key, ParamPoly::constant(1));
  return e;
}

JetExpr JetExpr::term(const CRContext& ctx, TermKey key, ParamPoly coeff) {
  JetExpr e(&ctx);
  e.add_term(key, coeff);
  return e;
}

JetExpr JetExpr::operator-() const {
  JetExpr r(ctx_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

JetExpr& JetExpr::operator+=(const JetExpr& o) {
  if (ctx_ == nullptr) ctx_ = o.ctx_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

JetExpr& JetExpr::operator-=(const JetExpr& o) {
  if (ctx_ == nullptr) ctx_ = o.ctx_;
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

JetExpr operator*(const JetExpr& a, const JetExpr& b) {
  JetExpr r(a.ctx_ ? a.ctx_ : b.ctx_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      TermKey key;
      key.mono = monomial_mul(ka.mono, kb.mono);
      key.wf = ka.wf + kb.wf;
      key.hp = ka.hp + kb.hp;
      key.sp = ka.sp + kb.sp;
      r.add_term(key, ca * cb);
    }
  }
  return r;
}

JetExpr JetExpr::scaled(const ParamPoly& c) const {
  JetExpr r(ctx_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.add_term(k, v * c);
  return r;
}

JetExpr JetExpr::times_ef(const AffineExponent& w) const {
  JetExpr r(ctx_);
  for (const auto& [k, v] : terms_) {
    TermKey key = k;
    key.wf += w;
    r.add_term(key, v);
  }
  return r;
}

JetExpr JetExpr::times_h(const AffineExponent& p) const {
  JetExpr r(ctx_);
  for (const auto& [k, v] : terms_) {
    TermKey key = k;
    key.hp += p;
    r.add_term(key, v);
  }
  return r;
}

JetExpr JetExpr::times_eta(const AffineExponent& s) const {
  JetExpr r(ctx_);
  for (const auto& [k, v] : terms_) {
    TermKey key = k;
    key.sp += s;
    r.add_term(key, v);
  }
  return r;
}

JetExpr JetExpr::conjugated() const {
  JetExpr out(ctx_);
  for (const auto& [key, c] : terms_) {
    TermKey base;
    base.wf = key.wf;  // f, h and eta are real; exponents are fixed by conjugation
    base.hp = key.hp;
    base.sp = key.sp;
    JetExpr t = JetExpr::term(*ctx_, base, c.conj());
    for (const auto& [sym, exp] : key.mono) {
      JetExpr cs = ctx_->conj_symbol_expr(sym);
      for (std::uint32_t k = 0; k < exp; ++k) t = t * cs;
    }
    out += t;
  }
  return out.eliminated();
}

JetExpr JetExpr::re_part() const {
  return (*this + conjugated()).scaled(GaussianRational(rat(1, 2)));
}

JetExpr JetExpr::im_part() const {
  return (*this - conjugated()).scaled(GaussianRational(Rational(0), rat(-1, 2)));
}

JetExpr JetExpr::derived_raw(Letter d) const {
  JetExpr out(ctx_);
  for (const auto& [key, c] : terms_) {
    // Leibniz over the jet monomial.
    for (std::size_t i = 0; i < key.mono.size(); ++i) {
      const auto [sym, exp] = key.mono[i];
      const SymbolInfo& info = ctx_->symbol(sym);
      WordSeq seq = info.word.app_seq();
      seq.push_back(d);
      JetExpr ds = ctx_->canonical_word_expr(info.field, seq);
      TermKey rest = key;
      if (rest.mono[i].second == 1)
        rest.mono.erase(rest.mono.begin() + static_cast<std::ptrdiff_t>(i));
      else
        --rest.mono[i].second;
      out += ds * JetExpr::term(*ctx_, rest, c.scaled(grat(static_cast<long>(exp))));
    }
    // d(e^{wf}) = w f_d e^{wf}
    if (!key.wf.is_zero()) {
      if (ctx_->f_field_ < 0) throw RegistryError("context has no exponential weight field");
      JetExpr fd = ctx_->canonical_word_expr(ctx_->f_field_, {d});
      out += fd * JetExpr::term(*ctx_, key, c * key.wf.to_parampoly());
    }
    // d(h^p) = p h^{p-1} d(h)
    if (!key.hp.is_zero()) {
      TermKey rest = key;
      rest.hp -= AffineExponent(Rational(1));
      out += ctx_->h_derivative(d) * JetExpr::term(*ctx_, rest, c * key.hp.to_parampoly());
    }
    // d(eta^s) = s eta^{s-1} eta_d
    if (!key.sp.is_zero()) {
      if (ctx_->eta_field_ < 0) throw RegistryError("context has no eta field");
      TermKey rest = key;
      rest.sp -= AffineExponent(Rational(1));
      JetExpr ed = ctx_->canonical_word_expr(ctx_->eta_field_, {d});
      out += ed * JetExpr::term(*ctx_, rest, c * key.sp.to_parampoly());
    }
  }
  return out;
}

JetExpr JetExpr::derived(Letter d) const { return derived_raw(d).eliminated(); }

JetExpr JetExpr::eliminated() const { return ctx_->eliminate_with_table(*this, ctx_->elim_); }

JetExpr JetExpr::substituted_param(Param p, const Rational& value) const {
  JetExpr out(ctx_);
  for (const auto& [key, c] : terms_) {
    TermKey k = key;
    k.wf = k.wf.substituted(p, value);
    k.hp = k.hp.substituted(p, value);
    k.sp = k.sp.substituted(p, value);
    out.add_term(k, c.substituted(p, value));
  }
  return out;
}

JetExpr JetExpr::nf() const {
  JetExpr e = eliminated();
  if (ctx_ == nullptr || !ctx_->has_h()) return e;

  // Two h-exponents can name the same function when they differ by an
  // integer; align each class on its minimal constant by expanding the
  // defining polynomial of h.
  struct ClassKey {
    std::array<Rational, kParamCount> slope;
    Rational frac;
    bool operator<(const ClassKey& o) const {
      for (std::size_t k = 0; k < kParamCount; ++k) {
        int c = cmp(slope[k], o.slope[k]);
        if (c != 0) return c < 0;
      }
      return cmp(frac, o.frac) < 0;
    }
  };
  auto class_of = [](const AffineExponent& p) {
    return ClassKey{p.slope, p.constant - rat_floor(p.constant)};
  };

  std::map<ClassKey, Rational> cmin;
  for (const auto& [key, c] : e.terms_) {
    ClassKey ck = class_of(key.hp);
    auto it = cmin.find(ck);
    if (it == cmin.end())
      cmin.emplace(ck, key.hp.constant);
    else if (key.hp.constant < it->second)
      it->second = key.hp.constant;
  }

  // Group the terms that need expansion by the integer excess k.
  std::map<long, JetExpr> by_excess;
  JetExpr out(ctx_);
  for (const auto& [key, c] : e.terms_) {
    Rational excess = key.hp.constant - cmin.at(class_of(key.hp));
    if (excess == 0) {
      out.add_term(key, c);
      continue;
    }
    if (!rat_is_integer(excess))
      throw Error("internal: non-integer h-exponent excess " + rat_str(excess));
    long k = rat_to_long(excess);
    TermKey nk = key;
    nk.hp.constant -= excess;
    by_excess[k].ctx_ = ctx_;
    by_excess[k].add_term(nk, c);
  }
  if (!by_excess.empty()) {
    JetExpr hpow = ctx_->one();
    long cur = 0;
    for (auto& [k, part] : by_excess) {
      while (cur < k) {
        hpow = hpow * ctx_->h_def();
        ++cur;
      }
      out += part * hpow;
    }
  }
  return out;
}

std::complex<double> JetExpr::eval_double(const EvalDouble& v) const {
  std::complex<double> sum = 0.0;
  bool have_h = false;
  double hval = 0.0;
  for (const auto& [key, c] : terms_) {
    std::complex<double> t = c.eval_double(v.params);
    for (const auto& [sym, exp] : key.mono) {
      auto it = v.symbols.find(sym);
      if (it == v.symbols.end())
        throw RegistryError("no value for symbol " + ctx_->symbol_name(sym));
      for (std::uint32_t k = 0; k < exp; ++k) t *= it->second;
    }
    if (!key.wf.is_zero()) t *= std::exp(key.wf.eval_double(v.params) * v.f);
    if (!key.hp.is_zero()) {
      if (!have_h) {
        hval = ctx_->h_def().eval_double(v).real();
        have_h = true;
      }
      t *= std::pow(hval, key.hp.eval_double(v.params));
    }
    if (!key.sp.is_zero()) t *= std::pow(v.eta, key.sp.eval_double(v.params));
    sum += t;
  }
  return sum;
}

GaussianRational JetExpr::eval_exact(const EvalExact& v) const {
  GaussianRational sum;
  bool have_h = false;
  Rational hval;
  for (const auto& [key, c] : terms_) {
    GaussianRational t = c.eval_exact(v.params);
    for (const auto& [sym, exp] : key.mono) {
      auto it = v.symbols.find(sym);
      if (it == v.symbols.end())
        throw RegistryError("no value for symbol " + ctx_->symbol_name(sym));
      for (std::uint32_t k = 0; k < exp; ++k) t *= it->second;
    }
    if (!key.wf.is_zero()) {
      Rational w = key.wf.eval_exact(v.params);
      Rational half = w / 2;
      if (!rat_is_integer(half))
        throw DomainError("exact evaluation needs an even integer e^{wf} exponent, got " +
                          rat_str(w));
      t *= GaussianRational(rat_pow(v.e2f, rat_to_long(half)));
    }
    if (!key.hp.is_zero()) {
      Rational p = key.hp.eval_exact(v.params);
      if (!rat_is_integer(p))
        throw DomainError("exact evaluation needs an integer h exponent, got " + rat_str(p));
      if (!have_h) {
        GaussianRational h = ctx_->h_def().eval_exact(v);
        if (h.im != 0) throw DomainError("h evaluated to a non-real value");
        hval = h.re;
        have_h = true;
      }
      t *= GaussianRational(rat_pow(hval, rat_to_long(p)));
    }
    if (!key.sp.is_zero()) {
      Rational s = key.sp.eval_exact(v.params);
      if (!rat_is_integer(s))
        throw DomainError("exact evaluation needs an integer eta exponent, got " + rat_str(s));
      t *= GaussianRational(rat_pow(v.eta, rat_to_long(s)));
    }
    sum += t;
  }
  return sum;
}

static std::string term_str(const CRContext& ctx, const TermKey& key, const ParamPoly& c) {
  std::string s = "(" + c.str() + ")";
  for (const auto& [sym, exp] : key.mono) {
    s += "*" + ctx.symbol_name(sym);
    if (exp > 1) s += "^" + std::to_string(exp);
  }
  if (!key.wf.is_zero()) s += "*e^[(" + key.wf.str() + ")f]";
  if (!key.hp.is_zero()) s += "*h^[" + key.hp.str() + "]";
  if (!key.sp.is_zero()) s += "*eta^[" + key.sp.str() + "]";
  return s;
}

std::string JetExpr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += term_str(*ctx_, k, c);
  }
  return s;
}

std::string JetExpr::witness() const {
  if (terms_.empty()) return "";
  const auto& [k, c] = *terms_.begin();
  return term_str(*ctx_, k, c);
}

// ---------------------------------------------------------------------------
// CRContext
// ---------------------------------------------------------------------------

static void gen_multisets(int n, int size, std::vector<std::uint8_t>& cur,
                          std::vector<std::vector<std::uint8_t>>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  std::uint8_t lo = cur.empty() ? 1 : cur.back();
  for (std::uint8_t a = lo; a <= n; ++a) {
    cur.push_back(a);
    gen_multisets(n, size, cur, out);
    cur.pop_back();
  }
}

static std::vector<std::vector<std::uint8_t>> multisets(int n, int size) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> cur;
  gen_multisets(n, size, cur, out);
  return out;
}

void CRContext::enumerate_symbols() {
  for (int fi = 0; fi < static_cast<int>(fields_.size()); ++fi) {
    const FieldSpec& fs = fields_[fi];
    int lmin = fs.bare_is_symbol ? 0 : 1;
    for (int len = lmin; len <= fs.order_cap; ++len) {
      for (int nh = 0; nh <= len; ++nh) {
        for (int na = 0; na + nh <= len; ++na) {
          int nz = len - nh - na;
          for (const auto& hs : multisets(n_, nh)) {
            for (const auto& as : multisets(n_, na)) {
              CanonWord w{hs, as, static_cast<std::uint8_t>(nz)};
              SymbolId id = static_cast<SymbolId>(symbols_.size());
              bool elim = fs.constrained && w.contains_pair(static_cast<std::uint8_t>(n_));
              symbols_.push_back(SymbolInfo{fi, w, elim});
              lookup_.emplace(std::make_pair(fi, w), id);
              symbol_names_.push_back(len == 0 ? fs.name : fs.name + "_" + w.str());
            }
          }
        }
      }
    }
  }
}

int CRContext::field_index(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(fields_.size()); ++i)
    if (fields_[i].name == name) return i;
  throw RegistryError("unregistered field: " + name);
}

SymbolId CRContext::symbol_id(int field, const CanonWord& w) const {
  auto it = lookup_.find(std::make_pair(field, w));
  if (it == lookup_.end())
    throw RegistryError("unregistered jet symbol: " + fields_.at(field).name + "_" + w.str());
  return it->second;
}

const std::string& CRContext::symbol_name(SymbolId id) const { return symbol_names_.at(id); }

JetExpr CRContext::canonical_word_expr(int field, const WordSeq& seq) const {
  const FieldSpec& fs = fields_.at(field);
  if (static_cast<int>(seq.size()) > fs.order_cap) throw JetOrderOverflow(fs.name, fs.order_cap);
  for (const auto& l : seq) {
    if (l.kind != LetterKind::T && (l.index < 1 || l.index > n_))
      throw RegistryError("letter index outside 1.." + std::to_string(n_));
  }
  if (seq.empty() && !fs.bare_is_symbol) {
    if (field == eta_field_) return etapow(AffineExponent(Rational(1)));
    throw RegistryError("field '" + fs.name + "' has no order-0 symbol");
  }
  if (word_is_canonical(seq))
    return JetExpr::symbol(*this, symbol_id(field, canon_of_sorted(seq)));

  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i].rank() <= seq[i + 1].rank()) continue;
    WordSeq swapped = seq;
    std::swap(swapped[i], swapped[i + 1]);
    JetExpr res = canonical_word_expr(field, swapped);
    // [Z_a, Z_abar] = -2i d/dt: commuting Z_a past Z_abar in application
    // order costs -2i times the word with the pair contracted to a t-letter.
    if (seq[i].kind == LetterKind::Anti && seq[i + 1].kind == LetterKind::Holo &&
        seq[i].index == seq[i + 1].index) {
      WordSeq contracted;
      contracted.reserve(seq.size() - 1);
      for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k == i) {
          contracted.push_back(tt());
        } else if (k != i + 1) {
          contracted.push_back(seq[k]);
        }
      }
      res -= canonical_word_expr(field, contracted)
                 .scaled(GaussianRational(Rational(0), Rational(2)));
    }
    return res;
  }
  throw Error("unreachable: non-canonical word without inversion");
}

JetExpr CRContext::jet(const std::string& field, const WordSeq& seq) const {
  return canonical_word_expr(field_index(field), seq).eliminated();
}

JetExpr CRContext::ef(const AffineExponent& w) const {
  TermKey key;
  key.wf = w;
  return JetExpr::term(*this, key, ParamPoly::constant(1));
}

JetExpr CRContext::hpow(const AffineExponent& p) const {
  if (!has_h_) throw RegistryError("context has no h weight base");
  TermKey key;
  key.hp = p;
  return JetExpr::term(*this, key, ParamPoly::constant(1));
}

JetExpr CRContext::etapow(const AffineExponent& s) const {
  if (eta_field_ < 0) throw RegistryError("context has no eta field");
  TermKey key;
  key.sp = s;
  return JetExpr::term(*this, key, ParamPoly::constant(1));
}

const JetExpr& CRContext::h_derivative(Letter d) const {
  if (!has_h_) throw RegistryError("context has no h weight base");
  std::size_t idx;
  switch (d.kind) {
    case LetterKind::Holo: idx = d.index - 1; break;
    case LetterKind::Anti: idx = n_ + d.index - 1; break;
    default: idx = 2 * static_cast<std::size_t>(n_); break;
  }
  return h_deriv_.at(idx);
}

JetExpr CRContext::conj_symbol_expr(SymbolId id) const {
  const SymbolInfo& info = symbols_.at(id);
  const FieldSpec& fs = fields_.at(info.field);
  int target = fs.real ? info.field : fs.conj_partner;
  return canonical_word_expr(target, barred(info.word.app_seq()));
}

const JetExpr& CRContext::elimination_rhs(SymbolId id) const {
  auto it = elim_.find(id);
  if (it == elim_.end())
    throw RegistryError("symbol is not eliminable: " + symbol_name(id));
  return it->second;
}

JetExpr CRContext::eliminate_with_table(const JetExpr& e,
                                        const std::map<SymbolId, JetExpr>& table) const {
  JetExpr out(this);
  std::map<TermKey, ParamPoly> work = e.terms_;
  while (!work.empty()) {
    auto it = work.begin();
    TermKey key = it->first;
    ParamPoly coeff = it->second;
    work.erase(it);
    if (coeff.is_zero()) continue;

    std::size_t found = key.mono.size();
    for (std::size_t i = 0; i < key.mono.size(); ++i) {
      if (symbols_[key.mono[i].first].eliminable) {
        found = i;
        break;
      }
    }
    if (found == key.mono.size()) {
      out.add_term(key, coeff);
      continue;
    }
    SymbolId sym = key.mono[found].first;
    auto tit = table.find(sym);
    if (tit == table.end())
      throw Error("internal: missing elimination rule for " + symbol_name(sym));
    TermKey reduced = key;
    if (reduced.mono[found].second == 1)
      reduced.mono.erase(reduced.mono.begin() + static_cast<std::ptrdiff_t>(found));
    else
      --reduced.mono[found].second;
    JetExpr repl = JetExpr::term(*this, reduced, coeff) * tit->second;
    for (const auto& [k, c] : repl.terms_) {
      auto w = work.find(k);
      if (w == work.end()) {
        work.emplace(k, c);
      } else {
        w->second += c;
        if (w->second.is_zero()) work.erase(w);
      }
    }
  }
  return out;
}

void CRContext::build_h(int f_field) {
  JetExpr s(this);
  for (int a = 1; a <= n_; ++a) {
    JetExpr fa = canonical_word_expr(f_field, {ho(static_cast<std::uint8_t>(a))});
    JetExpr fab = canonical_word_expr(f_field, {an(static_cast<std::uint8_t>(a))});
    s += fa * fab;
  }
  s += ef(AffineExponent(Rational(2)));
  JetExpr f0 = canonical_word_expr(f_field, {tt()});
  has_h_ = true;
  h_def_ = s * s + f0 * f0;

  h_deriv_.clear();
  for (int a = 1; a <= n_; ++a) h_deriv_.push_back(h_def_.derived_raw(ho(static_cast<std::uint8_t>(a))));
  for (int a = 1; a <= n_; ++a) h_deriv_.push_back(h_def_.derived_raw(an(static_cast<std::uint8_t>(a))));
  h_deriv_.push_back(h_def_.derived_raw(tt()));
}

void CRContext::build_elimination(int f_field) {
  // g = |df|^2 + e^{2f} - i f_0; the constraint reads sum_a f_{a abar} = -n g.
  JetExpr g(this);
  for (int a = 1; a <= n_; ++a) {
    g += canonical_word_expr(f_field, {ho(static_cast<std::uint8_t>(a))}) *
         canonical_word_expr(f_field, {an(static_cast<std::uint8_t>(a))});
  }
  g += ef(AffineExponent(Rational(2)));
  g -= canonical_word_expr(f_field, {tt()}).scaled(GaussianRational::i());

  JetExpr subst = g.scaled(grat(-n_));
  for (int a = 1; a < n_; ++a) {
    subst -= canonical_word_expr(
        f_field, {ho(static_cast<std::uint8_t>(a)), an(static_cast<std::uint8_t>(a))});
  }

  // Eliminable canonical words, shortest first (CanonWord orders by length).
  std::vector<std::pair<CanonWord, SymbolId>> todo;
  for (const auto& [key, id] : lookup_) {
    if (key.first == f_field && symbols_[id].eliminable) todo.emplace_back(key.second, id);
  }
  std::sort(todo.begin(), todo.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::uint8_t nn = static_cast<std::uint8_t>(n_);
  for (const auto& [w, sym] : todo) {
    // rest = w minus one holomorphic n and one antiholomorphic n.
    CanonWord rest = w;
    rest.holo.erase(std::find(rest.holo.begin(), rest.holo.end(), nn));
    rest.anti.erase(std::find(rest.anti.begin(), rest.anti.end(), nn));

    JetExpr expr = subst;
    for (const Letter& d : rest.app_seq())
      expr = eliminate_with_table(expr.derived_raw(d), elim_);

    WordSeq lprime{ho(nn), an(nn)};
    for (const Letter& d : rest.app_seq()) lprime.push_back(d);
    JetExpr corr = canonical_word_expr(f_field, lprime);
    TermKey wkey;
    wkey.mono = Monomial{{sym, 1}};
    auto cit = corr.terms().find(wkey);
    if (cit == corr.terms().end() || !(cit->second == ParamPoly::constant(1)))
      throw Error("internal: malformed principal term in elimination of " + symbol_name(sym));
    corr.remove_term(wkey);
    corr = eliminate_with_table(corr, elim_);

    JetExpr rule = eliminate_with_table(expr - corr, elim_);
    for (const auto& [k, c] : rule.terms()) {
      for (const auto& [s2, e2] : k.mono) {
        if (symbols_[s2].eliminable)
          throw Error("internal: elimination rule for " + symbol_name(sym) +
                      " still contains " + symbol_name(s2));
      }
    }
    elim_.emplace(sym, rule);
  }
}

std::shared_ptr<const CRContext> CRContext::heisenberg(int n, bool with_phi, bool with_eta) {
  if (n < 1 || n > 9) throw ParamError("n must be in 1..9, got " + std::to_string(n));
  auto ctx = std::shared_ptr<CRContext>(new CRContext());
  ctx->n_ = n;
  ctx->fields_.push_back(FieldSpec{"f", true, 0, 3, true, false});
  ctx->f_field_ = 0;
  if (with_phi) {
    int idx = static_cast<int>(ctx->fields_.size());
    ctx->fields_.push_back(FieldSpec{"phi", true, idx, 1, false, true});
  }
  if (with_eta) {
    int idx = static_cast<int>(ctx->fields_.size());
    ctx->fields_.push_back(FieldSpec{"eta", true, idx, 1, false, false});
    ctx->eta_field_ = idx;
  }
  ctx->enumerate_symbols();
  ctx->build_h(0);
  ctx->build_elimination(0);
  return ctx;
}

std::shared_ptr<const CRContext> CRContext::free_quadratic() {
  auto ctx = std::shared_ptr<CRContext>(new CRContext());
  ctx->n_ = 1;
  auto add_pair = [&](const std::string& name) {
    int i = static_cast<int>(ctx->fields_.size());
    ctx->fields_.push_back(FieldSpec{name, false, i + 1, 0, false, true});
    ctx->fields_.push_back(FieldSpec{name + "b", false, i, 0, false, true});
  };
  add_pair("D");
  add_pair("E");
  add_pair("G");
  int f0i = static_cast<int>(ctx->fields_.size());
  ctx->fields_.push_back(FieldSpec{"f0", true, f0i, 0, false, true});
  int si = static_cast<int>(ctx->fields_.size());
  ctx->fields_.push_back(FieldSpec{"s", true, si, 0, false, true});
  ctx->enumerate_symbols();

  JetExpr s = JetExpr::symbol(*ctx, ctx->symbol_id(si, CanonWord{}));
  JetExpr f0 = JetExpr::symbol(*ctx, ctx->symbol_id(f0i, CanonWord{}));
  ctx->has_h_ = true;
  ctx->h_def_ = s * s + f0 * f0;
  return ctx;
}

JetExpr divergence_real(const std::vector<JetExpr>& v) {
  const CRContext* ctx = v.at(0).context();
  if (static_cast<int>(v.size()) != ctx->n())
    throw ParamError("divergence needs exactly n components");
  JetExpr sum(ctx);
  for (std::size_t a = 0; a < v.size(); ++a)
    sum += v[a].derived(an(static_cast<std::uint8_t>(a + 1)));
  return sum.re_part();
}

JetExpr divergence_imag(const std::vector<JetExpr>& v) {
  const CRContext* ctx = v.at(0).context();
  if (static_cast<int>(v.size()) != ctx->n())
    throw ParamError("divergence needs exactly n components");
  JetExpr sum(ctx);
  for (std::size_t a = 0; a < v.size(); ++a)
    sum += v[a].derived(an(static_cast<std::uint8_t>(a + 1)));
  return sum.im_part();
}

}  // namespace crlab
