#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crlab/affine.hpp"
#include "crlab/basicpoly.hpp"
#include "crlab/word.hpp"

namespace crlab {

class CRContext;

// Key of one jet term: a monomial in jet symbols times the three weight
// factors e^{wf * f}, h^{hp} and eta^{sp} with affine exponents.
struct TermKey {
  Monomial mono;
  AffineExponent wf;
  AffineExponent hp;
  AffineExponent sp;

  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.mono == b.mono && a.wf == b.wf && a.hp == b.hp && a.sp == b.sp;
  }
  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.mono != b.mono) return a.mono < b.mono;
    if (a.wf != b.wf) return a.wf < b.wf;
    if (a.hp != b.hp) return a.hp < b.hp;
    return a.sp < b.sp;
  }
};

struct EvalDouble {
  std::map<SymbolId, std::complex<double>> symbols;
  double f = 0.0;    // value of the field f, for e^{w f}
  double eta = 1.0;  // value of the bare cutoff eta
  std::array<double, kParamCount> params{0.0, 0.0, 0.0};
};

struct EvalExact {
  std::map<SymbolId, GaussianRational> symbols;
  Rational e2f{1};  // value of e^{2f}; weights must have even integer exponent
  Rational eta{1};
  std::array<Rational, kParamCount> params{Rational(0), Rational(0), Rational(0)};
};

// Normalized sparse sum of jet terms over a fixed CRContext. All mutating
// operations keep like terms merged and drop zero coefficients; elimination
// of the constrained trace is applied by the derivation/conjugation entry
// points, not by raw arithmetic.
class JetExpr {
public:
  JetExpr() = default;
  explicit JetExpr(const CRContext* ctx) : ctx_(ctx) {}

  static JetExpr zero(const CRContext& ctx) { return JetExpr(&ctx); }
  static JetExpr constant(const CRContext& ctx, ParamPoly c);
  static JetExpr constant(const CRContext& ctx, GaussianRational c) {
    return constant(ctx, ParamPoly::constant(std::move(c)));
  }
  static JetExpr symbol(const CRContext& ctx, SymbolId s);
  static JetExpr term(const CRContext& ctx, TermKey key, ParamPoly coeff);

  const CRContext* context() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<TermKey, ParamPoly>& terms() const { return terms_; }

  JetExpr operator-() const;
  JetExpr& operator+=(const JetExpr& o);
  JetExpr& operator-=(const JetExpr& o);
  friend JetExpr operator+(JetExpr a, const JetExpr& b) { return a += b; }
  friend JetExpr operator-(JetExpr a, const JetExpr& b) { return a -= b; }
  friend JetExpr operator*(const JetExpr& a, const JetExpr& b);

  JetExpr scaled(const ParamPoly& c) const;
  JetExpr scaled(const GaussianRational& c) const { return scaled(ParamPoly::constant(c)); }

  // Multiplies by e^{w f} / h^p / eta^s.
  JetExpr times_ef(const AffineExponent& w) const;
  JetExpr times_h(const AffineExponent& p) const;
  JetExpr times_eta(const AffineExponent& s) const;

  JetExpr conjugated() const;
  JetExpr re_part() const;
  JetExpr im_part() const;

  // Z_d with the Leibniz rule, canonicalization and trace elimination.
  JetExpr derived(Letter d) const;
  // Same without trace elimination (used by the context builder).
  JetExpr derived_raw(Letter d) const;

  JetExpr eliminated() const;

  JetExpr substituted_param(Param p, const Rational& value) const;

  // Normal form: aligns integer-comparable h-exponent classes by expanding
  // the defining polynomial of h, then re-merges. Zero iff the expression is
  // the zero element of the free jet algebra.
  JetExpr nf() const;
  bool is_zero_nf() const { return nf().is_zero(); }

  std::complex<double> eval_double(const EvalDouble& v) const;
  GaussianRational eval_exact(const EvalExact& v) const;

  void add_term(const TermKey& key, const ParamPoly& coeff);
  void remove_term(const TermKey& key) { terms_.erase(key); }

  std::string str() const;
  // The lexicographically smallest term, as a printable witness.
  std::string witness() const;

private:
  friend class CRContext;
  const CRContext* ctx_ = nullptr;
  std::map<TermKey, ParamPoly> terms_;
};

// Field declaration inside a CRContext.
struct FieldSpec {
  std::string name;
  bool real = true;
  int conj_partner = -1;  // field index; == own index for real fields
  int order_cap = 3;
  bool constrained = false;    // trace-eliminated via the registered constraint
  bool bare_is_symbol = true;  // whether the order-0 jet is an ordinary symbol
};

struct SymbolInfo {
  int field;
  CanonWord word;
  bool eliminable = false;
};

// Dimension, field registry, interned jet symbols and the elimination rules.
// Built once, immutable afterwards; every JetExpr references its context.
class CRContext {
public:
  // The standard setup on H^n: f real constrained (order cap 3), optional
  // free real fields phi (cap 1) and eta (cap 1, bare eta lives in the
  // exponent lattice), weight bases e^{wf} and h = |g|^2.
  static std::shared_ptr<const CRContext> heisenberg(int n, bool with_phi = true,
                                                     bool with_eta = true);

  // Free quadratic-form setup used by the completion-of-squares check:
  // complex order-0 fields D, E, G and real order-0 fields f0, s, with
  // h = s^2 + f0^2.
  static std::shared_ptr<const CRContext> free_quadratic();

  int n() const { return n_; }

  int field_index(const std::string& name) const;
  const FieldSpec& field(int idx) const { return fields_.at(idx); }
  const std::vector<FieldSpec>& fields() const { return fields_; }

  SymbolId symbol_id(int field, const CanonWord& w) const;
  const SymbolInfo& symbol(SymbolId id) const { return symbols_.at(id); }
  const std::string& symbol_name(SymbolId id) const;
  std::size_t symbol_count() const { return symbols_.size(); }

  // Canonicalizes an application-order word of derivations of a field into a
  // sum of canonical jet terms (commutator corrections included), without
  // trace elimination.
  JetExpr canonical_word_expr(int field, const WordSeq& seq) const;

  // Canonicalized and trace-eliminated jet of a field.
  JetExpr jet(const std::string& field, const WordSeq& seq) const;

  JetExpr one() const { return JetExpr::constant(*this, ParamPoly::constant(1)); }
  JetExpr ef(const AffineExponent& w) const;      // e^{w f}
  JetExpr hpow(const AffineExponent& p) const;    // h^p
  JetExpr etapow(const AffineExponent& s) const;  // eta^s

  bool has_h() const { return has_h_; }
  const JetExpr& h_def() const { return h_def_; }
  const JetExpr& h_derivative(Letter d) const;

  // Conjugate of a single symbol as a (possibly multi-term) expression,
  // canonical but not trace-eliminated.
  JetExpr conj_symbol_expr(SymbolId id) const;

  bool eliminable(SymbolId id) const { return symbols_.at(id).eliminable; }
  const JetExpr& elimination_rhs(SymbolId id) const;

private:
  CRContext() = default;
  void enumerate_symbols();
  void build_h(int f_field);
  void build_elimination(int f_field);
  JetExpr eliminate_with_table(const JetExpr& e,
                               const std::map<SymbolId, JetExpr>& table) const;

  friend class JetExpr;

  int n_ = 1;
  std::vector<FieldSpec> fields_;
  std::vector<SymbolInfo> symbols_;
  std::map<std::pair<int, CanonWord>, SymbolId> lookup_;
  std::vector<std::string> symbol_names_;

  int f_field_ = -1;    // field whose exponential weight e^{wf} refers to
  int eta_field_ = -1;  // field whose bare power eta^s refers to

  bool has_h_ = false;
  JetExpr h_def_;
  std::vector<JetExpr> h_deriv_;  // indexed by letter: holo 1..n, anti 1..n, t

  std::map<SymbolId, JetExpr> elim_;
};

// Re(sum_alpha Z_alphabar(V_alpha)) for an indexed family V_1..V_n.
JetExpr divergence_real(const std::vector<JetExpr>& v);
// Im(sum_alpha Z_alphabar(V_alpha)).
JetExpr divergence_imag(const std::vector<JetExpr>& v);

}  // namespace crlab
