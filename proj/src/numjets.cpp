#include "crlab/numjets.hpp"

#include <cmath>
#include <functional>
#include <mutex>

#include "crlab/error.hpp"

namespace crlab {

// ---------------------------------------------------------------------------
// TaylorShape
// ---------------------------------------------------------------------------

TaylorShape::TaylorShape(int nvars, int order) : nvars_(nvars), order_(order) {
  std::vector<std::uint8_t> cur(nvars, 0);
  // multi-indices in graded lexicographic order
  std::function<void(int, int)> gen = [&](int var, int remaining) {
    if (var == nvars) {
      idx_.push_back(cur);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      cur[var] = static_cast<std::uint8_t>(k);
      gen(var + 1, remaining - k);
    }
    cur[var] = 0;
  };
  // enumerate by total degree so degree(k) is nondecreasing
  std::vector<std::vector<std::uint8_t>> all;
  for (int d = 0; d <= order; ++d) {
    idx_.clear();
    std::function<void(int, int)> gend = [&](int var, int remaining) {
      if (var == nvars - 1) {
        cur[var] = static_cast<std::uint8_t>(remaining);
        idx_.push_back(cur);
        return;
      }
      for (int k = remaining; k >= 0; --k) {
        cur[var] = static_cast<std::uint8_t>(k);
        gend(var + 1, remaining - k);
      }
      cur[var] = 0;
    };
    gend(0, d);
    for (auto& v : idx_) all.push_back(v);
  }
  idx_ = std::move(all);

  std::map<std::vector<std::uint8_t>, std::size_t> lookup;
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    lookup[idx_[k]] = k;
    int d = 0;
    for (auto e : idx_[k]) d += e;
    deg_.push_back(d);
  }

  prod_.assign(idx_.size() * idx_.size(), -1);
  for (std::size_t a = 0; a < idx_.size(); ++a) {
    for (std::size_t b = 0; b < idx_.size(); ++b) {
      if (deg_[a] + deg_[b] > order) continue;
      std::vector<std::uint8_t> sum(nvars);
      for (int v = 0; v < nvars; ++v)
        sum[v] = static_cast<std::uint8_t>(idx_[a][v] + idx_[b][v]);
      prod_[a * idx_.size() + b] = static_cast<int>(lookup.at(sum));
    }
  }

  raise_.assign(idx_.size() * nvars, -1);
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    for (int v = 0; v < nvars; ++v) {
      if (deg_[k] + 1 > order) continue;
      std::vector<std::uint8_t> up = idx_[k];
      ++up[v];
      raise_[k * nvars + v] = static_cast<int>(lookup.at(up));
    }
  }

  unit_.resize(nvars);
  for (int v = 0; v < nvars; ++v) {
    std::vector<std::uint8_t> u(nvars, 0);
    u[v] = 1;
    unit_[v] = lookup.at(u);
  }
}

std::shared_ptr<const TaylorShape> TaylorShape::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const TaylorShape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto shape = std::shared_ptr<const TaylorShape>(new TaylorShape(nvars, order));
  cache.emplace(key, shape);
  return shape;
}

// ---------------------------------------------------------------------------
// TaylorValue
// ---------------------------------------------------------------------------

TaylorValue TaylorValue::constant(std::shared_ptr<const TaylorShape> shape,
                                  std::complex<double> v) {
  TaylorValue t(std::move(shape));
  t.c_[0] = v;
  return t;
}

TaylorValue TaylorValue::variable(std::shared_ptr<const TaylorShape> shape, int var,
                                  std::complex<double> value_at_point) {
  TaylorValue t(shape);
  t.c_[0] = value_at_point;
  t.c_[shape->unit_index(var)] = 1.0;
  return t;
}

TaylorValue TaylorValue::derivative(int v) const {
  TaylorValue r(shape_);
  const auto& idx = shape_->multi_indices();
  // coefficient of xi^j in dF/dv is (j_v + 1) times the coefficient of the
  // index raised in v
  for (std::size_t j = 0; j < idx.size(); ++j) {
    int up = shape_->raise_index(j, v);
    if (up < 0) continue;
    r.c_[j] += c_[static_cast<std::size_t>(up)] * static_cast<double>(idx[j][v] + 1);
  }
  return r;
}

TaylorValue TaylorValue::conj() const {
  TaylorValue r(shape_);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = std::conj(c_[k]);
  return r;
}

TaylorValue TaylorValue::operator-() const {
  TaylorValue r(shape_);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = -c_[k];
  return r;
}

TaylorValue operator+(const TaylorValue& a, const TaylorValue& b) {
  TaylorValue r(a.shape_);
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
  return r;
}

TaylorValue operator-(const TaylorValue& a, const TaylorValue& b) {
  TaylorValue r(a.shape_);
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
  return r;
}

TaylorValue operator*(const TaylorValue& a, const TaylorValue& b) {
  TaylorValue r(a.shape_);
  const TaylorShape& s = *a.shape_;
  const std::size_t sz = s.size();
  for (std::size_t i = 0; i < sz; ++i) {
    if (a.c_[i] == 0.0) continue;
    for (std::size_t j = 0; j < sz; ++j) {
      int k = s.product_index(i, j);
      if (k < 0) continue;
      r.c_[static_cast<std::size_t>(k)] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

TaylorValue TaylorValue::scaled(std::complex<double> k) const {
  TaylorValue r(shape_);
  for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = c_[j] * k;
  return r;
}

TaylorValue TaylorValue::compose_series(
    const std::vector<std::complex<double>>& derivs_at_value) const {
  // f(c0 + h) = sum_k derivs[k]/k! h^k with h nilpotent to the order cap
  TaylorValue h = *this;
  h.c_[0] = 0.0;
  TaylorValue result = TaylorValue::constant(shape_, derivs_at_value.at(0));
  TaylorValue hpow = TaylorValue::constant(shape_, 1.0);
  double fact = 1.0;
  for (int k = 1; k <= shape_->order(); ++k) {
    hpow = hpow * h;
    fact *= k;
    result = result + hpow.scaled(derivs_at_value.at(k) / fact);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Expression -> Taylor
// ---------------------------------------------------------------------------

namespace {

struct TaylorAlgebra {
  using Value = TaylorValue;
  const std::string& source;
  std::shared_ptr<const TaylorShape> shape;
  const std::vector<std::complex<double>>& z;
  double t;
  int n;

  Value var(ExprNode::VarKind k, int index) const {
    switch (k) {
      case ExprNode::VarKind::T:
        return TaylorValue::variable(shape, 2 * n, t);
      case ExprNode::VarKind::X:
        if (index > n) throw ParamError("variable index exceeds n");
        return TaylorValue::variable(shape, index - 1, z[index - 1].real());
      case ExprNode::VarKind::Y:
        if (index > n) throw ParamError("variable index exceeds n");
        return TaylorValue::variable(shape, n + index - 1, z[index - 1].imag());
    }
    throw Error("unreachable");
  }
  Value lit(const Rational& r) const { return TaylorValue::constant(shape, rat_double(r)); }
  Value imag_unit() const { return TaylorValue::constant(shape, {0.0, 1.0}); }
  Value add(Value a, Value b) const { return a + b; }
  Value sub(Value a, Value b) const { return a - b; }
  Value mul(Value a, Value b) const { return a * b; }
  Value neg(Value a) const { return -a; }

  Value div(Value a, Value b, const ExprNode& at) const {
    std::complex<double> b0 = b.value();
    if (std::abs(b0) == 0.0)
      throw DomainError("division by zero in '" + expr_source(source, at) + "'");
    // 1/(b0+h) series: derivatives (-1)^k k!/b0^{k+1}
    std::vector<std::complex<double>> d(shape->order() + 1);
    std::complex<double> p = 1.0 / b0;
    double fact = 1.0, sign = 1.0;
    for (int k = 0; k <= shape->order(); ++k) {
      d[k] = sign * fact * p;
      p /= b0;
      fact *= (k + 1);
      sign = -sign;
    }
    return a * b.compose_series(d);
  }

  Value pow_int(Value a, int k) const {
    if (k < 0) {
      std::complex<double> a0 = a.value();
      if (std::abs(a0) == 0.0) throw DomainError("zero raised to a negative power");
      std::vector<std::complex<double>> d(shape->order() + 1);
      std::complex<double> p = 1.0 / a0;
      double fact = 1.0, sign = 1.0;
      for (int j = 0; j <= shape->order(); ++j) {
        d[j] = sign * fact * p;
        p /= a0;
        fact *= (j + 1);
        sign = -sign;
      }
      return pow_int(a.compose_series(d), -k);
    }
    TaylorValue r = TaylorValue::constant(shape, 1.0);
    for (int j = 0; j < k; ++j) r = r * a;
    return r;
  }

  Value call(ExprNode::Func f, Value a, const ExprNode& at) const {
    std::complex<double> a0 = a.value();
    std::vector<std::complex<double>> d(shape->order() + 1);
    switch (f) {
      case ExprNode::Func::Exp: {
        std::complex<double> e = std::exp(a0);
        for (int k = 0; k <= shape->order(); ++k) d[k] = e;
        return a.compose_series(d);
      }
      case ExprNode::Func::Log: {
        if (std::abs(a0) == 0.0 || (std::abs(a0.imag()) < 1e-14 && a0.real() <= 0.0))
          throw DomainError("log of a nonpositive value in '" + expr_source(source, at) + "'");
        d[0] = std::log(a0);
        std::complex<double> p = 1.0 / a0;
        double fact = 1.0, sign = 1.0;
        for (int k = 1; k <= shape->order(); ++k) {
          d[k] = sign * fact * p;
          p /= a0;
          fact *= k;
          sign = -sign;
        }
        return a.compose_series(d);
      }
      case ExprNode::Func::Sqrt: {
        if (std::abs(a0.imag()) < 1e-14 && a0.real() <= 0.0)
          throw DomainError("sqrt of a nonpositive value in '" + expr_source(source, at) + "'");
        std::complex<double> r = std::sqrt(a0);
        d[0] = r;
        std::complex<double> coeff = 0.5;
        std::complex<double> p = r / a0;
        for (int k = 1; k <= shape->order(); ++k) {
          d[k] = coeff * p;
          coeff *= (0.5 - k);
          p /= a0;
        }
        return a.compose_series(d);
      }
      case ExprNode::Func::Abs2:
        return a * a.conj();
    }
    throw Error("unreachable");
  }
};

}  // namespace

TaylorValue taylor_eval(const ExprAST& fdef, const std::string& source,
                        const std::vector<std::complex<double>>& z, double t, int order) {
  int n = static_cast<int>(z.size());
  int needed = expr_max_index(fdef);
  if (needed > n)
    throw ParamError("expression uses index " + std::to_string(needed) +
                     " but the point has n = " + std::to_string(n));
  auto shape = TaylorShape::get(2 * n + 1, order);
  TaylorAlgebra alg{source, shape, z, t, n};
  return eval_expr(fdef, alg);
}

// ---------------------------------------------------------------------------
// CR jets
// ---------------------------------------------------------------------------

namespace {

// Z_a, Z_abar, d_t applied to Taylor data; coordinates enter through the
// local expansions zbar_a = conj(z_a) + xi_x - i xi_y etc.
TaylorValue apply_letter(const TaylorValue& tv, Letter d,
                         const std::vector<std::complex<double>>& z, int n) {
  const auto& shape = tv.shape();
  auto dz = [&](int a) {  // d/dz_a = (d/dx_a - i d/dy_a)/2
    return (tv.derivative(a - 1) - tv.derivative(n + a - 1).scaled({0.0, 1.0})).scaled(0.5);
  };
  auto dzb = [&](int a) {  // d/dzbar_a = (d/dx_a + i d/dy_a)/2
    return (tv.derivative(a - 1) + tv.derivative(n + a - 1).scaled({0.0, 1.0})).scaled(0.5);
  };
  switch (d.kind) {
    case LetterKind::T:
      return tv.derivative(2 * n);
    case LetterKind::Holo: {
      int a = d.index;
      // zbar_a as a Taylor polynomial around the point
      TaylorValue zbar = TaylorValue::variable(shape, a - 1, z[a - 1].real()) -
                         TaylorValue::variable(shape, n + a - 1, z[a - 1].imag())
                             .scaled({0.0, 1.0});
      return dz(a) + (zbar * tv.derivative(2 * n)).scaled({0.0, 1.0});
    }
    case LetterKind::Anti: {
      int a = d.index;
      TaylorValue zvar = TaylorValue::variable(shape, a - 1, z[a - 1].real()) +
                         TaylorValue::variable(shape, n + a - 1, z[a - 1].imag())
                             .scaled({0.0, 1.0});
      return dzb(a) - (zvar * tv.derivative(2 * n)).scaled({0.0, 1.0});
    }
  }
  throw Error("unreachable");
}

std::vector<CanonWord> all_words(int n, int cap) {
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

CRJetNumeric cr_jets_from_taylor(const TaylorValue& tv,
                                 const std::vector<std::complex<double>>& z, double t, int n) {
  (void)t;
  CRJetNumeric out;
  out.n = n;
  out.f = tv.value();
  out.e2f = std::exp(2.0 * tv.value());
  int cap = tv.shape()->order();
  for (const CanonWord& w : all_words(n, cap)) {
    TaylorValue cur = tv;
    for (const Letter& d : w.app_seq()) cur = apply_letter(cur, d, z, n);
    out.jets.emplace(w, cur.value());
  }
  return out;
}

std::complex<double> CRJetNumeric::jet(const CanonWord& w) const {
  auto it = jets.find(w);
  if (it == jets.end()) throw Error("jet value missing for word " + w.str());
  return it->second;
}

double CRJetNumeric::commutator_defect() const {
  // for real f: conj(f_{a bbar}) = Z_b Z_abar f = f_{b abar} - 2i delta_{ab} f_0,
  // which encodes [Z_a, Z_abar] = -2i d/dt
  double worst = 0.0;
  std::complex<double> f0 = jet(CanonWord{{}, {}, 1});
  for (const auto& [w, v] : jets) {
    if (w.holo.size() == 1 && w.anti.size() == 1 && w.zeros == 0) {
      std::uint8_t a = w.holo[0], b = w.anti[0];
      auto it = jets.find(CanonWord{{b}, {a}, 0});
      if (it == jets.end()) continue;
      std::complex<double> expect = it->second;
      if (a == b) expect -= std::complex<double>(0, 2) * f0;
      double scale = std::max(1.0, std::abs(expect));
      worst = std::max(worst, std::abs(std::conj(v) - expect) / scale);
    }
  }
  return worst;
}

FdReport fd_crosscheck(const ExprAST& fdef, const std::string& source,
                       const std::vector<std::complex<double>>& z, double t) {
  FdReport rep;
  int n = static_cast<int>(z.size());
  int nv = 2 * n + 1;
  TaylorValue tv = taylor_eval(fdef, source, z, t, 3);

  auto shifted = [&](int var, double h) {
    std::vector<std::complex<double>> zz = z;
    double tt_ = t;
    if (var < n)
      zz[var] += h;
    else if (var < 2 * n)
      zz[var - n] += std::complex<double>(0, h);
    else
      tt_ += h;
    return eval_expr_at(fdef, source, zz, tt_);
  };

  const auto& shape = *tv.shape();
  for (int v = 0; v < nv; ++v) {
    // first derivative
    double h = rep.h1;
    std::complex<double> fd1 = (shifted(v, h) - shifted(v, -h)) / (2 * h);
    std::complex<double> an1 = tv.coeffs()[shape.unit_index(v)];
    double scale1 = std::max(1.0, std::abs(an1));
    rep.max_rel_order1 = std::max(rep.max_rel_order1, std::abs(fd1 - an1) / scale1);

    // second derivative (pure)
    double h2 = rep.h2;
    std::complex<double> f0 = eval_expr_at(fdef, source, z, t);
    std::complex<double> fd2 = (shifted(v, h2) - 2.0 * f0 + shifted(v, -h2)) / (h2 * h2);
    int up = shape.raise_index(shape.unit_index(v), v);
    if (up >= 0) {
      std::complex<double> an2 = tv.coeffs()[static_cast<std::size_t>(up)] * 2.0;
      double scale2 = std::max(1.0, std::abs(an2));
      rep.max_rel_order2 = std::max(rep.max_rel_order2, std::abs(fd2 - an2) / scale2);
    }
  }
  return rep;
}

NumericResidual numeric_residual(const CRJetNumeric& jets) {
  const int n = jets.n;
  NumericResidual out;

  auto word_h = [](std::uint8_t a) { return CanonWord{{a}, {}, 0}; };
  auto word_a = [](std::uint8_t a) { return CanonWord{{}, {a}, 0}; };
  auto word_ha = [](std::uint8_t a, std::uint8_t b) { return CanonWord{{a}, {b}, 0}; };
  auto word_hh = [](std::uint8_t a, std::uint8_t b) {
    return CanonWord{{std::min(a, b), std::max(a, b)}, {}, 0};
  };

  std::complex<double> trace = 0.0, grad2 = 0.0;
  for (int a = 1; a <= n; ++a) {
    trace += jets.jet(word_ha(a, a));
    grad2 += jets.jet(word_h(a)) * jets.jet(word_a(a));
  }
  double lap = -trace.real();
  out.residual16 = lap - n * (grad2.real() + jets.e2f.real());

  std::complex<double> f0 = jets.jet(CanonWord{{}, {}, 1});
  std::complex<double> g = grad2 + jets.e2f - std::complex<double>(0, 1) * f0;

  double d2 = 0.0, e2 = 0.0, g2 = 0.0;
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      std::complex<double> D =
          jets.jet(word_hh(a, b)) - 2.0 * jets.jet(word_h(a)) * jets.jet(word_h(b));
      std::complex<double> E = jets.jet(word_ha(a, b));
      if (a == b) E -= trace / static_cast<double>(n);
      d2 += std::norm(D);
      e2 += std::norm(E);
    }
    std::complex<double> G = std::complex<double>(0, 1) * jets.jet(CanonWord{{static_cast<std::uint8_t>(a)}, {}, 1}) +
                             g * jets.jet(word_h(a));
    g2 += std::norm(G);
  }
  out.tensorD = std::sqrt(d2);
  out.tensorE = std::sqrt(e2);
  out.tensorG = std::sqrt(g2);
  return out;
}

}  // namespace crlab
