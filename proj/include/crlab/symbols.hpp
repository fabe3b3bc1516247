#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crlab/error.hpp"

namespace crlab {

using SymbolId = std::uint32_t;

// Ordered registry of atomic symbols. The total order used everywhere for
// monomial comparison is the registration order, so a fixed registration
// sequence gives a fixed canonical form.
class SymbolTable {
public:
  SymbolId intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  SymbolId lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw RegistryError("unregistered symbol: " + name);
    return it->second;
  }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const std::string& name(SymbolId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

private:
  std::vector<std::string> names_;
  std::map<std::string, SymbolId> index_;
};

// Sorted (symbol, positive exponent) pairs; the empty monomial is 1.
using Monomial = std::vector<std::pair<SymbolId, std::uint32_t>>;

inline void monomial_mul_inplace(Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  a = std::move(out);
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  monomial_mul_inplace(r, b);
  return r;
}

}  // namespace crlab
