#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace crlab {

// One derivation letter: Z_alpha (holomorphic), Z_alphabar (antiholomorphic)
// or the transversal d/dt. Holo/Anti indices run 1..n.
enum class LetterKind : std::uint8_t { Holo = 0, Anti = 1, T = 2 };

struct Letter {
  LetterKind kind;
  std::uint8_t index;  // 1..n for Holo/Anti, 0 for T

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.kind == b.kind && a.index == b.index;
  }
  // Canonical application-order rank: holomorphic ascending, then
  // antiholomorphic ascending, then transversal letters.
  int rank() const { return static_cast<int>(kind) * 256 + index; }

  std::string str() const {
    if (kind == LetterKind::T) return "0";
    std::string s = std::to_string(index);
    if (kind == LetterKind::Anti) s += "b";
    return s;
  }
};

inline Letter ho(std::uint8_t a) { return Letter{LetterKind::Holo, a}; }
inline Letter an(std::uint8_t a) { return Letter{LetterKind::Anti, a}; }
inline Letter tt() { return Letter{LetterKind::T, 0}; }

using WordSeq = std::vector<Letter>;  // application order, innermost first

// Canonical stored form of a jet word: sorted holomorphic block, sorted
// antiholomorphic block, trailing transversal count.
struct CanonWord {
  std::vector<std::uint8_t> holo;
  std::vector<std::uint8_t> anti;
  std::uint8_t zeros = 0;

  std::size_t length() const { return holo.size() + anti.size() + zeros; }

  WordSeq app_seq() const {
    WordSeq s;
    s.reserve(length());
    for (auto a : holo) s.push_back(ho(a));
    for (auto a : anti) s.push_back(an(a));
    for (std::uint8_t k = 0; k < zeros; ++k) s.push_back(tt());
    return s;
  }

  bool contains_pair(std::uint8_t idx) const {
    return std::find(holo.begin(), holo.end(), idx) != holo.end() &&
           std::find(anti.begin(), anti.end(), idx) != anti.end();
  }

  friend bool operator==(const CanonWord& a, const CanonWord& b) {
    return a.holo == b.holo && a.anti == b.anti && a.zeros == b.zeros;
  }
  friend bool operator<(const CanonWord& a, const CanonWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.holo != b.holo) return a.holo < b.holo;
    if (a.anti != b.anti) return a.anti < b.anti;
    return a.zeros < b.zeros;
  }

  std::string str() const {
    std::string s;
    for (auto a : holo) s += std::to_string(a);
    for (auto a : anti) s += std::to_string(a) + "b";
    for (std::uint8_t k = 0; k < zeros; ++k) s += "0";
    return s;
  }
};

// True iff the sequence is already in canonical application order.
inline bool word_is_canonical(const WordSeq& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i].rank() > seq[i + 1].rank()) return false;
  return true;
}

inline CanonWord canon_of_sorted(const WordSeq& seq) {
  CanonWord w;
  for (const auto& l : seq) {
    switch (l.kind) {
      case LetterKind::Holo: w.holo.push_back(l.index); break;
      case LetterKind::Anti: w.anti.push_back(l.index); break;
      case LetterKind::T: ++w.zeros; break;
    }
  }
  return w;
}

// The bar involution: each letter barred, transversal fixed. The result is
// generally no longer canonical.
inline WordSeq barred(const WordSeq& seq) {
  WordSeq out;
  out.reserve(seq.size());
  for (const auto& l : seq) {
    switch (l.kind) {
      case LetterKind::Holo: out.push_back(an(l.index)); break;
      case LetterKind::Anti: out.push_back(ho(l.index)); break;
      case LetterKind::T: out.push_back(tt()); break;
    }
  }
  return out;
}

}  // namespace crlab
