#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crlab/quantities.hpp"

namespace crlab {

enum class IdentityId {
  Lemma1,
  JLFormula,
  WeightDerivative,
  PsiSquares,
  GDerivativePair,
  Lem3Div,
  Lem4Div,
  Lem5Div,
};

const char* identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(const std::string& name);
std::vector<IdentityId> all_identities();

// Mutations used by the falsifiability tests: bump one c-coefficient by +1
// or drop one of the six right-hand groups of the divergence formula.
struct Mutation {
  enum class Kind { CoeffPlusOne, DropTerm };
  Kind kind = Kind::CoeffPlusOne;
  int index = 1;  // c index 1..6 or term index 1..6

  static std::optional<Mutation> parse(const std::string& text);
  std::string str() const;
};

// Names of the six right-hand groups, index 1..6.
const char* lemma1_term_name(int index);

struct VerificationReport {
  std::string identity;
  int n = 0;
  std::string m_mode;
  std::string mutation;  // empty when unmutated
  bool zero = false;
  std::string witness;          // smallest surviving term when nonzero
  std::size_t residual_terms = 0;
  std::size_t components = 0;   // how many component equations were checked
  std::string error;            // nonempty when verification could not run
  double elapsed_sec = 0.0;

  bool passed() const { return error.empty() && zero; }
};

VerificationReport verify_identity(IdentityId id, int n, const MMode& m,
                                   const Mutation* mutation = nullptr);

// Numeric spot check of (2.5): random rational samples for
// (D, E, G, f0, s, m), both sides evaluated in doubles.
struct PsiNumericReport {
  std::size_t samples = 0;
  double max_rel_err = 0.0;
  std::uint64_t seed = 0;
};
PsiNumericReport psi_numeric_check(std::uint64_t seed, std::size_t samples);

}  // namespace crlab
