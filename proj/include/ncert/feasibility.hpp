#pragma once

// Feasibility certificates for pointwise constraint systems.
//
// Stage 1 enumerates every zero pattern (one forced-zero member per
// disjoint pair) and computes the extreme rays of the cone
// {x >= 0 : pattern zeros, equality forms agree}. Stage 2 asks whether a
// nonnegative combination of the collected rays gives every variable total
// weight exactly 1. A feasible answer comes with an explicit finite
// ontological model (one ontic state per ray used); an infeasible answer
// comes with the complete case table.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncert/constraint_system.hpp"
#include "ncert/ontomodel.hpp"

namespace ncert {

inline constexpr std::size_t kMaxDisjointPairs = 20;
/// Support enumeration inside a pattern is exponential in the free variables.
inline constexpr std::size_t kMaxFreeVariables = 24;

class EnumerationBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { Feasible, Infeasible };
std::string to_string(Verdict v);

enum class CaseConclusion { AllZero, Rays, Values };

struct CaseRow {
  /// Zeroed variables for constraint patterns; indicators set to 1 for
  /// deterministic-assignment tables.
  std::vector<std::string> pattern;
  CaseConclusion conclusion = CaseConclusion::AllZero;
  std::vector<RationalVector> rays;
  std::vector<Rational> values;
  std::vector<std::string> derivation;
};

struct PremiseCheck {
  std::string name;
  double max_deviation = 0.0;
  double tol = kExactTol;
  bool passed() const { return max_deviation <= tol; }
};

struct Certificate {
  std::string kind;
  Verdict verdict = Verdict::Infeasible;
  std::optional<ConstraintSystem> system;
  std::optional<OntModel> witness;
  std::vector<CaseRow> cases;
  std::vector<PremiseCheck> premise_checks;
  std::vector<std::string> notes;

  bool premises_hold() const;
};

/// Zero set of pattern `index`: bit (p-1-i) of index picks the second member
/// of pair i, so increasing indices are lexicographic in the pair choices.
std::vector<bool> zero_pattern(const ConstraintSystem& sys, std::size_t index);

/// Extreme rays of {x >= 0 : x_i = 0 for zeroed i, E x = 0}, each scaled so
/// its first nonzero coordinate is 1, in a deterministic order.
std::vector<RationalVector> extreme_rays(const ConstraintSystem& sys, const std::vector<bool>& zeroed);

/// A nonnegative x with a x = b, or nothing. Exact phase-one simplex with
/// Bland's rule.
std::optional<RationalVector> nonnegative_solution(const RationalMatrix& a, const RationalVector& b);

/// Substitution-style derivation that the pattern's cone is {0}: repeatedly
/// equate two forms of one class and read off variables that must vanish.
/// Returns the steps and whether they reach every variable.
std::pair<std::vector<std::string>, bool> derive_all_zero(const ConstraintSystem& sys,
                                                           const std::vector<bool>& zeroed);

Certificate pointwise_feasibility(const ConstraintSystem& sys);

/// Witness distributions are valid, disjoint pairs have disjoint supports,
/// and every class's forms agree at every ontic state.
bool verify_witness(const ConstraintSystem& sys, const OntModel& witness, double tol = kDefaultTol);

/// Re-checks one constraint-pattern row: rays by substitution, all-zero rows
/// by an independent linear-feasibility solve.
bool verify_case(const ConstraintSystem& sys, const CaseRow& row);

}  // namespace ncert
