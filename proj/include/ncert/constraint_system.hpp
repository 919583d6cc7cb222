#pragma once

// Pointwise constraint systems: nonnegative unknowns (the values of
// distributions at one ontic state), complementarity pairs (at least one
// member of each pair vanishes) and linear forms with exact rational
// coefficients that are constrained to be equal within each class.

#include <string>
#include <utility>
#include <vector>

#include "ncert/operational.hpp"
#include "ncert/rational.hpp"

namespace ncert {

struct LinearTerm {
  std::string variable;
  Rational coefficient;
};

struct LinearForm {
  std::string name;
  std::vector<LinearTerm> terms;
  /// Forms sharing a class label are constrained mutually equal.
  std::string equivalence_class = "nu";
};

using VariablePair = std::pair<std::string, std::string>;

class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  ConstraintSystem(std::vector<std::string> variables, std::vector<VariablePair> disjoint_pairs,
                   std::vector<LinearForm> equality_groups);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<VariablePair>& disjoint_pairs() const { return pairs_; }
  const std::vector<LinearForm>& equality_groups() const { return forms_; }

  std::size_t variable_count() const { return variables_.size(); }
  std::size_t index_of(const std::string& variable) const;

  /// Equivalence classes in order of first appearance.
  std::vector<std::string> classes() const;

  /// Row r holds the coefficients of form r.
  RationalMatrix form_matrix() const;
  /// One row per form that is not the first of its class: form - first.
  /// Pointwise solutions are exactly the nonnegative kernel vectors.
  RationalMatrix equality_matrix() const;

  /// Copy without the named form.
  ConstraintSystem without_form(const std::string& name) const;

 private:
  std::vector<std::string> variables_;
  std::vector<VariablePair> pairs_;
  std::vector<LinearForm> forms_;
};

/// "1/2 a + 1/3 b", with zero coefficients (or variables in `omit`) dropped;
/// "0" for an empty expression.
std::string format_form(const ConstraintSystem& sys, const RationalVector& coeffs,
                        const std::vector<bool>& omit = {});

/// Six unknowns a, A, b, B, c, C; pairs (a,A), (b,B), (c,C); forms
/// 1/2 a + 1/2 A, 1/2 b + 1/2 B, 1/2 c + 1/2 C, 1/3 (a + b + c),
/// 1/3 (A + B + C), all in one class.
ConstraintSystem build_prep_system();

/// Unknowns: preparations that are not mixture targets. Pairs: orthogonal
/// density operators. Forms: one per declared preparation mixture, grouped
/// by the equivalence class of the target.
ConstraintSystem system_from_theory(const OperationalTheory& theory, double tol = kDefaultTol);

}  // namespace ncert
