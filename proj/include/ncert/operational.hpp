#pragma once

// Operational theories: labeled preparations, measurements and
// transformations, their equivalence classes, and the convex-mixture and
// coarse-graining constructions that generate contexts.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncert/qmath.hpp"
#include "ncert/rational.hpp"

namespace ncert {

struct Preparation {
  std::string label;
  DensityOperator rho;
  std::string context_note;
};

struct Measurement {
  std::string label;
  Povm povm;
  std::string context_note;
};

struct Transformation {
  std::string label;
  KrausChannel channel;
  std::string context_note;
};

enum class ProcedureKind { Preparation, Measurement, Transformation };

std::string to_string(ProcedureKind kind);
ProcedureKind procedure_kind_from_string(const std::string& s);

struct WeightedLabel {
  Rational weight;
  std::string label;
};

/// target = sum_k weight_k * component_k, for procedures of one kind.
struct MixtureDecl {
  ProcedureKind kind = ProcedureKind::Preparation;
  std::string target;
  std::vector<WeightedLabel> components;
};

struct MixtureCheck {
  std::string name;
  double max_deviation = 0.0;
  bool ok = false;
};

/// Outcome permutation: outcome k of the first measurement pairs with
/// outcome perm[k] of the second.
using OutcomePermutation = std::vector<std::size_t>;

inline constexpr std::size_t kMaxPermutationOutcomes = 8;

bool prep_equivalent(const Preparation& p, const Preparation& q, double tol = kDefaultTol);
std::optional<OutcomePermutation> meas_equivalent(const Measurement& m, const Measurement& n,
                                                  bool allow_permutation = true,
                                                  double tol = kDefaultTol);
/// Every pairing perm with E_k = F_perm(k); empty when the outcome counts
/// differ. Lexicographic order, so the identity comes first when it matches.
std::vector<OutcomePermutation> outcome_matchings(const Measurement& m, const Measurement& n,
                                                  double tol = kDefaultTol);
bool transf_equivalent(const Transformation& s, const Transformation& t, double tol = kDefaultTol);

template <typename Procedure>
using Weighted = std::pair<double, Procedure>;

Preparation mix_preparations(const std::vector<Weighted<Preparation>>& components, std::string label,
                             double tol = kDefaultTol);
Measurement mix_measurements(const std::vector<Weighted<Measurement>>& components, std::string label,
                             double tol = kDefaultTol);
Transformation mix_channels(const std::vector<Weighted<Transformation>>& components, std::string label,
                            double tol = kDefaultTol);

/// partition[k] lists the fine-grained outcomes merged into coarse outcome k.
Measurement coarse_grain_povm(const Measurement& m, const std::vector<std::vector<std::size_t>>& partition,
                              std::string label = {});

class OperationalTheory {
 public:
  explicit OperationalTheory(Eigen::Index dim = 2) : dim_(dim) {}

  Eigen::Index dim() const { return dim_; }

  void add(Preparation p);
  void add(Measurement m);
  void add(Transformation t);
  /// Components and target must already be present.
  void declare_mixture(MixtureDecl decl);

  const std::map<std::string, Preparation>& preparations() const { return preparations_; }
  const std::map<std::string, Measurement>& measurements() const { return measurements_; }
  const std::map<std::string, Transformation>& transformations() const { return transformations_; }
  const std::vector<MixtureDecl>& mixtures() const { return mixtures_; }

  const Preparation& preparation(const std::string& label) const;
  const Measurement& measurement(const std::string& label) const;
  const Transformation& transformation(const std::string& label) const;

  /// Recomputes every declared mixture and compares it with its target
  /// (density matrices, effects element-wise, or Choi matrices).
  std::vector<MixtureCheck> verify_mixtures(double tol = kExactTol) const;
  bool mixtures_hold(double tol = kExactTol) const;

 private:
  Eigen::Index dim_;
  std::map<std::string, Preparation> preparations_;
  std::map<std::string, Measurement> measurements_;
  std::map<std::string, Transformation> transformations_;
  std::vector<MixtureDecl> mixtures_;
};

/// The six real qubit vectors psi_a, psi_A, psi_b, psi_B, psi_c, psi_C.
CVector canonical_state_vector(const std::string& name);
const std::vector<std::string>& canonical_state_names();

/// Canonical qubit instance: six pure preparations and their five mixtures
/// to I/2, the PVMs M_a, M_b, M_c with the mixed POVM M and the coin flip
/// M~, and y-rotations T_0 .. T_5pi/3 with the five mixtures giving T.
OperationalTheory paper_instances();

/// Rotation angles (multiples of pi/3) and their labels "T_0", "T_pi/3", ...
const std::vector<std::pair<int, std::string>>& rotation_labels();

}  // namespace ncert
