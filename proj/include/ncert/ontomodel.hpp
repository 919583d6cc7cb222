#pragma once

// Ontological models on a finite ontic space {0, ..., N-1}. Transformations
// act as column-stochastic matrices.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ncert/operational.hpp"

namespace ncert {

class Distribution {
 public:
  explicit Distribution(Eigen::VectorXd weights, double tol = kDefaultTol);
  static Distribution point_mass(Eigen::Index size, Eigen::Index at);
  static Distribution uniform(Eigen::Index size);

  const Eigen::VectorXd& weights() const { return w_; }
  Eigen::Index size() const { return w_.size(); }
  double operator[](Eigen::Index i) const { return w_(i); }

 private:
  Eigen::VectorXd w_;
};

/// values(k, lambda) is the probability of outcome k at ontic state lambda.
class IndicatorSet {
 public:
  explicit IndicatorSet(Eigen::MatrixXd values, double tol = kDefaultTol);
  /// Same value vector at every ontic state.
  static IndicatorSet constant(const Eigen::VectorXd& per_outcome, Eigen::Index ontic_size);
  /// Outcome code[lambda] occurs with certainty at lambda.
  static IndicatorSet deterministic(const std::vector<Eigen::Index>& code, Eigen::Index outcomes);

  const Eigen::MatrixXd& values() const { return v_; }
  Eigen::Index outcomes() const { return v_.rows(); }
  Eigen::Index ontic_size() const { return v_.cols(); }

 private:
  Eigen::MatrixXd v_;
};

/// Column-stochastic: new distribution = matrix * old distribution.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Eigen::MatrixXd m, double tol = kDefaultTol);
  static TransitionMatrix identity(Eigen::Index size);

  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::Index output_size() const { return m_.rows(); }
  Eigen::Index input_size() const { return m_.cols(); }

 private:
  Eigen::MatrixXd m_;
};

struct OntModel {
  Eigen::Index ontic_size = 1;
  std::map<std::string, Distribution> preparations;
  std::map<std::string, IndicatorSet> measurements;
  std::map<std::string, TransitionMatrix> transformations;

  /// Throws ValidationError if any representation lives on another space.
  void validate() const;

  const Distribution& preparation(const std::string& label) const;
  const IndicatorSet& measurement(const std::string& label) const;
  const TransitionMatrix& transformation(const std::string& label) const;
};

/// p_k = sum_{l', l} xi_k(l') Gamma(l', l) mu(l); Gamma absent means identity.
Eigen::VectorXd predict(const Distribution& mu, const TransitionMatrix* gamma, const IndicatorSet& xi);
inline Eigen::VectorXd predict(const Distribution& mu, const IndicatorSet& xi) { return predict(mu, nullptr, xi); }

Distribution push_forward(const TransitionMatrix& gamma, const Distribution& mu);

std::set<Eigen::Index> support(const Distribution& mu, double tol = kDefaultTol);
bool disjoint(const Distribution& mu, const Distribution& nu, double tol = kDefaultTol);
bool is_outcome_deterministic(const IndicatorSet& xi, double tol = kDefaultTol);

enum class StateView { Ontic, Epistemic, Neither };
std::string to_string(StateView view);

struct StateViewReport {
  StateView view = StateView::Epistemic;
  /// Fewer than two preparations: both views hold trivially.
  bool vacuous = false;
};

using OrthogonalityPredicate = std::function<bool(const std::string&, const std::string&)>;

StateViewReport classify_state_view(const OntModel& model, const std::vector<std::string>& prep_labels,
                                    const OrthogonalityPredicate& orthogonal, double tol = kDefaultTol);

/// Orthogonality of density operators (rho rho' = 0) looked up in a theory.
OrthogonalityPredicate orthogonality_in(const OperationalTheory& theory, double tol = kDefaultTol);

struct PredictionTriple {
  std::string preparation;
  std::optional<std::string> transformation;
  std::string measurement;
  double deviation = 0.0;
};

struct ReproductionReport {
  std::size_t triples_checked = 0;
  double max_deviation = 0.0;
  /// Triples above tol, in label order.
  std::vector<PredictionTriple> failures;
  bool passed() const { return failures.empty(); }
};

ReproductionReport model_reproduces_theory(const OntModel& model, const OperationalTheory& theory,
                                           double tol = kDefaultTol);

struct DerivationStep {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Replays the argument that preparation noncontextuality forces outcome
/// determinism for a rank-1 PVM: (i) the eigenstate distributions have
/// pairwise disjoint supports, (ii) their union is the support of the
/// maximally mixed distribution and that is the whole space, (iii) the
/// uniform mixture of the eigenstate distributions is the maximally mixed
/// distribution; then the PVM's indicators must be idempotent everywhere.
struct OutcomeDeterminismReport {
  std::vector<DerivationStep> steps;
  bool premises_hold = false;
  bool indicators_idempotent = false;
  /// First step that failed, if any.
  std::optional<std::string> failing_step;
};

OutcomeDeterminismReport outcome_determinism_from_prep_nc(const OntModel& model, const std::string& pvm_label,
                                                          const std::vector<std::string>& prep_labels,
                                                          const std::string& mixed_label, int dim,
                                                          double tol = kDefaultTol);

}  // namespace ncert
