#include "ncert/ontomodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ncert {

Distribution::Distribution(Eigen::VectorXd weights, double tol) : w_(std::move(weights)) {
  if (w_.size() == 0) throw ValidationError("distribution over an empty ontic space");
  if (!w_.allFinite() || w_.minCoeff() < -tol) throw ValidationError("distribution has a negative weight");
  if (std::abs(w_.sum() - 1.0) > tol) throw ValidationError("distribution does not sum to 1");
}

Distribution Distribution::point_mass(Eigen::Index size, Eigen::Index at) {
  if (at < 0 || at >= size) throw ValidationError("point mass outside the ontic space");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(size);
  w(at) = 1.0;
  return Distribution(std::move(w));
}

Distribution Distribution::uniform(Eigen::Index size) {
  if (size <= 0) throw ValidationError("ontic space must be nonempty");
  return Distribution(Eigen::VectorXd::Constant(size, 1.0 / static_cast<double>(size)));
}

IndicatorSet::IndicatorSet(Eigen::MatrixXd values, double tol) : v_(std::move(values)) {
  if (v_.rows() == 0 || v_.cols() == 0) throw ValidationError("indicator set is empty");
  if (!v_.allFinite() || v_.minCoeff() < -tol || v_.maxCoeff() > 1.0 + tol)
    throw ValidationError("indicator values leave [0, 1]");
  const Eigen::RowVectorXd sums = v_.colwise().sum();
  if ((sums.array() - 1.0).abs().maxCoeff() > tol)
    throw ValidationError("indicator values do not sum to 1 at every ontic state");
}

IndicatorSet IndicatorSet::constant(const Eigen::VectorXd& per_outcome, Eigen::Index ontic_size) {
  return IndicatorSet(per_outcome.replicate(1, ontic_size));
}

IndicatorSet IndicatorSet::deterministic(const std::vector<Eigen::Index>& code, Eigen::Index outcomes) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(outcomes, static_cast<Eigen::Index>(code.size()));
  for (std::size_t l = 0; l < code.size(); ++l) {
    if (code[l] < 0 || code[l] >= outcomes) throw ValidationError("deterministic code names a missing outcome");
    v(code[l], static_cast<Eigen::Index>(l)) = 1.0;
  }
  return IndicatorSet(std::move(v));
}

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd m, double tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) throw ValidationError("transition matrix is empty");
  if (!m_.allFinite() || m_.minCoeff() < -tol) throw ValidationError("transition matrix has a negative entry");
  const Eigen::RowVectorXd sums = m_.colwise().sum();
  if ((sums.array() - 1.0).abs().maxCoeff() > tol)
    throw ValidationError("transition matrix columns do not sum to 1");
}

TransitionMatrix TransitionMatrix::identity(Eigen::Index size) {
  return TransitionMatrix(Eigen::MatrixXd::Identity(size, size));
}

// ---------------------------------------------------------------------------

void OntModel::validate() const {
  if (ontic_size < 1) throw ValidationError("ontic space must be nonempty");
  for (const auto& [label, mu] : preparations)
    if (mu.size() != ontic_size) throw ValidationError("distribution '" + label + "' lives on another space");
  for (const auto& [label, xi] : measurements)
    if (xi.ontic_size() != ontic_size) throw ValidationError("indicator set '" + label + "' lives on another space");
  for (const auto& [label, g] : transformations)
    if (g.input_size() != ontic_size || g.output_size() != ontic_size)
      throw ValidationError("transition matrix '" + label + "' lives on another space");
}

namespace {

template <typename Map>
const typename Map::mapped_type& find_rep(const Map& map, const std::string& label, const char* kind) {
  const auto it = map.find(label);
  if (it == map.end()) throw ValidationError(std::string("model has no ") + kind + " for '" + label + "'");
  return it->second;
}

}  // namespace

const Distribution& OntModel::preparation(const std::string& label) const {
  return find_rep(preparations, label, "distribution");
}
const IndicatorSet& OntModel::measurement(const std::string& label) const {
  return find_rep(measurements, label, "indicator set");
}
const TransitionMatrix& OntModel::transformation(const std::string& label) const {
  return find_rep(transformations, label, "transition matrix");
}

// ---------------------------------------------------------------------------

Eigen::VectorXd predict(const Distribution& mu, const TransitionMatrix* gamma, const IndicatorSet& xi) {
  if (gamma) {
    if (gamma->input_size() != mu.size() || gamma->output_size() != xi.ontic_size())
      throw DimensionError("transition matrix does not connect the distribution and indicator spaces");
    return xi.values() * (gamma->matrix() * mu.weights());
  }
  if (xi.ontic_size() != mu.size()) throw DimensionError("distribution and indicator set differ in size");
  return xi.values() * mu.weights();
}

Distribution push_forward(const TransitionMatrix& gamma, const Distribution& mu) {
  if (gamma.input_size() != mu.size()) throw DimensionError("transition matrix does not act on the distribution");
  return Distribution(gamma.matrix() * mu.weights());
}

std::set<Eigen::Index> support(const Distribution& mu, double tol) {
  std::set<Eigen::Index> s;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu[i] > tol) s.insert(i);
  return s;
}

bool disjoint(const Distribution& mu, const Distribution& nu, double tol) {
  if (mu.size() != nu.size()) throw DimensionError("distributions differ in size");
  return (mu.weights().array() * nu.weights().array()).maxCoeff() <= tol;
}

bool is_outcome_deterministic(const IndicatorSet& xi, double tol) {
  const auto& v = xi.values().array();
  return (v.abs() <= tol || (v - 1.0).abs() <= tol).all();
}

std::string to_string(StateView view) {
  switch (view) {
    case StateView::Ontic: return "ontic";
    case StateView::Epistemic: return "epistemic";
    case StateView::Neither: return "neither";
  }
  return "neither";
}

StateViewReport classify_state_view(const OntModel& model, const std::vector<std::string>& prep_labels,
                                    const OrthogonalityPredicate& orthogonal, double tol) {
  std::vector<const Distribution*> mus;
  for (const auto& l : prep_labels) mus.push_back(&model.preparation(l));
  if (prep_labels.size() < 2) return {StateView::Epistemic, true};

  bool all_disjoint = true;
  bool disjoint_iff_orthogonal = true;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    for (std::size_t j = i + 1; j < mus.size(); ++j) {
      const bool dis = disjoint(*mus[i], *mus[j], tol);
      all_disjoint = all_disjoint && dis;
      disjoint_iff_orthogonal = disjoint_iff_orthogonal && (dis == orthogonal(prep_labels[i], prep_labels[j]));
    }
  }
  if (all_disjoint) return {StateView::Ontic, false};
  if (disjoint_iff_orthogonal) return {StateView::Epistemic, false};
  return {StateView::Neither, false};
}

OrthogonalityPredicate orthogonality_in(const OperationalTheory& theory, double tol) {
  return [&theory, tol](const std::string& x, const std::string& y) {
    const auto& a = theory.preparation(x).rho.matrix();
    const auto& b = theory.preparation(y).rho.matrix();
    return max_abs_entry(a * b) <= tol;
  };
}

ReproductionReport model_reproduces_theory(const OntModel& model, const OperationalTheory& theory, double tol) {
  model.validate();
  ReproductionReport report;

  std::vector<std::optional<std::string>> transforms{std::nullopt};
  for (const auto& [label, t] : theory.transformations()) transforms.emplace_back(label);

  // std::map iteration keeps the report in label order.
  for (const auto& [plabel, prep] : theory.preparations()) {
    const auto& mu = model.preparation(plabel);
    for (const auto& tlabel : transforms) {
      const TransitionMatrix* gamma = tlabel ? &model.transformation(*tlabel) : nullptr;
      const DensityOperator rho = tlabel ? apply_channel(theory.transformation(*tlabel).channel, prep.rho) : prep.rho;
      for (const auto& [mlabel, meas] : theory.measurements()) {
        const auto& xi = model.measurement(mlabel);
        if (xi.outcomes() != static_cast<Eigen::Index>(meas.povm.size()))
          throw ValidationError("indicator set '" + mlabel + "' has the wrong outcome count");
        const Eigen::VectorXd p = predict(mu, gamma, xi);
        double dev = 0.0;
        for (std::size_t k = 0; k < meas.povm.size(); ++k)
          dev = std::max(dev, std::abs(p(static_cast<Eigen::Index>(k)) - born_probability(rho, meas.povm[k])));
        ++report.triples_checked;
        report.max_deviation = std::max(report.max_deviation, dev);
        if (dev > tol) report.failures.push_back({plabel, tlabel, mlabel, dev});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::string describe_set(const std::set<Eigen::Index>& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto i : s) {
    out << (first ? "" : ",") << i;
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace

OutcomeDeterminismReport outcome_determinism_from_prep_nc(const OntModel& model, const std::string& pvm_label,
                                                          const std::vector<std::string>& prep_labels,
                                                          const std::string& mixed_label, int dim,
                                                          double tol) {
  model.validate();
  if (dim < 1) throw ValidationError("dimension must be positive");
  if (prep_labels.size() != static_cast<std::size_t>(dim))
    throw ValidationError("need one eigenstate preparation per PVM outcome");
  const auto& xi = model.measurement(pvm_label);
  if (xi.outcomes() != dim) throw ValidationError("PVM outcome count differs from the dimension");
  std::vector<const Distribution*> mus;
  for (const auto& l : prep_labels) mus.push_back(&model.preparation(l));
  const auto& mixed = model.preparation(mixed_label);

  OutcomeDeterminismReport report;

  // (i) pairwise disjoint supports
  {
    DerivationStep step{"supports_disjoint", true, "eigenstate distributions are pairwise disjoint"};
    for (std::size_t i = 0; i < mus.size() && step.passed; ++i)
      for (std::size_t j = i + 1; j < mus.size() && step.passed; ++j)
        if (!disjoint(*mus[i], *mus[j], tol)) {
          step.passed = false;
          step.detail = "supports of '" + prep_labels[i] + "' and '" + prep_labels[j] + "' overlap";
        }
    report.steps.push_back(step);
  }

  // (ii) union of supports = support of the maximally mixed distribution = whole space
  {
    std::set<Eigen::Index> uni;
    for (const auto* mu : mus) {
      const auto s = support(*mu, tol);
      uni.insert(s.begin(), s.end());
    }
    const auto mixed_support = support(mixed, tol);
    std::set<Eigen::Index> whole;
    for (Eigen::Index i = 0; i < model.ontic_size; ++i) whole.insert(i);
    DerivationStep step{"supports_cover_space", uni == mixed_support && mixed_support == whole, ""};
    step.detail = "union of supports " + describe_set(uni) + ", support of '" + mixed_label + "' " +
                  describe_set(mixed_support) + ", ontic space size " + std::to_string(model.ontic_size);
    report.steps.push_back(step);
  }

  // (iii) sum_k (1/d) mu_k = mu_{I/d}
  {
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(model.ontic_size);
    for (const auto* mu : mus) avg += mu->weights() / static_cast<double>(dim);
    const double dev = (avg - mixed.weights()).cwiseAbs().maxCoeff();
    std::ostringstream detail;
    detail << "max deviation of the uniform eigenstate mixture from '" << mixed_label << "': " << dev;
    report.steps.push_back({"mixture_matches", dev <= tol, detail.str()});
  }

  report.premises_hold = std::all_of(report.steps.begin(), report.steps.end(),
                                     [](const DerivationStep& s) { return s.passed; });
  report.indicators_idempotent = is_outcome_deterministic(xi, tol);
  report.steps.push_back({"indicators_idempotent", report.indicators_idempotent,
                          report.indicators_idempotent ? "every indicator value is 0 or 1"
                                                       : "some indicator value is fractional"});
  for (const auto& s : report.steps)
    if (!s.passed) {
      report.failing_step = s.name;
      break;
    }
  return report;
}

}  // namespace ncert
