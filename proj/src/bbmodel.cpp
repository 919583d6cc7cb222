#include "ncert/bbmodel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "ncert/operational.hpp"

namespace ncert {

PureOnticState::PureOnticState(const CVector& psi, double tol) : psi_(psi) {
  if (psi_.size() != 2) throw DimensionError("ontic states are qubit vectors");
  if (std::abs(psi_.norm() - 1.0) > tol) throw ValidationError("ontic state vector is not normalized");
  for (Eigen::Index i = 0; i < psi_.size(); ++i) {
    if (std::abs(psi_(i)) <= kExactTol) continue;
    psi_ *= std::conj(psi_(i)) / std::abs(psi_(i));
    psi_(i) = Complex(psi_(i).real(), 0.0);
    break;
  }
}

DensityOperator PureOnticState::density() const { return DensityOperator::pure(psi_); }

bool PureOnticState::same_ray(const PureOnticState& other, double tol) const {
  return max_abs_entry(psi_ - other.psi_) <= tol;
}

BBPreparation::BBPreparation(std::vector<BBComponent> components, double tol) : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("preparation needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.probability < -tol) throw ValidationError("negative mixture weight");
    total += c.probability;
  }
  if (std::abs(total - 1.0) > tol) throw ValidationError("mixture weights do not sum to 1");
}

BBPreparation BBPreparation::pure(const PureOnticState& state) { return BBPreparation({{1.0, state}}); }

DensityOperator BBPreparation::density() const {
  CMatrix rho = CMatrix::Zero(2, 2);
  for (const auto& c : components_) rho += c.probability * c.state.density().matrix();
  return DensityOperator(rho);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BBRng::BBRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t derived = splitmix64(s);
  for (std::uint64_t k = 0; k < stream; ++k) derived = splitmix64(s);
  engine_.seed(derived);
}

double BBRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t BBRng::sample_index(const Eigen::VectorXd& p) {
  const double u = uniform();
  double cumulative = 0.0;
  std::size_t last = 0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) <= 0.0) continue;
    last = static_cast<std::size_t>(k);
    cumulative += p(k);
    if (u < cumulative) return last;
  }
  return last;
}

Eigen::VectorXd bb_indicator(const Povm& povm, const PureOnticState& psi) {
  if (povm.dim() != 2) throw DimensionError("the model is defined for qubit POVMs");
  const DensityOperator rho = psi.density();
  Eigen::VectorXd xi(static_cast<Eigen::Index>(povm.size()));
  for (std::size_t k = 0; k < povm.size(); ++k) xi(static_cast<Eigen::Index>(k)) = born_probability(rho, povm[k]);
  return xi;
}

namespace {

Eigen::VectorXd component_weights(const BBPreparation& prep) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(prep.components().size()));
  for (std::size_t i = 0; i < prep.components().size(); ++i)
    w(static_cast<Eigen::Index>(i)) = prep.components()[i].probability;
  return w;
}

}  // namespace

std::vector<std::size_t> bb_sample_indices(const BBPreparation& prep, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("sample count must be positive");
  BBRng rng(seed);
  const Eigen::VectorXd w = component_weights(prep);
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = rng.sample_index(w);
  return out;
}

std::vector<PureOnticState> bb_sample(const BBPreparation& prep, std::size_t n, std::uint64_t seed) {
  std::vector<PureOnticState> out;
  out.reserve(n);
  for (std::size_t i : bb_sample_indices(prep, n, seed)) out.push_back(prep.components()[i].state);
  return out;
}

SimulationReport bb_simulate(const BBPreparation& prep, const Povm& povm, std::size_t n, std::uint64_t seed,
                             std::string prep_name, std::string povm_name) {
  if (n == 0) throw ValidationError("sample count must be positive");
  if (povm.dim() != 2) throw DimensionError("the model is defined for qubit POVMs");
  const Eigen::VectorXd w = component_weights(prep);
  std::vector<Eigen::VectorXd> indicators;
  for (const auto& c : prep.components()) indicators.push_back(bb_indicator(povm, c.state));

  SimulationReport report;
  report.prep = std::move(prep_name);
  report.povm = std::move(povm_name);
  report.n = n;
  report.seed = seed;
  report.counts.assign(povm.size(), 0);
  BBRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t component = rng.sample_index(w);
    ++report.counts[rng.sample_index(indicators[component])];
  }

  const DensityOperator rho = prep.density();
  const auto k = static_cast<Eigen::Index>(povm.size());
  report.frequencies.resize(k);
  report.born.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double p = born_probability(rho, povm[static_cast<std::size_t>(j)]);
    report.frequencies(j) = static_cast<double>(report.counts[static_cast<std::size_t>(j)]) / static_cast<double>(n);
    report.born(j) = p;
    report.max_abs_dev = std::max(report.max_abs_dev, std::abs(report.frequencies(j) - p));
    report.bound = std::max(report.bound, 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)));
  }
  report.bound += 1e-12;
  return report;
}

PrepContextualityReport bb_prep_contextuality_demo() {
  auto half_mix = [](const std::string& x, const std::string& y) {
    return BBPreparation({{0.5, PureOnticState(canonical_state_vector(x))}, {0.5, PureOnticState(canonical_state_vector(y))}});
  };
  const BBPreparation first = half_mix("a", "A");
  const BBPreparation second = half_mix("b", "B");

  PrepContextualityReport report;
  report.prep_equivalent = prep_equivalent(Preparation{"aA", first.density(), "mixture"},
                                           Preparation{"bB", second.density(), "mixture"});
  // Total variation over the union of the two finite supports.
  double shared_mass = 0.0;
  for (const auto& c : first.components()) {
    for (const auto& d : second.components()) {
      if (!c.state.same_ray(d.state)) continue;
      ++report.shared_support_points;
      shared_mass += std::min(c.probability, d.probability);
    }
  }
  report.total_variation = 1.0 - shared_mass;
  report.contextual = report.prep_equivalent && report.shared_support_points == 0;
  return report;
}

namespace {

CMatrix random_unitary(BBRng& rng) {
  CMatrix g(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) g(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(2, 2);
}

/// Hermitian with eigenvalues in [lo, hi].
CMatrix random_hermitian(BBRng& rng, double lo, double hi) {
  const CMatrix u = random_unitary(rng);
  Eigen::VectorXcd d(2);
  d << lo + (hi - lo) * rng.uniform(), lo + (hi - lo) * rng.uniform();
  return u * d.asDiagonal() * u.adjoint();
}

Povm two_outcome(const CMatrix& e) { return Povm::from_matrices({e, CMatrix::Identity(2, 2) - e}); }

/// sum_alpha p_alpha xi(F^alpha) for a decomposition into two-outcome POVMs.
Eigen::VectorXd mixed_indicator(const std::vector<std::pair<double, Povm>>& parts, const PureOnticState& psi) {
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(parts.front().second.size()));
  for (const auto& [p, povm] : parts) xi += p * bb_indicator(povm, psi);
  return xi;
}

}  // namespace

MeasNoncontextualityReport bb_meas_noncontextuality_property(std::size_t trials, std::uint64_t seed) {
  BBRng rng(seed);
  MeasNoncontextualityReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    // Q has spectrum in [1/4, 3/4]; perturbations of norm <= 1/5 keep every
    // component a valid effect.
    const CMatrix q = random_hermitian(rng, 0.25, 0.75);
    const CMatrix d1 = random_hermitian(rng, -0.2, 0.2);
    const CMatrix d2 = random_hermitian(rng, -0.2, 0.2);
    const double p = 0.2 + 0.6 * rng.uniform();
    const std::vector<std::pair<double, Povm>> first{{0.5, two_outcome(q + d1)}, {0.5, two_outcome(q - d1)}};
    const std::vector<std::pair<double, Povm>> second{{p, two_outcome(q + (1.0 - p) * d2)},
                                                      {1.0 - p, two_outcome(q - p * d2)}};
    const Povm direct = two_outcome(q);
    for (int s = 0; s < 4; ++s) {
      CVector v(2);
      v << Complex(rng.uniform() - 0.5, rng.uniform() - 0.5), Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
      const PureOnticState psi(v.normalized());
      const Eigen::VectorXd a = mixed_indicator(first, psi);
      const Eigen::VectorXd b = mixed_indicator(second, psi);
      const Eigen::VectorXd c = bb_indicator(direct, psi);
      report.max_deviation = std::max({report.max_deviation, (a - b).cwiseAbs().maxCoeff(),
                                       (a - c).cwiseAbs().maxCoeff()});
    }
  }

  const OperationalTheory theory = paper_instances();
  std::vector<std::pair<double, Povm>> thirds;
  for (const auto& label : {"M_a", "M_b", "M_c"}) thirds.emplace_back(1.0 / 3.0, theory.measurement(label).povm);
  const Povm coin = theory.measurement("M_trivial").povm;
  for (const auto& name : canonical_state_names()) {
    const PureOnticState psi(canonical_state_vector(name));
    report.trine_example_deviation = std::max(
        report.trine_example_deviation, (mixed_indicator(thirds, psi) - bb_indicator(coin, psi)).cwiseAbs().maxCoeff());
  }
  return report;
}

}  // namespace ncert
