#pragma once

// The Beltrametti-Bugajski model of a qubit: ontic states are rays, a pure
// preparation is a point mass on its ray and xi_Q(psi) = Tr(Q |psi><psi|).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ncert/qmath.hpp"

namespace ncert {

/// Unit vector with canonical phase: the first nonzero component is real
/// and positive, so two states lie on one ray iff their vectors agree.
class PureOnticState {
 public:
  explicit PureOnticState(const CVector& psi, double tol = kDefaultTol);

  const CVector& vector() const { return psi_; }
  DensityOperator density() const;
  bool same_ray(const PureOnticState& other, double tol = kExactTol) const;

 private:
  CVector psi_;
};

struct BBComponent {
  double probability = 0.0;
  PureOnticState state;
};

/// Finite mixture of point masses.
class BBPreparation {
 public:
  explicit BBPreparation(std::vector<BBComponent> components, double tol = kDefaultTol);
  static BBPreparation pure(const PureOnticState& state);

  const std::vector<BBComponent>& components() const { return components_; }
  DensityOperator density() const;

 private:
  std::vector<BBComponent> components_;
};

/// Seeded generator. The 64-bit seed goes through SplitMix64 before seeding
/// mt19937_64, and stream k of a seed uses the k-th SplitMix64 output.
class BBRng {
 public:
  static constexpr const char* kName = "mt19937_64+splitmix64/v1";

  explicit BBRng(std::uint64_t seed, std::uint64_t stream = 0);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Index k with cumulative(p, k-1) <= u < cumulative(p, k); the last
  /// positive-weight index absorbs rounding.
  std::size_t sample_index(const Eigen::VectorXd& p);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Tr(Q_k |psi><psi|) for each outcome.
Eigen::VectorXd bb_indicator(const Povm& povm, const PureOnticState& psi);

/// Component index of each of n i.i.d. draws.
std::vector<std::size_t> bb_sample_indices(const BBPreparation& prep, std::size_t n, std::uint64_t seed);
std::vector<PureOnticState> bb_sample(const BBPreparation& prep, std::size_t n, std::uint64_t seed);

struct SimulationReport {
  std::string prep;
  std::string povm;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string rng = BBRng::kName;
  std::vector<std::uint64_t> counts;
  Eigen::VectorXd frequencies;
  Eigen::VectorXd born;
  double max_abs_dev = 0.0;
  /// max_k 4 sqrt(p_k (1 - p_k) / n), plus 1e-12 for exact cases.
  double bound = 0.0;
  bool within_bound() const { return max_abs_dev <= bound; }
};

/// Draws psi from the preparation, then an outcome from bb_indicator(povm,
/// psi), both from one stream in that order.
SimulationReport bb_simulate(const BBPreparation& prep, const Povm& povm, std::size_t n, std::uint64_t seed,
                             std::string prep_name = {}, std::string povm_name = {});

struct PrepContextualityReport {
  bool prep_equivalent = false;
  std::size_t shared_support_points = 0;
  double total_variation = 0.0;
  bool contextual = false;
};

/// Compares 1/2 psi_a + 1/2 psi_A with 1/2 psi_b + 1/2 psi_B.
PrepContextualityReport bb_prep_contextuality_demo();

struct MeasNoncontextualityReport {
  std::size_t trials = 0;
  /// Max over trials, outcomes and sampled psi of the gap between the
  /// weighted indicator sums of two decompositions of one POVM.
  double max_deviation = 0.0;
  /// Same gap for (M_a + M_b + M_c)/3 against {I/2, I/2}.
  double trine_example_deviation = 0.0;
  bool holds(double tol = kExactTol) const { return max_deviation <= tol && trine_example_deviation <= tol; }
};

MeasNoncontextualityReport bb_meas_noncontextuality_property(std::size_t trials, std::uint64_t seed);

}  // namespace ncert
