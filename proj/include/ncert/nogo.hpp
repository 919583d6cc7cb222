#pragma once

// Drivers that turn each qubit no-go argument into a checked certificate:
// preparation noncontextuality, measurement noncontextuality (finite set and
// Gleason-style), outcome determinism for unsharp measurements, and
// transformation noncontextuality.

#include <stdexcept>
#include <string>
#include <vector>

#include "ncert/feasibility.hpp"
#include "ncert/operational.hpp"

namespace ncert {

/// Thrown when a numerical premise (orthogonality, a mixture identity, a
/// channel identity) fails: the constants are corrupted.
class PremiseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks orthogonality and the five mixtures on the canonical instance,
/// then certifies the six-variable pointwise system.
Certificate prep_nogo();

/// The {1/2, 1/2} indicator forced on the coin-flip POVM {I/2, I/2}.
struct ForcedIndicator {
  /// The outcome statistics do not depend on the system, so the indicator
  /// value at every ontic state is the coin's distribution.
  std::vector<Rational> by_independence;
  /// Outcome permutations that leave the POVM invariant must leave the
  /// indicators invariant; with normalization that fixes them uniquely.
  std::vector<Rational> by_permutation;
  OutcomePermutation symmetry;
  std::size_t outcome_count() const { return by_permutation.size(); }
  bool agree() const { return by_independence == by_permutation; }
};

ForcedIndicator trivial_povm_forced_indicator();

/// The eight deterministic assignments to the three PVMs, the mixed
/// indicator each induces on M = (M_a + M_b + M_c)/3, and the check that none
/// equals the forced {1/2, 1/2}.
Certificate meas_nogo();

struct OdUnsharpReport {
  std::vector<CMatrix> povm;
  std::vector<Rational> forced_indicator;
  bool outcome_deterministic = true;
  bool contradiction = false;
};

OdUnsharpReport od_unsharp_contradiction();

struct GleasonReport {
  double overlap = 0.0;       ///< |<psi|psi'>|^2
  double chi_p = 0.0;         ///< Tr(rho_lambda P), equal to 1 by assumption
  double chi_p_prime = 0.0;   ///< Tr(rho_lambda P')
  bool idempotent = true;
  bool contradiction = false;
};

class NoContradictionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws NoContradictionError when the overlap is within tol of 0 or 1.
GleasonReport gleason_contradiction(const CVector& psi, const CVector& psi_prime, double tol = kDefaultTol);

/// Channel identities, the disjoint-image premise on a z-x grid, and the
/// induced seven-distribution system relabeled onto the preparation system.
Certificate transf_nogo(int grid_points = 36);

/// Pointwise system on the images of mu_a under T_theta; variables are named
/// "mu_0", "mu_pi/3", ... and ordered like a, A, b, B, c, C.
ConstraintSystem build_transf_system();

}  // namespace ncert
