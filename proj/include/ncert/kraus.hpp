#pragma once

// Unitary freedom of operator-sum representations: X_nu = sum_mu u_nu,mu W_mu
// describes the same channel for every unitary u.

#include <string>
#include <vector>

#include "ncert/qmath.hpp"

namespace ncert {

class RemixMatrix {
 public:
  explicit RemixMatrix(CMatrix u, double tol = kDefaultTol);

  const CMatrix& matrix() const { return u_; }
  Eigen::Index size() const { return u_.rows(); }
  RemixMatrix adjoint() const { return RemixMatrix(u_.adjoint()); }

 private:
  CMatrix u_;
};

/// Appends zero Kraus operators until the set has `count` elements.
KrausChannel pad_with_zeros(const KrausChannel& channel, std::size_t count);

/// Requires u.size() == channel.size(); pad explicitly first if needed.
KrausChannel remix_kraus(const KrausChannel& channel, const RemixMatrix& u);

/// [[cos t/2, sin t/2], [-sin t/2, cos t/2]]: takes {U_0, U_pi}/sqrt2 to
/// {U_t, U_t+pi}/sqrt2.
RemixMatrix appendix_u2(double theta);

/// Rows sqrt(2/3) (cos phi_k, sin phi_k), sqrt(1/3) with
/// phi_k = t/2 + 2 pi k/3: takes {U_0/sqrt2, U_pi/sqrt2, 0} to
/// {U_t, U_t+2pi/3, U_t+4pi/3}/sqrt3.
RemixMatrix appendix_u3(double theta);

/// The y-axis projection channel, defined by its Kraus set
/// {U_0/sqrt2, U_pi/sqrt2}.
KrausChannel y_projection_channel();

/// Best entrywise match of two Kraus sets over orderings and a sign per
/// operator; rotations by theta and theta + 2pi differ by -1, which changes
/// no channel. Infinite when the sizes differ.
double kraus_set_deviation(const KrausChannel& a, const std::vector<CMatrix>& expected);

struct IdentityCheck {
  std::string name;
  double choi_dev = 0.0;
};

struct KIdentityReport {
  /// The five decompositions of the y-axis projection into rotations.
  std::vector<IdentityCheck> identities;
  /// Max |T(r) - (0, r_y, 0)| over a grid of Bloch vectors.
  double bloch_projection_max_dev = 0.0;
  /// Max kraus_set_deviation of the appendix remixings from the rotation sets.
  double remix_max_dev = 0.0;

  double max_choi_dev() const;
};

KIdentityReport verify_k_identities(double tol = kExactTol);

}  // namespace ncert
