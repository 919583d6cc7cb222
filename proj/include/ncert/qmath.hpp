#pragma once

// Finite-dimensional quantum objects: density operators, effects, POVMs,
// Kraus channels, qubit Bloch geometry and Choi matrices.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ncert {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for validity checks (positivity, normalization).
inline constexpr double kDefaultTol = 1e-9;
/// Tolerance for identities that hold to machine precision.
inline constexpr double kExactTol = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Derived>
double max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultTol) {
  return m.rows() == m.cols() && max_abs_entry(m - m.adjoint()) <= tol;
}

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const CMatrix& m);
double max_eigenvalue(const CMatrix& m);

/// Throws ValidationError when m is not Hermitian within tol.
bool is_positive_semidefinite(const CMatrix& m, double tol = kDefaultTol);

class DensityOperator {
 public:
  explicit DensityOperator(CMatrix m, double tol = kDefaultTol);

  /// |psi><psi| for a unit vector psi.
  static DensityOperator pure(const CVector& psi, double tol = kDefaultTol);
  static DensityOperator maximally_mixed(Eigen::Index dim);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

class Effect {
 public:
  explicit Effect(CMatrix m, double tol = kDefaultTol);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

class Povm {
 public:
  explicit Povm(std::vector<Effect> effects, double tol = kDefaultTol);
  static Povm from_matrices(const std::vector<CMatrix>& ms, double tol = kDefaultTol);

  const std::vector<Effect>& effects() const { return effects_; }
  const Effect& operator[](std::size_t k) const { return effects_[k]; }
  std::size_t size() const { return effects_.size(); }
  Eigen::Index dim() const { return effects_.front().dim(); }

 private:
  std::vector<Effect> effects_;
};

/// Operator-sum representation T(rho) = sum_mu W_mu rho W_mu^dagger. Zero
/// Kraus operators are allowed; the set must be trace preserving.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> ops, double tol = kDefaultTol);

  static KrausChannel identity(Eigen::Index dim);
  static KrausChannel unitary(const CMatrix& u, double tol = kDefaultTol);

  const std::vector<CMatrix>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  Eigen::Index input_dim() const { return ops_.front().cols(); }
  Eigen::Index output_dim() const { return ops_.front().rows(); }

 private:
  std::vector<CMatrix> ops_;
};

class BlochVector {
 public:
  BlochVector() : r_(Eigen::Vector3d::Zero()) {}
  BlochVector(double x, double y, double z) : r_(x, y, z) {}
  explicit BlochVector(const Eigen::Vector3d& r) : r_(r) {}

  double x() const { return r_.x(); }
  double y() const { return r_.y(); }
  double z() const { return r_.z(); }
  double norm() const { return r_.norm(); }
  const Eigen::Vector3d& vector() const { return r_; }

 private:
  Eigen::Vector3d r_;
};

/// Unnormalized Choi matrix C = sum_ij T(|i><j|) (x) |i><j|, output factor
/// first. Its dimension is output_dim * input_dim and its trace is input_dim.
struct ChoiMatrix {
  CMatrix matrix;
  Eigen::Index input_dim = 0;
  Eigen::Index output_dim = 0;
};

const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();

/// Re Tr(rho E), clamped to [0, 1] when it overshoots by at most tol.
double born_probability(const DensityOperator& rho, const Effect& e, double tol = kDefaultTol);

DensityOperator density_from_bloch(const BlochVector& r, double tol = kDefaultTol);
BlochVector bloch_from_density(const DensityOperator& rho);

/// Sum_mu W_mu X W_mu^dagger for an arbitrary operator X.
CMatrix apply_map(const KrausChannel& k, const CMatrix& x);
DensityOperator apply_channel(const KrausChannel& k, const DensityOperator& rho,
                              double tol = kDefaultTol);

/// [[cos t/2, -sin t/2], [sin t/2, cos t/2]]: rotation by theta about the
/// Bloch y axis.
CMatrix unitary_rotation_y(double theta);
KrausChannel rotation_channel_y(double theta);

ChoiMatrix choi_matrix(const KrausChannel& k);
/// Max entrywise difference between the Choi matrices of a and b.
double choi_deviation(const KrausChannel& a, const KrausChannel& b);
bool channels_equal(const KrausChannel& a, const KrausChannel& b, double tol = kDefaultTol);

/// Partial trace of a Choi matrix over its (first) output factor.
CMatrix trace_out_output(const ChoiMatrix& c);

}  // namespace ncert
