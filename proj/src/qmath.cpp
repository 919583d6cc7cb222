#include "ncert/qmath.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ncert {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw DimensionError(std::string(what) + " must be a nonempty square matrix");
}

Eigen::VectorXd hermitian_spectrum(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

double min_eigenvalue(const CMatrix& m) {
  require_square(m, "operator");
  return hermitian_spectrum(m).minCoeff();
}

double max_eigenvalue(const CMatrix& m) {
  require_square(m, "operator");
  return hermitian_spectrum(m).maxCoeff();
}

bool is_positive_semidefinite(const CMatrix& m, double tol) {
  require_square(m, "operator");
  if (!is_hermitian(m, tol)) throw ValidationError("positivity test needs a Hermitian operator");
  return min_eigenvalue(m) >= -tol;
}

// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(CMatrix m, double tol) : m_(std::move(m)) {
  require_square(m_, "density operator");
  if (!is_hermitian(m_, tol)) throw ValidationError("density operator is not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > tol)
    throw ValidationError("density operator trace differs from 1");
  if (min_eigenvalue(m_) < -tol) throw ValidationError("density operator has a negative eigenvalue");
}

DensityOperator DensityOperator::pure(const CVector& psi, double tol) {
  if (psi.size() == 0) throw DimensionError("state vector is empty");
  if (std::abs(psi.norm() - 1.0) > tol) throw ValidationError("state vector is not normalized");
  return DensityOperator(psi * psi.adjoint(), tol);
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw DimensionError("dimension must be positive");
  return DensityOperator(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

Effect::Effect(CMatrix m, double tol) : m_(std::move(m)) {
  require_square(m_, "effect");
  if (!is_hermitian(m_, tol)) throw ValidationError("effect is not Hermitian");
  const Eigen::VectorXd ev = hermitian_spectrum(m_);
  if (ev.minCoeff() < -tol || ev.maxCoeff() > 1.0 + tol)
    throw ValidationError("effect eigenvalues leave [0, 1]");
}

Povm::Povm(std::vector<Effect> effects, double tol) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("POVM needs at least one outcome");
  const auto d = effects_.front().dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& e : effects_) {
    if (e.dim() != d) throw DimensionError("POVM effects differ in dimension");
    sum += e.matrix();
  }
  if (max_abs_entry(sum - CMatrix::Identity(d, d)) > tol)
    throw ValidationError("POVM effects do not sum to the identity");
}

Povm Povm::from_matrices(const std::vector<CMatrix>& ms, double tol) {
  std::vector<Effect> effects;
  effects.reserve(ms.size());
  for (const auto& m : ms) effects.emplace_back(m, tol);
  return Povm(std::move(effects), tol);
}

KrausChannel::KrausChannel(std::vector<CMatrix> ops, double tol) : ops_(std::move(ops)) {
  if (ops_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const auto rows = ops_.front().rows();
  const auto cols = ops_.front().cols();
  if (rows == 0 || cols == 0) throw DimensionError("Kraus operators must be nonempty");
  CMatrix sum = CMatrix::Zero(cols, cols);
  for (const auto& w : ops_) {
    if (w.rows() != rows || w.cols() != cols) throw DimensionError("Kraus operators differ in shape");
    sum += w.adjoint() * w;
  }
  if (max_abs_entry(sum - CMatrix::Identity(cols, cols)) > tol)
    throw ValidationError("Kraus operators are not trace preserving");
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
  return KrausChannel({CMatrix::Identity(dim, dim)});
}

KrausChannel KrausChannel::unitary(const CMatrix& u, double tol) {
  return KrausChannel({u}, tol);
}

// ---------------------------------------------------------------------------

const CMatrix& pauli_x() {
  static const CMatrix m = [] {
    CMatrix p(2, 2);
    p << 0, 1, 1, 0;
    return p;
  }();
  return m;
}

const CMatrix& pauli_y() {
  static const CMatrix m = [] {
    CMatrix p(2, 2);
    p << 0, Complex(0, -1), Complex(0, 1), 0;
    return p;
  }();
  return m;
}

const CMatrix& pauli_z() {
  static const CMatrix m = [] {
    CMatrix p(2, 2);
    p << 1, 0, 0, -1;
    return p;
  }();
  return m;
}

double born_probability(const DensityOperator& rho, const Effect& e, double tol) {
  if (rho.dim() != e.dim()) throw DimensionError("state and effect dimensions differ");
  const Complex t = (rho.matrix() * e.matrix()).trace();
  if (std::abs(t.imag()) > tol) throw ValidationError("Born trace has an imaginary part");
  double p = t.real();
  if (p < 0.0 && p >= -tol) p = 0.0;
  if (p > 1.0 && p <= 1.0 + tol) p = 1.0;
  return p;
}

DensityOperator density_from_bloch(const BlochVector& r, double tol) {
  if (r.norm() > 1.0 + tol) throw ValidationError("Bloch vector lies outside the unit ball");
  CMatrix m = 0.5 * (CMatrix::Identity(2, 2) + r.x() * pauli_x() + r.y() * pauli_y() + r.z() * pauli_z());
  return DensityOperator(std::move(m), tol);
}

BlochVector bloch_from_density(const DensityOperator& rho) {
  if (rho.dim() != 2) throw DimensionError("Bloch vectors exist only for qubits");
  const CMatrix& m = rho.matrix();
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

CMatrix apply_map(const KrausChannel& k, const CMatrix& x) {
  if (x.rows() != k.input_dim() || x.cols() != k.input_dim())
    throw DimensionError("operator does not match the channel input dimension");
  CMatrix out = CMatrix::Zero(k.output_dim(), k.output_dim());
  for (const auto& w : k.ops()) out.noalias() += w * x * w.adjoint();
  return out;
}

DensityOperator apply_channel(const KrausChannel& k, const DensityOperator& rho, double tol) {
  return DensityOperator(apply_map(k, rho.matrix()), tol);
}

CMatrix unitary_rotation_y(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  CMatrix u(2, 2);
  u << c, -s, s, c;
  return u;
}

KrausChannel rotation_channel_y(double theta) { return KrausChannel::unitary(unitary_rotation_y(theta)); }

ChoiMatrix choi_matrix(const KrausChannel& k) {
  const auto din = k.input_dim();
  const auto dout = k.output_dim();
  ChoiMatrix c{CMatrix::Zero(dout * din, dout * din), din, dout};
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      CMatrix basis = CMatrix::Zero(din, din);
      basis(i, j) = 1.0;
      const CMatrix image = apply_map(k, basis);
      // Block (a, b) of image (x) |i><j| holds image(a, b) at position (i, j).
      for (Eigen::Index a = 0; a < dout; ++a)
        for (Eigen::Index b = 0; b < dout; ++b) c.matrix(a * din + i, b * din + j) = image(a, b);
    }
  }
  return c;
}

double choi_deviation(const KrausChannel& a, const KrausChannel& b) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim())
    throw DimensionError("channels differ in input or output dimension");
  return max_abs_entry(choi_matrix(a).matrix - choi_matrix(b).matrix);
}

bool channels_equal(const KrausChannel& a, const KrausChannel& b, double tol) {
  return choi_deviation(a, b) <= tol;
}

CMatrix trace_out_output(const ChoiMatrix& c) {
  const auto din = c.input_dim;
  CMatrix out = CMatrix::Zero(din, din);
  for (Eigen::Index a = 0; a < c.output_dim; ++a)
    out += c.matrix.block(a * din, a * din, din, din);
  return out;
}

}  // namespace ncert
