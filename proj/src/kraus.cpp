#include "ncert/kraus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

#include "ncert/operational.hpp"

namespace ncert {

RemixMatrix::RemixMatrix(CMatrix u, double tol) : u_(std::move(u)) {
  if (u_.rows() == 0 || u_.rows() != u_.cols()) throw DimensionError("remix matrix must be square and nonempty");
  if (max_abs_entry(u_ * u_.adjoint() - CMatrix::Identity(u_.rows(), u_.rows())) > tol)
    throw ValidationError("remix matrix is not unitary");
}

KrausChannel pad_with_zeros(const KrausChannel& channel, std::size_t count) {
  if (count < channel.size()) throw ValidationError("padding cannot remove Kraus operators");
  auto ops = channel.ops();
  ops.resize(count, CMatrix::Zero(channel.output_dim(), channel.input_dim()));
  return KrausChannel(std::move(ops));
}

KrausChannel remix_kraus(const KrausChannel& channel, const RemixMatrix& u) {
  if (static_cast<std::size_t>(u.size()) != channel.size())
    throw DimensionError("remix matrix size differs from the Kraus operator count; pad with zeros first");
  const auto& w = channel.ops();
  std::vector<CMatrix> x;
  x.reserve(w.size());
  for (Eigen::Index nu = 0; nu < u.size(); ++nu) {
    CMatrix sum = CMatrix::Zero(channel.output_dim(), channel.input_dim());
    for (Eigen::Index mu = 0; mu < u.size(); ++mu) sum += u.matrix()(nu, mu) * w[static_cast<std::size_t>(mu)];
    x.push_back(std::move(sum));
  }
  return KrausChannel(std::move(x));
}

RemixMatrix appendix_u2(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  CMatrix u(2, 2);
  u << c, s, -s, c;
  return RemixMatrix(std::move(u));
}

RemixMatrix appendix_u3(double theta) {
  const double a = std::sqrt(2.0 / 3.0);
  const double b = std::sqrt(1.0 / 3.0);
  CMatrix u(3, 3);
  for (int k = 0; k < 3; ++k) {
    const double phi = theta / 2.0 + 2.0 * std::numbers::pi * k / 3.0;
    u(k, 0) = a * std::cos(phi);
    u(k, 1) = a * std::sin(phi);
    u(k, 2) = b;
  }
  return RemixMatrix(std::move(u));
}

KrausChannel y_projection_channel() {
  const double s = std::sqrt(0.5);
  return KrausChannel({s * unitary_rotation_y(0.0), s * unitary_rotation_y(std::numbers::pi)});
}

double KIdentityReport::max_choi_dev() const {
  double m = 0.0;
  for (const auto& c : identities) m = std::max(m, c.choi_dev);
  return m;
}

double kraus_set_deviation(const KrausChannel& a, const std::vector<CMatrix>& expected) {
  if (a.size() != expected.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(expected.size());
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double dev = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const CMatrix& x = a.ops()[order[k]];
      dev = std::max(dev, std::min(max_abs_entry(x - expected[k]), max_abs_entry(x + expected[k])));
    }
    best = std::min(best, dev);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

KIdentityReport verify_k_identities(double tol) {
  const double third = std::numbers::pi / 3.0;
  const KrausChannel t = y_projection_channel();
  KIdentityReport report;

  const std::vector<std::pair<std::string, std::vector<int>>> decompositions{
      {"K1", {0, 3}}, {"K2", {1, 4}}, {"K3", {2, 5}}, {"K4", {0, 2, 4}}, {"K5", {1, 3, 5}}};
  for (const auto& [name, parts] : decompositions) {
    std::vector<Weighted<Transformation>> comps;
    for (int k : parts)
      comps.emplace_back(1.0 / static_cast<double>(parts.size()),
                         Transformation{"T", rotation_channel_y(k * third), "rotation"});
    const auto mixed = mix_channels(comps, name);
    report.identities.push_back({name, choi_deviation(mixed.channel, t)});
  }

  // The appendix remixings land exactly on the rotation Kraus sets.
  const double r2 = std::sqrt(0.5);
  const double r3 = std::sqrt(1.0 / 3.0);
  for (int k : {1, 2}) {
    const double th = k * third;
    const auto x = remix_kraus(t, appendix_u2(th));
    report.remix_max_dev = std::max(report.remix_max_dev,
                                    kraus_set_deviation(x, {r2 * unitary_rotation_y(th),
                                                            r2 * unitary_rotation_y(th + std::numbers::pi)}));
  }
  for (int k : {0, 1}) {
    const double th = k * third;
    const auto x = remix_kraus(pad_with_zeros(t, 3), appendix_u3(th));
    report.remix_max_dev = std::max(
        report.remix_max_dev,
        kraus_set_deviation(x, {r3 * unitary_rotation_y(th), r3 * unitary_rotation_y(th + 2 * third),
                                r3 * unitary_rotation_y(th + 4 * third)}));
  }

  // T sends every Bloch vector to its projection on the y axis.
  for (int i = 0; i <= 6; ++i) {
    const double polar = std::numbers::pi * i / 6.0;
    for (int j = 0; j < 12; ++j) {
      const double azimuth = 2.0 * std::numbers::pi * j / 12.0;
      for (double radius : {0.5, 1.0}) {
        const BlochVector r(radius * std::sin(polar) * std::cos(azimuth), radius * std::sin(polar) * std::sin(azimuth),
                            radius * std::cos(polar));
        const auto image = bloch_from_density(apply_channel(t, density_from_bloch(r)));
        const double dev = (image.vector() - Eigen::Vector3d(0.0, r.y(), 0.0)).norm();
        report.bloch_projection_max_dev = std::max(report.bloch_projection_max_dev, dev);
      }
    }
  }

  if (report.max_choi_dev() > tol || report.remix_max_dev > tol || report.bloch_projection_max_dev > tol)
    throw ValidationError("a y-projection identity failed beyond tolerance");
  return report;
}

}  // namespace ncert
