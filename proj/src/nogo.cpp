#include "ncert/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "ncert/kraus.hpp"
#include "ncert/linalg.hpp"
#include "ncert/ontomodel.hpp"

namespace ncert {

namespace {

void require_premises(const Certificate& cert) {
  for (const auto& c : cert.premise_checks)
    if (!c.passed()) throw PremiseError("premise '" + c.name + "' failed: deviation " + std::to_string(c.max_deviation));
}

}  // namespace

// ---------------------------------------------------------------------------
// Preparations

Certificate prep_nogo() {
  const OperationalTheory theory = paper_instances();
  std::vector<PremiseCheck> checks;

  for (const auto& [x, y] : {std::pair{"a", "A"}, std::pair{"b", "B"}, std::pair{"c", "C"}}) {
    const CMatrix product = theory.preparation(x).rho.matrix() * theory.preparation(y).rho.matrix();
    checks.push_back({std::string("orthogonal ") + x + " " + y, max_abs_entry(product), kExactTol});
  }
  const CMatrix half_identity = 0.5 * CMatrix::Identity(2, 2);
  for (const auto& m : theory.mixtures()) {
    if (m.kind != ProcedureKind::Preparation) continue;
    CMatrix sum = CMatrix::Zero(2, 2);
    for (const auto& c : m.components) sum += to_double(c.weight) * theory.preparation(c.label).rho.matrix();
    checks.push_back({"mixture " + m.target + " = I/2", max_abs_entry(sum - half_identity), kExactTol});
  }

  Certificate cert = pointwise_feasibility(build_prep_system());
  cert.kind = "prep";
  cert.premise_checks = std::move(checks);
  require_premises(cert);
  cert.notes.insert(cert.notes.begin(),
                    "orthogonal preparations are distinguishable with certainty, so their distributions are disjoint; "
                    "all five mixtures equal I/2, so preparation noncontextuality gives them one distribution nu");
  return cert;
}

// ---------------------------------------------------------------------------
// Measurements

ForcedIndicator trivial_povm_forced_indicator() {
  const OperationalTheory theory = paper_instances();
  const Measurement& coin = theory.measurement("M_trivial");
  const std::size_t k = coin.povm.size();
  ForcedIndicator forced;

  // Route (a): the statistics are the same for every state, so they are the
  // indicator values at every ontic state.
  std::vector<DensityOperator> probes;
  for (const auto& [label, p] : theory.preparations()) probes.push_back(p.rho);
  for (std::size_t j = 0; j < k; ++j) {
    const double p0 = born_probability(probes.front(), coin.povm[j]);
    for (const auto& rho : probes)
      if (std::abs(born_probability(rho, coin.povm[j]) - p0) > kExactTol)
        throw PremiseError("coin-flip statistics depend on the state");
    forced.by_independence.push_back(rational_from_double(p0));
  }

  // Route (b): xi_j = xi_perm(j) for every symmetry of the POVM, plus
  // sum_j xi_j = 1, solved exactly.
  const auto symmetries = outcome_matchings(coin, coin);
  std::vector<RationalVector> rows;
  for (const auto& perm : symmetries) {
    if (std::is_sorted(perm.begin(), perm.end())) continue;
    if (forced.symmetry.empty()) forced.symmetry = perm;
    for (std::size_t j = 0; j < k; ++j) {
      if (perm[j] == j) continue;
      RationalVector r = RationalVector::Zero(static_cast<Eigen::Index>(k) + 1);
      r(static_cast<Eigen::Index>(j)) += 1;
      r(static_cast<Eigen::Index>(perm[j])) -= 1;
      rows.push_back(std::move(r));
    }
  }
  RationalVector norm = RationalVector::Constant(static_cast<Eigen::Index>(k) + 1, Rational(1));
  rows.push_back(std::move(norm));
  RationalMatrix aug(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k) + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) aug.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  const auto pivots = linalg::reduce_row_echelon(aug);
  if (pivots.size() != k || pivots.back() >= static_cast<Eigen::Index>(k))
    throw PremiseError("permutation symmetry does not fix the coin-flip indicators");
  forced.by_permutation.assign(k, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r)
    forced.by_permutation[static_cast<std::size_t>(pivots[r])] = aug(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
  return forced;
}

Certificate meas_nogo() {
  const OperationalTheory theory = paper_instances();
  const CMatrix id = CMatrix::Identity(2, 2);
  Certificate cert;
  cert.kind = "meas";
  cert.verdict = Verdict::Infeasible;

  for (const auto& label : {"M_a", "M_b", "M_c"}) {
    const auto& m = theory.measurement(label).povm;
    cert.premise_checks.push_back({std::string(label) + " complete", max_abs_entry(m[0].matrix() + m[1].matrix() - id), kExactTol});
    cert.premise_checks.push_back({std::string(label) + " orthogonal", max_abs_entry(m[0].matrix() * m[1].matrix()), kExactTol});
  }
  const auto& mixed = theory.measurement("M");
  const auto& coin = theory.measurement("M_trivial");
  double dev = 0.0;
  for (std::size_t k = 0; k < 2; ++k) dev = std::max(dev, max_abs_entry(mixed.povm[k].matrix() - 0.5 * id));
  cert.premise_checks.push_back({"M = {I/2, I/2}", dev, kExactTol});
  cert.premise_checks.push_back({"M equivalent to M_trivial", meas_equivalent(mixed, coin) ? 0.0 : 1.0, kExactTol});

  const ForcedIndicator forced = trivial_povm_forced_indicator();
  cert.premise_checks.push_back({"forced indicator derivations agree", forced.agree() ? 0.0 : 1.0, kExactTol});
  require_premises(cert);

  const Rational third(1, 3);
  const std::set<std::pair<Rational, Rational>> allowed{
      {0, 1}, {1, 0}, {Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}};
  const std::vector<std::pair<std::string, std::string>> pvms{{"a", "A"}, {"b", "B"}, {"c", "C"}};

  bool any_forced = false;
  for (unsigned idx = 0; idx < 8; ++idx) {
    CaseRow row;
    row.conclusion = CaseConclusion::Values;
    Rational first = 0, second = 0;
    std::string premise;
    for (std::size_t i = 0; i < 3; ++i) {
      const bool pick_second = (idx >> (2 - i)) & 1U;
      const auto& one = pick_second ? pvms[i].second : pvms[i].first;
      row.pattern.push_back("chi_" + one);
      (pick_second ? second : first) += third;
      premise += (i ? ", chi_" : "chi_") + one + " = 1";
    }
    row.values = {first, second};
    const bool ok = allowed.count({first, second}) > 0;
    const bool equals_forced = row.values == forced.by_permutation;
    any_forced = any_forced || equals_forced;
    row.derivation.push_back(premise + " => mixed indicator (" + to_string(first) + ", " + to_string(second) + ")" +
                             (equals_forced ? ", equal to" : ", not") + " (1/2, 1/2)");
    if (!ok) row.derivation.push_back("value outside {(0,1), (1,0), (2/3,1/3), (1/3,2/3)}");
    cert.cases.push_back(std::move(row));
  }
  cert.verdict = any_forced ? Verdict::Feasible : Verdict::Infeasible;
  cert.notes.push_back("measurement noncontextuality forces the indicator of M to equal that of M_trivial, (" +
                       to_string(forced.by_permutation[0]) + ", " + to_string(forced.by_permutation[1]) +
                       "), by both the state-independence and the outcome-permutation routes");
  cert.notes.push_back(any_forced ? "some deterministic assignment reproduces the forced indicator"
                                  : "no deterministic assignment reproduces it");
  return cert;
}

OdUnsharpReport od_unsharp_contradiction() {
  const OperationalTheory theory = paper_instances();
  const auto& coin = theory.measurement("M_trivial");
  const ForcedIndicator forced = trivial_povm_forced_indicator();
  OdUnsharpReport report;
  for (const auto& e : coin.povm.effects()) report.povm.push_back(e.matrix());
  report.forced_indicator = forced.by_permutation;
  Eigen::VectorXd values(static_cast<Eigen::Index>(forced.outcome_count()));
  for (std::size_t k = 0; k < forced.outcome_count(); ++k) values(static_cast<Eigen::Index>(k)) = to_double(forced.by_permutation[k]);
  report.outcome_deterministic = is_outcome_deterministic(IndicatorSet::constant(values, 1));
  report.contradiction = forced.agree() && !report.outcome_deterministic;
  return report;
}

GleasonReport gleason_contradiction(const CVector& psi, const CVector& psi_prime, double tol) {
  if (psi.size() != 2 || psi_prime.size() != 2) throw DimensionError("Gleason-style check works on qubit vectors");
  if (std::abs(psi.norm() - 1.0) > tol || std::abs(psi_prime.norm() - 1.0) > tol)
    throw ValidationError("state vectors must be normalized");
  GleasonReport report;
  report.overlap = std::norm(psi.dot(psi_prime));
  if (report.overlap <= tol) throw NoContradictionError("orthogonal vectors: the overlap is 0");
  if (report.overlap >= 1.0 - tol) throw NoContradictionError("parallel vectors: the overlap is 1");

  // chi_P(lambda) = Tr(rho_lambda P) = 1 with P rank one leaves only
  // rho_lambda = P.
  const Effect p(psi * psi.adjoint());
  const Effect p_prime(psi_prime * psi_prime.adjoint());
  const DensityOperator rho_lambda = DensityOperator::pure(psi, tol);
  report.chi_p = born_probability(rho_lambda, p);
  report.chi_p_prime = born_probability(rho_lambda, p_prime);
  report.idempotent = std::abs(report.chi_p_prime * report.chi_p_prime - report.chi_p_prime) <= tol;
  report.contradiction = std::abs(report.chi_p - 1.0) <= tol && !report.idempotent;
  return report;
}

// ---------------------------------------------------------------------------
// Transformations

ConstraintSystem build_transf_system() {
  const Rational half(1, 2);
  const Rational third(1, 3);
  std::vector<LinearForm> forms{
      {"K1", {{"mu_0", half}, {"mu_pi", half}}, "mu"},
      {"K2", {{"mu_pi/3", half}, {"mu_4pi/3", half}}, "mu"},
      {"K3", {{"mu_2pi/3", half}, {"mu_5pi/3", half}}, "mu"},
      {"K4", {{"mu_0", third}, {"mu_2pi/3", third}, {"mu_4pi/3", third}}, "mu"},
      {"K5", {{"mu_pi/3", third}, {"mu_pi", third}, {"mu_5pi/3", third}}, "mu"},
  };
  return {{"mu_0", "mu_pi", "mu_2pi/3", "mu_5pi/3", "mu_4pi/3", "mu_pi/3"},
          {{"mu_0", "mu_pi"}, {"mu_2pi/3", "mu_5pi/3"}, {"mu_4pi/3", "mu_pi/3"}},
          std::move(forms)};
}

namespace {

using TermSet = std::set<std::pair<std::string, Rational>>;

/// Number of forms/pairs of `from` with no counterpart in `to` after renaming.
double relabel_mismatch(const ConstraintSystem& from, const ConstraintSystem& to,
                        const std::map<std::string, std::string>& rename) {
  std::vector<TermSet> target_forms;
  for (const auto& f : to.equality_groups()) {
    TermSet s;
    for (const auto& t : f.terms) s.emplace(t.variable, t.coefficient);
    target_forms.push_back(std::move(s));
  }
  double missing = 0.0;
  for (const auto& f : from.equality_groups()) {
    TermSet s;
    for (const auto& t : f.terms) s.emplace(rename.at(t.variable), t.coefficient);
    if (std::find(target_forms.begin(), target_forms.end(), s) == target_forms.end()) missing += 1.0;
  }
  if (from.equality_groups().size() != to.equality_groups().size()) missing += 1.0;
  std::set<std::set<std::string>> target_pairs;
  for (const auto& [x, y] : to.disjoint_pairs()) target_pairs.insert({x, y});
  for (const auto& [x, y] : from.disjoint_pairs())
    if (!target_pairs.count({rename.at(x), rename.at(y)})) missing += 1.0;
  return missing;
}

}  // namespace

Certificate transf_nogo(int grid_points) {
  if (grid_points < 1) throw ValidationError("grid needs at least one point");
  std::vector<PremiseCheck> checks;

  // Step 1: the five decompositions of T.
  const KIdentityReport k = verify_k_identities();
  for (const auto& id : k.identities) checks.push_back({"channel identity " + id.name, id.choi_dev, kExactTol});
  checks.push_back({"y-axis projection on Bloch grid", k.bloch_projection_max_dev, kExactTol});

  // Step 2: T_theta and T_theta+pi send every pure z-x state to orthogonal
  // states.
  const double pi = std::numbers::pi;
  for (int k3 : {0, 1, 2}) {
    const double theta = k3 * pi / 3.0;
    const auto first = rotation_channel_y(theta);
    const auto second = rotation_channel_y(theta + pi);
    double worst = 0.0;
    for (int g = 0; g < grid_points; ++g) {
      const double phi = 2.0 * pi * g / grid_points;
      const auto rho = density_from_bloch(BlochVector(std::sin(phi), 0.0, std::cos(phi)));
      const auto r1 = apply_channel(first, rho);
      const auto r2 = apply_channel(second, rho);
      worst = std::max(worst, std::abs((r1.matrix() * r2.matrix()).trace()));
    }
    static const char* names[] = {"0", "pi/3", "2pi/3"};
    checks.push_back({std::string("disjoint images theta=") + names[k3] + " over " + std::to_string(grid_points) +
                          " z-x states",
                      worst, kExactTol});
  }

  // Step 3: the induced system is the preparation system under
  // a, A, b, B, c, C -> theta = 0, pi, 2pi/3, 5pi/3, 4pi/3, pi/3.
  const ConstraintSystem system = build_transf_system();
  const ConstraintSystem prep = build_prep_system();
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < prep.variable_count(); ++i) rename[prep.variables()[i]] = system.variables()[i];
  checks.push_back({"relabeling onto the preparation system", relabel_mismatch(prep, system, rename), kExactTol});

  Certificate cert = pointwise_feasibility(system);
  cert.kind = "transf";
  cert.premise_checks = std::move(checks);
  require_premises(cert);
  cert.notes.insert(cert.notes.begin(),
                    "mu_theta is the image of mu_a under the transition matrix of T_theta; mu is its image under T");
  return cert;
}

}  // namespace ncert
