// Acceptance suite: one PASS/FAIL line per criterion with its measured
// runtime. Each criterion runs once untimed to warm caches, then once timed.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/QR>
#include <string>

#include "brute_force.hpp"
#include "ncert/bbmodel.hpp"
#include "ncert/feasibility.hpp"
#include "ncert/figure.hpp"
#include "ncert/kraus.hpp"
#include "ncert/nogo.hpp"
#include "ncert/ontomodel.hpp"
#include "ncert/operational.hpp"
#include "random_systems.hpp"

using namespace ncert;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double budget_ms, const std::function<Outcome()>& body) {
  Outcome result;
  double ms = 0.0;
  try {
    body();
    const auto start = std::chrono::steady_clock::now();
    result = body();
    ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  } catch (const std::exception& e) {
    result.ok = false;
    result.detail = std::string("exception: ") + e.what();
  }
  if (result.ok && ms >= budget_ms) {
    result.ok = false;
    result.detail = "over time budget";
  }
  if (!result.ok) ++failures;
  std::printf("%-4s %2d %-28s %10.3f ms (budget %g ms)%s%s\n", result.ok ? "PASS" : "FAIL", id, name, ms, budget_ms,
              result.detail.empty() ? "" : "  ", result.detail.c_str());
}

DensityOperator state(const std::string& n) { return DensityOperator::pure(canonical_state_vector(n)); }

Preparation prep(const std::string& n) { return {n, state(n), ""}; }

}  // namespace

int main() {
  criterion(1, "orthogonality", 1.0, [] {
    Outcome o;
    for (const auto& [x, y] : {std::pair{"a", "A"}, std::pair{"b", "B"}, std::pair{"c", "C"}})
      o.require(max_abs_entry(state(x).matrix() * state(y).matrix()) <= 1e-12, std::string("sigma_") + x + " sigma_" + y);
    return o;
  });

  criterion(2, "convex decompositions", 1.0, [] {
    Outcome o;
    const CMatrix half = 0.5 * CMatrix::Identity(2, 2);
    const std::vector<std::vector<std::string>> mixes{{"a", "A"}, {"b", "B"}, {"c", "C"}, {"a", "b", "c"}, {"A", "B", "C"}};
    for (const auto& parts : mixes) {
      std::vector<Weighted<Preparation>> comps;
      for (const auto& p : parts) comps.emplace_back(1.0 / static_cast<double>(parts.size()), prep(p));
      o.require(max_abs_entry(mix_preparations(comps, "mix").rho.matrix() - half) <= 1e-12, "mixture of " + parts[0]);
    }
    return o;
  });

  criterion(3, "preparation no-go", 1000.0, [] {
    Outcome o;
    const auto cert = prep_nogo();
    o.require(cert.verdict == Verdict::Infeasible, "verdict");
    o.require(cert.premises_hold(), "premises");
    o.require(cert.cases.size() == 8, "8 rows");
    bool reduction = false;
    for (const auto& row : cert.cases) {
      o.require(row.conclusion == CaseConclusion::AllZero, "row not all-zero");
      o.require(verify_case(*cert.system, row), "row does not re-verify");
      for (const auto& step : row.derivation) reduction |= step.find("1/2 c = 1/3 c => c = 0") != std::string::npos;
    }
    o.require(reduction, "1/2 c = 1/3 c reduction missing");
    return o;
  });

  criterion(4, "measurement no-go", 1000.0, [] {
    Outcome o;
    const auto cert = meas_nogo();
    o.require(cert.verdict == Verdict::Infeasible, "verdict");
    o.require(cert.premises_hold(), "premises");
    o.require(cert.cases.size() == 8, "8 assignments");
    const std::vector<std::vector<Rational>> allowed{{Rational(0), Rational(1)},
                                                     {Rational(1), Rational(0)},
                                                     {Rational(2, 3), Rational(1, 3)},
                                                     {Rational(1, 3), Rational(2, 3)}};
    const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
    for (const auto& row : cert.cases) {
      o.require(std::find(allowed.begin(), allowed.end(), row.values) != allowed.end(), "value outside allowed set");
      o.require(row.values != half, "row equals {1/2, 1/2}");
    }
    const auto forced = trivial_povm_forced_indicator();
    o.require(forced.by_independence == half && forced.by_permutation == half, "forced indicator");
    return o;
  });

  criterion(5, "transformation no-go", 5000.0, [] {
    Outcome o;
    const auto k = verify_k_identities();
    o.require(k.identities.size() == 5 && k.max_choi_dev() <= 1e-12, "K1-K5");
    const int grid = 36;
    const auto cert = transf_nogo(grid);
    o.require(cert.premises_hold(), "premises");
    bool images = false;
    for (const auto& p : cert.premise_checks)
      if (p.name.find("disjoint images") != std::string::npos) images = p.max_deviation <= 1e-12;
    o.require(images, "disjoint-image premise");
    o.require(cert.verdict == Verdict::Infeasible, "verdict");
    return o;
  });

  criterion(6, "gleason-style contradiction", 1.0, [] {
    Outcome o;
    const auto r = gleason_contradiction(canonical_state_vector("a"), canonical_state_vector("b"));
    o.require(std::abs(r.chi_p_prime - 0.25) <= 1e-12, "chi_P' != 0.25");
    o.require(r.chi_p_prime > 0 && r.chi_p_prime < 1 && r.contradiction, "not strictly fractional");
    return o;
  });

  criterion(7, "OD for unsharp measurements", 1.0, [] {
    Outcome o;
    const auto r = od_unsharp_contradiction();
    o.require(r.forced_indicator == std::vector<Rational>{Rational(1, 2), Rational(1, 2)}, "forced {1/2, 1/2}");
    o.require(!r.outcome_deterministic && r.contradiction, "idempotence");
    return o;
  });

  criterion(8, "OD from preparation NC", 10.0, [] {
    Outcome o;
    Eigen::Vector2d half(0.5, 0.5);
    OntModel good;
    good.ontic_size = 2;
    good.preparations.emplace("a", Distribution::point_mass(2, 0));
    good.preparations.emplace("A", Distribution::point_mass(2, 1));
    good.preparations.emplace("I/2", Distribution(half));
    good.measurements.emplace("M_a", IndicatorSet::deterministic({0, 1}, 2));
    const auto g = outcome_determinism_from_prep_nc(good, "M_a", {"a", "A"}, "I/2", 2);
    o.require(g.premises_hold && g.indicators_idempotent && !g.failing_step, "2-point model");

    // BB-style: four rays, eigenstates are deltas, Born-valued indicators.
    OntModel bb;
    bb.ontic_size = 4;
    bb.preparations.emplace("a", Distribution::point_mass(4, 0));
    bb.preparations.emplace("A", Distribution::point_mass(4, 1));
    Eigen::Vector4d mix(0.5, 0.5, 0, 0);
    bb.preparations.emplace("I/2", Distribution(mix));
    Eigen::MatrixXd xi(2, 4);
    xi << 1, 0, 0.25, 0.75, 0, 1, 0.75, 0.25;
    bb.measurements.emplace("M_a", IndicatorSet(xi));
    const auto b = outcome_determinism_from_prep_nc(bb, "M_a", {"a", "A"}, "I/2", 2);
    o.require(!b.premises_hold && b.failing_step == std::optional<std::string>("supports_cover_space"),
              "failing step not identified");
    return o;
  });

  criterion(9, "Beltrametti-Bugajski model", 10000.0, [] {
    Outcome o;
    const auto theory = paper_instances();
    auto pure = [](const std::string& n) { return PureOnticState(canonical_state_vector(n)); };
    const BBPreparation mixed({{0.5, pure("a")}, {0.5, pure("A")}});
    const std::vector<std::pair<BBPreparation, std::string>> configs{
        {mixed, "M_b"}, {BBPreparation::pure(pure("a")), "M_a"}, {BBPreparation::pure(pure("b")), "M_a"}};
    std::uint64_t seed = 12345;
    for (const auto& [p, m] : configs)
      o.require(bb_simulate(p, theory.measurement(m).povm, 100000, seed++).within_bound(), "4 sigma bound " + m);
    const auto demo = bb_prep_contextuality_demo();
    o.require(demo.prep_equivalent && demo.shared_support_points == 0 && demo.contextual, "contextuality demo");
    o.require(bb_meas_noncontextuality_property(100, 2024).holds(1e-12), "measurement NC property");
    return o;
  });

  criterion(10, "oracle equivalence", 60000.0, [] {
    Outcome o;
    std::mt19937_64 rng(7);
    int agree = 0;
    const int total = 250;
    for (int t = 0; t < total; ++t) {
      const auto sys = testing_support::random_small_system(rng);
      agree += (pointwise_feasibility(sys).verdict == Verdict::Feasible) == oracle::brute_force_feasible(sys);
    }
    o.require(agree == total, std::to_string(total - agree) + " disagreements");
    return o;
  });

  criterion(11, "Kraus remix property", 5000.0, [] {
    Outcome o;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    auto gaussian = [&](Eigen::Index n) {
      CMatrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
      return m;
    };
    auto unitary = [&](Eigen::Index n) {
      Eigen::HouseholderQR<CMatrix> qr(gaussian(n));
      return CMatrix(qr.householderQ() * CMatrix::Identity(n, n));
    };
    for (int t = 0; t < 100; ++t) {
      const auto count = static_cast<Eigen::Index>(1 + t % 4);
      const CMatrix v = unitary(2 * count).leftCols(2);
      std::vector<CMatrix> ops;
      for (Eigen::Index k = 0; k < count; ++k) ops.push_back(v.middleRows(2 * k, 2));
      const KrausChannel ch(ops);
      o.require(choi_deviation(remix_kraus(ch, RemixMatrix(unitary(count))), ch) <= 1e-10, "trial " + std::to_string(t));
    }
    return o;
  });

  criterion(12, "figure structure", 100.0, [] {
    Outcome o;
    const auto svg = bloch_figure_svg();
    auto count = [&](const std::string& needle) {
      std::size_t n = 0;
      for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
      return n;
    };
    o.require(count("class=\"state\"") == 6, "6 state markers");
    o.require(count("class=\"segment\"") == 3, "3 segments");
    o.require(count("class=\"triangle\"") == 2, "2 triangles");
    o.require(count("class=\"center\"") == 1, "center marker");
    return o;
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
