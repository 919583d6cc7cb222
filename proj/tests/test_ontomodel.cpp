#include <gtest/gtest.h>

#include <random>

#include "ncert/bbmodel.hpp"
#include "ncert/ontomodel.hpp"

using namespace ncert;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// Random column-stochastic matrix.
Eigen::MatrixXd random_stochastic(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = u(rng);
    m.col(c) /= m.col(c).sum();
  }
  return m;
}

/// mu_a = delta_0, mu_A = delta_1, mu_mix = (1/2, 1/2); M_a deterministic.
OntModel two_point_model(bool swapped = false) {
  OntModel m;
  m.ontic_size = 2;
  m.preparations.emplace("a", Distribution::point_mass(2, 0));
  m.preparations.emplace("A", Distribution::point_mass(2, 1));
  m.preparations.emplace("mix", Distribution::uniform(2));
  m.measurements.emplace("M_a", IndicatorSet::deterministic(swapped ? std::vector<Eigen::Index>{1, 0}
                                                                    : std::vector<Eigen::Index>{0, 1},
                                                            2));
  return m;
}

OperationalTheory two_state_theory() {
  const OperationalTheory full = paper_instances();
  OperationalTheory t(2);
  t.add(full.preparation("a"));
  t.add(full.preparation("A"));
  t.add(full.measurement("M_a"));
  return t;
}

}  // namespace

TEST(Representations, Validation) {
  EXPECT_THROW(Distribution(vec({0.5, 0.6})), ValidationError);
  EXPECT_THROW(Distribution(vec({-0.5, 1.5})), ValidationError);
  EXPECT_THROW(Distribution(Eigen::VectorXd()), ValidationError);
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 1.0, 0.4, 0.0;
  EXPECT_THROW(IndicatorSet{bad}, ValidationError);
  EXPECT_THROW(TransitionMatrix{bad}, ValidationError);
  EXPECT_THROW(IndicatorSet::deterministic({0, 2}, 2), ValidationError);
  OntModel m = two_point_model();
  m.preparations.emplace("far", Distribution::uniform(3));
  EXPECT_THROW(m.validate(), ValidationError);
  EXPECT_THROW(two_point_model().preparation("nope"), ValidationError);
}

TEST(Predict, Examples) {
  const Distribution mu(vec({0.2, 0.3, 0.5}));
  const auto coin = IndicatorSet::constant(vec({0.5, 0.5}), 3);
  EXPECT_LT((predict(mu, coin) - vec({0.5, 0.5})).cwiseAbs().maxCoeff(), 1e-15);

  const auto det = IndicatorSet::deterministic({2, 0, 1}, 3);
  EXPECT_LT((predict(Distribution::point_mass(3, 0), det) - vec({0, 0, 1})).cwiseAbs().maxCoeff(), 1e-15);

  Eigen::MatrixXd shift(3, 3);
  shift << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  const TransitionMatrix g(shift);
  const auto id = IndicatorSet::deterministic({0, 1, 2}, 3);
  const Eigen::VectorXd p = predict(Distribution::uniform(3), &g, id);
  EXPECT_LT((p - Eigen::VectorXd::Constant(3, 1.0 / 3.0)).cwiseAbs().maxCoeff(), 1e-15);

  // Gamma moves the point mass at 0 to 1, where outcome 1 is certain.
  EXPECT_NEAR(predict(Distribution::point_mass(3, 0), &g, id)(1), 1.0, 1e-15);
  EXPECT_THROW(predict(Distribution::uniform(2), id), DimensionError);
}

TEST(Predict, PropertiesOnRandomModels) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 5, n1 = 1 + (trial / 5) % 4, n2 = 1 + trial % 3, k = 1 + trial % 4;
    const Distribution mu(random_stochastic(rng, n, 1).col(0));
    const TransitionMatrix g1(random_stochastic(rng, n1, n));
    const TransitionMatrix g2(random_stochastic(rng, n2, n1));
    const IndicatorSet xi(random_stochastic(rng, k, n2));
    const TransitionMatrix g21(g2.matrix() * g1.matrix());
    const Eigen::VectorXd p = predict(mu, &g21, xi);
    EXPECT_GE(p.minCoeff(), -1e-12);
    EXPECT_NEAR(p.sum(), 1.0, 10 * kDefaultTol);
    const Eigen::VectorXd q = predict(push_forward(g1, mu), &g2, xi);
    EXPECT_LT((p - q).cwiseAbs().maxCoeff(), kDefaultTol);
  }
}

TEST(Support, Examples) {
  EXPECT_EQ(support(Distribution::point_mass(5, 2)), (std::set<Eigen::Index>{2}));
  EXPECT_EQ(support(Distribution::uniform(4)), (std::set<Eigen::Index>{0, 1, 2, 3}));
  EXPECT_EQ(support(Distribution(vec({0.5, 1e-15, 0.5})), 1e-12), (std::set<Eigen::Index>{0, 2}));
}

TEST(Disjoint, Examples) {
  EXPECT_TRUE(disjoint(Distribution::point_mass(3, 0), Distribution::point_mass(3, 1)));
  EXPECT_FALSE(disjoint(Distribution::uniform(3), Distribution::uniform(3)));
  EXPECT_TRUE(disjoint(Distribution(vec({0.5, 0.5, 0})), Distribution(vec({0, 0, 1}))));
  EXPECT_THROW(disjoint(Distribution::uniform(2), Distribution::uniform(3)), DimensionError);
}

TEST(Disjoint, MatchesSupportIntersection) {
  std::mt19937_64 rng(12);
  std::bernoulli_distribution zero(0.5);
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::VectorXd a = random_stochastic(rng, 5, 1).col(0), b = random_stochastic(rng, 5, 1).col(0);
    for (Eigen::Index i = 0; i < 5; ++i) {
      if (zero(rng)) a(i) = 0;
      if (zero(rng)) b(i) = 0;
    }
    if (a.sum() == 0 || b.sum() == 0) continue;
    const Distribution mu(a / a.sum()), nu(b / b.sum());
    std::set<Eigen::Index> both;
    const auto sa = support(mu, 1e-12), sb = support(nu, 1e-12);
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(both, both.begin()));
    EXPECT_EQ(disjoint(mu, nu, 1e-12), both.empty());
  }
}

TEST(OutcomeDeterminism, Examples) {
  EXPECT_FALSE(is_outcome_deterministic(IndicatorSet::constant(vec({0.5, 0.5}), 3)));
  EXPECT_TRUE(is_outcome_deterministic(IndicatorSet::deterministic({0, 1, 2}, 3)));
  Eigen::MatrixXd v(2, 2);
  v << 1, 2.0 / 3, 0, 1.0 / 3;
  EXPECT_FALSE(is_outcome_deterministic(IndicatorSet(v)));
}

TEST(OutcomeDeterminism, DeterministicColumnsHaveExactlyOneOne) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<Eigen::Index> pick(0, 3);
    std::vector<Eigen::Index> code(6);
    for (auto& c : code) c = pick(rng);
    const auto xi = IndicatorSet::deterministic(code, 4);
    ASSERT_TRUE(is_outcome_deterministic(xi));
    for (Eigen::Index l = 0; l < xi.ontic_size(); ++l) {
      int ones = 0;
      for (Eigen::Index k = 0; k < xi.outcomes(); ++k) ones += std::abs(xi.values()(k, l) - 1.0) < 1e-12;
      EXPECT_EQ(ones, 1);
    }
  }
}

TEST(StateView, Examples) {
  const OperationalTheory full = paper_instances();
  const auto orth = orthogonality_in(full);

  // Delta distributions at distinct rays: ontic.
  OntModel bb;
  bb.ontic_size = 6;
  std::vector<std::string> labels{"a", "A", "b", "B", "c", "C"};
  for (Eigen::Index i = 0; i < 6; ++i) bb.preparations.emplace(labels[static_cast<std::size_t>(i)], Distribution::point_mass(6, i));
  EXPECT_EQ(classify_state_view(bb, labels, orth).view, StateView::Ontic);

  // a and A disjoint, b overlapping both: epistemic on {a, A, b}.
  OntModel ep;
  ep.ontic_size = 3;
  ep.preparations.emplace("a", Distribution(vec({0.5, 0, 0.5})));
  ep.preparations.emplace("A", Distribution(vec({0, 1, 0})));
  ep.preparations.emplace("b", Distribution(vec({0.3, 0.4, 0.3})));
  const auto rep = classify_state_view(ep, {"a", "A", "b"}, orth);
  EXPECT_EQ(rep.view, StateView::Epistemic);
  EXPECT_FALSE(rep.vacuous);

  // Orthogonal pair overlapping: neither.
  OntModel ne;
  ne.ontic_size = 2;
  ne.preparations.emplace("a", Distribution::uniform(2));
  ne.preparations.emplace("A", Distribution::uniform(2));
  EXPECT_EQ(classify_state_view(ne, {"a", "A"}, orth).view, StateView::Neither);

  const auto single = classify_state_view(ep, {"a"}, orth);
  EXPECT_EQ(single.view, StateView::Epistemic);
  EXPECT_TRUE(single.vacuous);
  EXPECT_THROW(classify_state_view(ep, {"a", "zz"}, orth), ValidationError);
}

TEST(Reproduction, Examples) {
  const auto theory = two_state_theory();
  const auto good = model_reproduces_theory(two_point_model(), theory);
  EXPECT_TRUE(good.passed());
  EXPECT_EQ(good.triples_checked, 2u);
  EXPECT_LT(good.max_deviation, 1e-15);

  const auto bad = model_reproduces_theory(two_point_model(true), theory);
  EXPECT_FALSE(bad.passed());
  EXPECT_NEAR(bad.max_deviation, 1.0, 1e-15);
  ASSERT_EQ(bad.failures.size(), 2u);
  // Label order: "A" sorts before "a".
  EXPECT_EQ(bad.failures[1].preparation, "a");
  EXPECT_EQ(bad.failures[1].measurement, "M_a");

  const auto empty = model_reproduces_theory(two_point_model(), OperationalTheory(2));
  EXPECT_TRUE(empty.passed());
  EXPECT_EQ(empty.triples_checked, 0u);

  OperationalTheory extra = theory;
  extra.add(paper_instances().measurement("M_b"));
  EXPECT_THROW(model_reproduces_theory(two_point_model(), extra), ValidationError);
}

TEST(Reproduction, WithTransformations) {
  OperationalTheory t = two_state_theory();
  t.add(Transformation{"T_pi", rotation_channel_y(std::numbers::pi), ""});
  OntModel m = two_point_model();
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  m.transformations.emplace("T_pi", TransitionMatrix(swap));
  const auto r = model_reproduces_theory(m, t);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.triples_checked, 4u);
}

TEST(DerivationFromPrepNc, TwoPointModelPasses) {
  const auto r = outcome_determinism_from_prep_nc(two_point_model(), "M_a", {"a", "A"}, "mix", 2);
  EXPECT_TRUE(r.premises_hold);
  EXPECT_TRUE(r.indicators_idempotent);
  EXPECT_FALSE(r.failing_step.has_value());
  ASSERT_EQ(r.steps.size(), 4u);
  EXPECT_EQ(r.steps[0].name, "supports_disjoint");
  EXPECT_EQ(r.steps[1].name, "supports_cover_space");
  EXPECT_EQ(r.steps[2].name, "mixture_matches");
  EXPECT_EQ(r.steps[3].name, "indicators_idempotent");
}

TEST(DerivationFromPrepNc, FractionalModelFailsCoverStep) {
  // Four ontic rays; the eigenstate deltas cover only two of them and the
  // indicators at the other two are Born values.
  OntModel m;
  m.ontic_size = 4;
  m.preparations.emplace("a", Distribution::point_mass(4, 0));
  m.preparations.emplace("A", Distribution::point_mass(4, 1));
  m.preparations.emplace("mix", Distribution(vec({0.5, 0.5, 0, 0})));
  Eigen::MatrixXd v(2, 4);
  v << 1, 0, 0.25, 0.75, 0, 1, 0.75, 0.25;
  m.measurements.emplace("M_a", IndicatorSet(v));
  const auto r = outcome_determinism_from_prep_nc(m, "M_a", {"a", "A"}, "mix", 2);
  EXPECT_FALSE(r.premises_hold);
  EXPECT_FALSE(r.indicators_idempotent);
  ASSERT_TRUE(r.failing_step.has_value());
  EXPECT_EQ(*r.failing_step, "supports_cover_space");
  EXPECT_TRUE(r.steps[0].passed);
  EXPECT_TRUE(r.steps[2].passed);
}

TEST(DerivationFromPrepNc, OtherFailingSteps) {
  OntModel overlap = two_point_model();
  overlap.preparations.erase("A");
  overlap.preparations.emplace("A", Distribution::uniform(2));
  EXPECT_EQ(outcome_determinism_from_prep_nc(overlap, "M_a", {"a", "A"}, "mix", 2).failing_step, "supports_disjoint");

  OntModel skew = two_point_model();
  skew.preparations.erase("mix");
  skew.preparations.emplace("mix", Distribution(vec({0.3, 0.7})));
  EXPECT_EQ(outcome_determinism_from_prep_nc(skew, "M_a", {"a", "A"}, "mix", 2).failing_step, "mixture_matches");

  EXPECT_THROW(outcome_determinism_from_prep_nc(two_point_model(), "M_a", {"a"}, "mix", 2), ValidationError);
  EXPECT_THROW(outcome_determinism_from_prep_nc(two_point_model(), "M_a", {"a", "zz"}, "mix", 2), ValidationError);
}

TEST(DerivationFromPrepNc, DimensionOneIsTrivial) {
  OntModel m;
  m.ontic_size = 1;
  m.preparations.emplace("p", Distribution::point_mass(1, 0));
  m.measurements.emplace("M", IndicatorSet::deterministic({0}, 1));
  const auto r = outcome_determinism_from_prep_nc(m, "M", {"p"}, "p", 1);
  EXPECT_TRUE(r.premises_hold);
  EXPECT_TRUE(r.indicators_idempotent);
}

TEST(DerivationFromPrepNc, RandomConformingModelsPass) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 4;
    // Each eigenstate owns a random nonempty block of points.
    std::vector<Eigen::Index> owner;
    for (int k = 0; k < d; ++k) {
      const int block = 1 + static_cast<int>(rng() % 3);
      for (int b = 0; b < block; ++b) owner.push_back(k);
    }
    const auto n = static_cast<Eigen::Index>(owner.size());
    OntModel m;
    m.ontic_size = n;
    std::vector<std::string> labels;
    Eigen::VectorXd mix = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < d; ++k) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
      for (Eigen::Index l = 0; l < n; ++l)
        if (owner[static_cast<std::size_t>(l)] == k) w(l) = 0.1 + static_cast<double>(rng() % 100) / 100.0;
      w /= w.sum();
      labels.push_back("p" + std::to_string(k));
      m.preparations.emplace(labels.back(), Distribution(w));
      mix += w / d;
    }
    m.preparations.emplace("mix", Distribution(mix));
    m.measurements.emplace("M", IndicatorSet::deterministic(owner, d));
    const auto r = outcome_determinism_from_prep_nc(m, "M", labels, "mix", d);
    EXPECT_TRUE(r.premises_hold);
    EXPECT_TRUE(r.indicators_idempotent);
  }
}
