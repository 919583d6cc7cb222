#include <gtest/gtest.h>

#include "ncert/json_io.hpp"

using namespace ncert;

TEST(JsonIo, MatrixRoundTrip) {
  CMatrix m(2, 2);
  m << Complex(1, 2), 0.5, Complex(0, -1), 3;
  EXPECT_EQ(cmatrix_from_json(to_json(m)), m);
  EXPECT_EQ(cmatrix_from_json(Json::parse("[[1, 0], [0, 1]]")), CMatrix::Identity(2, 2));
  EXPECT_THROW(cmatrix_from_json(Json::parse("[[1, 0], [0]]")), InputError);
  EXPECT_THROW(cmatrix_from_json(Json::parse("\"x\"")), InputError);
}

TEST(JsonIo, RationalRoundTrip) {
  EXPECT_EQ(rational_from_json(to_json(Rational(-2, 3))), Rational(-2, 3));
  EXPECT_EQ(rational_from_json(Json(0.25)), Rational(1, 4));
  EXPECT_EQ(rational_from_json(Json(3)), Rational(3));
  EXPECT_THROW(rational_from_json(Json("1/0")), InputError);
  EXPECT_THROW(rational_from_json(Json("abc")), InputError);
}

TEST(JsonIo, TheoryRoundTrip) {
  const auto theory = paper_instances();
  const Json j = to_json(theory);
  const auto back = theory_from_json(j);
  EXPECT_EQ(back.preparations().size(), theory.preparations().size());
  EXPECT_EQ(back.measurements().size(), theory.measurements().size());
  EXPECT_EQ(back.transformations().size(), theory.transformations().size());
  EXPECT_EQ(back.mixtures().size(), theory.mixtures().size());
  EXPECT_TRUE(back.mixtures_hold());
  EXPECT_EQ(dump(to_json(back)), dump(j));
}

TEST(JsonIo, ConstraintSystemRoundTrip) {
  const auto sys = build_prep_system();
  const auto back = constraint_system_from_json(to_json(sys));
  EXPECT_EQ(back.variables(), sys.variables());
  EXPECT_EQ(back.disjoint_pairs(), sys.disjoint_pairs());
  EXPECT_EQ(back.form_matrix(), sys.form_matrix());
  EXPECT_EQ(dump(to_json(back)), dump(to_json(sys)));
}

TEST(JsonIo, InstanceDispatch) {
  EXPECT_EQ(instance_from_json(to_json(build_prep_system())).variable_count(), 6u);
  EXPECT_EQ(instance_from_json(to_json(paper_instances())).variable_count(), 6u);
  EXPECT_THROW(instance_from_json(Json::parse("{\"foo\": 1}")), InputError);
  EXPECT_THROW(instance_from_json(Json::parse("{\"variables\": [\"a\", \"a\"]}")), InputError);
}

TEST(JsonIo, OntModelRoundTrip) {
  const auto cert = pointwise_feasibility(
      ConstraintSystem({"a", "A"}, {{"a", "A"}}, {{"f", {{"a", Rational(1, 2)}, {"A", Rational(1, 2)}}, "nu"}}));
  const Json j = to_json(*cert.witness);
  const auto back = ont_model_from_json(j);
  EXPECT_EQ(back.ontic_size, 2);
  EXPECT_EQ(dump(to_json(back)), dump(j));
  Json broken = j;
  broken["ontic_size"] = 3;
  EXPECT_THROW(ont_model_from_json(broken), InputError);
}

TEST(JsonIo, MalformedTextReportsPosition) {
  try {
    parse_json_text("{\n  \"variables\": [\"a\",\n");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), std::runtime_error);
}

TEST(JsonIo, CertificateShape) {
  const Json j = to_json(prep_nogo());
  EXPECT_EQ(j["verdict"], "Infeasible");
  EXPECT_EQ(j["cases"].size(), 8u);
  EXPECT_EQ(j["cases"][0]["conclusion"], "all-zero");
  EXPECT_TRUE(j["witness"].is_null());
  EXPECT_FALSE(j["premise_checks"].empty());
  EXPECT_EQ(dump(j).back(), '\n');
}

TEST(JsonIo, ReportShapes) {
  const Json k = to_json(verify_k_identities());
  EXPECT_EQ(k["identities"].size(), 5u);
  EXPECT_EQ(k["identities"][3]["name"], "K4");
  const auto sim = bb_simulate(BBPreparation::pure(PureOnticState(canonical_state_vector("a"))),
                               paper_instances().measurement("M_a").povm, 10, 1, "a", "M_a");
  const Json s = to_json(sim);
  for (const char* key : {"prep", "povm", "n", "seed", "frequencies", "born", "max_abs_dev"})
    EXPECT_TRUE(s.contains(key)) << key;
}
