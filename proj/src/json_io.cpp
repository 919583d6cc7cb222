#include "ncert/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ncert {

namespace {

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad value for '") + key + "': " + e.what());
  }
}

const Json& require_array(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
    throw InputError(std::string("'") + key + "' must be an array");
  return j.at(key);
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd real_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("expected a nonempty nested array");
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("ragged matrix rows");
    m.row(static_cast<Eigen::Index>(r)) = vector_from_json(j[r]).transpose();
  }
  return m;
}

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

std::string conclusion_name(CaseConclusion c) {
  switch (c) {
    case CaseConclusion::AllZero: return "all-zero";
    case CaseConclusion::Rays: return "ray";
    case CaseConclusion::Values: return "values";
  }
  return "unknown";
}

/// Rethrows library validation failures as input errors.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(std::move(row));
  }
  return out;
}

CMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("expected a nonempty nested matrix array");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& z = j[r][c];
      Complex value;
      if (z.is_number()) {
        value = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        value = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw InputError("complex entries must be [re, im]");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
    }
  }
  return m;
}

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw InputError(std::string("bad rational: ") + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return rational_from_double(j.get<double>());
  throw InputError("rational must be a string such as \"1/3\" or a number");
}

// ---------------------------------------------------------------------------

Json to_json(const OperationalTheory& theory) {
  Json j;
  j["dim"] = theory.dim();
  j["preparations"] = Json::array();
  for (const auto& [label, p] : theory.preparations())
    j["preparations"].push_back({{"label", label}, {"rho", to_json(p.rho.matrix())}});
  j["measurements"] = Json::array();
  for (const auto& [label, m] : theory.measurements()) {
    Json effects = Json::array();
    for (const auto& e : m.povm.effects()) effects.push_back(to_json(e.matrix()));
    j["measurements"].push_back({{"label", label}, {"effects", std::move(effects)}});
  }
  j["transformations"] = Json::array();
  for (const auto& [label, t] : theory.transformations()) {
    Json kraus = Json::array();
    for (const auto& w : t.channel.ops()) kraus.push_back(to_json(w));
    j["transformations"].push_back({{"label", label}, {"kraus", std::move(kraus)}});
  }
  j["mixtures"] = Json::array();
  for (const auto& m : theory.mixtures()) {
    Json comps = Json::array();
    for (const auto& c : m.components) comps.push_back({{"weight", to_json(c.weight)}, {"label", c.label}});
    j["mixtures"].push_back({{"kind", to_string(m.kind)}, {"target", m.target}, {"components", std::move(comps)}});
  }
  return j;
}

OperationalTheory theory_from_json(const Json& j) {
  return guarded([&] {
    OperationalTheory theory(require<Eigen::Index>(j, "dim"));
    for (const auto& p : require_array(j, "preparations"))
      theory.add(Preparation{require<std::string>(p, "label"), DensityOperator(cmatrix_from_json(p.at("rho"))), {}});
    if (j.contains("measurements")) {
      for (const auto& m : require_array(j, "measurements")) {
        std::vector<CMatrix> effects;
        for (const auto& e : require_array(m, "effects")) effects.push_back(cmatrix_from_json(e));
        theory.add(Measurement{require<std::string>(m, "label"), Povm::from_matrices(effects), {}});
      }
    }
    if (j.contains("transformations")) {
      for (const auto& t : require_array(j, "transformations")) {
        std::vector<CMatrix> ops;
        for (const auto& w : require_array(t, "kraus")) ops.push_back(cmatrix_from_json(w));
        theory.add(Transformation{require<std::string>(t, "label"), KrausChannel(std::move(ops)), {}});
      }
    }
    if (j.contains("mixtures")) {
      for (const auto& m : require_array(j, "mixtures")) {
        MixtureDecl decl{procedure_kind_from_string(require<std::string>(m, "kind")), require<std::string>(m, "target"),
                         {}};
        for (const auto& c : require_array(m, "components"))
          decl.components.push_back({rational_from_json(c.at("weight")), require<std::string>(c, "label")});
        theory.declare_mixture(std::move(decl));
      }
    }
    return theory;
  });
}

// ---------------------------------------------------------------------------

Json to_json(const OntModel& model) {
  Json j;
  j["ontic_size"] = model.ontic_size;
  j["preparations"] = Json::object();
  for (const auto& [label, mu] : model.preparations) j["preparations"][label] = to_json(mu.weights());
  j["measurements"] = Json::object();
  for (const auto& [label, xi] : model.measurements) j["measurements"][label] = to_json(xi.values());
  j["transformations"] = Json::object();
  for (const auto& [label, g] : model.transformations) j["transformations"][label] = to_json(g.matrix());
  return j;
}

OntModel ont_model_from_json(const Json& j) {
  return guarded([&] {
    OntModel model;
    model.ontic_size = require<Eigen::Index>(j, "ontic_size");
    if (j.contains("preparations"))
      for (const auto& [label, w] : j.at("preparations").items()) model.preparations.emplace(label, Distribution(vector_from_json(w)));
    if (j.contains("measurements"))
      for (const auto& [label, v] : j.at("measurements").items())
        model.measurements.emplace(label, IndicatorSet(real_matrix_from_json(v)));
    if (j.contains("transformations"))
      for (const auto& [label, g] : j.at("transformations").items())
        model.transformations.emplace(label, TransitionMatrix(real_matrix_from_json(g)));
    model.validate();
    return model;
  });
}

// ---------------------------------------------------------------------------

Json to_json(const ConstraintSystem& sys) {
  Json j;
  j["variables"] = sys.variables();
  j["disjoint_pairs"] = Json::array();
  for (const auto& [x, y] : sys.disjoint_pairs()) j["disjoint_pairs"].push_back({x, y});
  j["equality_groups"] = Json::array();
  for (const auto& f : sys.equality_groups()) {
    Json terms = Json::array();
    for (const auto& t : f.terms) terms.push_back({{"variable", t.variable}, {"coefficient", to_json(t.coefficient)}});
    j["equality_groups"].push_back({{"name", f.name}, {"class", f.equivalence_class}, {"terms", std::move(terms)}});
  }
  return j;
}

ConstraintSystem constraint_system_from_json(const Json& j) {
  return guarded([&] {
    const auto variables = require<std::vector<std::string>>(j, "variables");
    std::vector<VariablePair> pairs;
    if (j.contains("disjoint_pairs")) {
      for (const auto& p : require_array(j, "disjoint_pairs")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
          throw InputError("a disjoint pair is a two-element array of variable names");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    }
    std::vector<LinearForm> forms;
    if (j.contains("equality_groups")) {
      std::size_t k = 0;
      for (const auto& g : require_array(j, "equality_groups")) {
        ++k;
        LinearForm f;
        f.name = g.contains("name") ? require<std::string>(g, "name") : "form" + std::to_string(k);
        if (g.contains("class")) f.equivalence_class = require<std::string>(g, "class");
        for (const auto& t : require_array(g, "terms"))
          f.terms.push_back({require<std::string>(t, "variable"), rational_from_json(t.at("coefficient"))});
        forms.push_back(std::move(f));
      }
    }
    return ConstraintSystem(variables, std::move(pairs), std::move(forms));
  });
}

ConstraintSystem instance_from_json(const Json& j, double tol) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  if (j.contains("variables")) return constraint_system_from_json(j);
  if (j.contains("preparations")) return guarded([&] { return system_from_theory(theory_from_json(j), tol); });
  throw InputError("instance is neither a constraint system nor an operational theory");
}

// ---------------------------------------------------------------------------

Json to_json(const Certificate& cert) {
  Json j;
  j["kind"] = cert.kind;
  j["verdict"] = to_string(cert.verdict);
  j["system"] = cert.system ? to_json(*cert.system) : Json(nullptr);
  j["witness"] = cert.witness ? to_json(*cert.witness) : Json(nullptr);
  j["cases"] = Json::array();
  for (const auto& row : cert.cases) {
    Json c;
    c["pattern"] = row.pattern;
    c["conclusion"] = conclusion_name(row.conclusion);
    if (row.conclusion == CaseConclusion::Rays) {
      c["ray"] = Json::array();
      for (const auto& r : row.rays) c["ray"].push_back(to_json(r));
    }
    if (row.conclusion == CaseConclusion::Values) {
      c["values"] = Json::array();
      for (const auto& v : row.values) c["values"].push_back(to_json(v));
    }
    c["derivation"] = row.derivation;
    j["cases"].push_back(std::move(c));
  }
  j["premise_checks"] = Json::array();
  for (const auto& p : cert.premise_checks)
    j["premise_checks"].push_back({{"name", p.name}, {"max_deviation", p.max_deviation}, {"tol", p.tol}});
  j["notes"] = cert.notes;
  return j;
}

Json to_json(const KIdentityReport& report) {
  Json j;
  j["identities"] = Json::array();
  for (const auto& id : report.identities) j["identities"].push_back({{"name", id.name}, {"choi_dev", id.choi_dev}});
  j["bloch_projection_max_dev"] = report.bloch_projection_max_dev;
  j["remix_max_dev"] = report.remix_max_dev;
  return j;
}

Json to_json(const SimulationReport& report) {
  Json j;
  j["prep"] = report.prep;
  j["povm"] = report.povm;
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["rng"] = report.rng;
  j["counts"] = report.counts;
  j["frequencies"] = to_json(report.frequencies);
  j["born"] = to_json(report.born);
  j["max_abs_dev"] = report.max_abs_dev;
  j["bound"] = report.bound;
  return j;
}

Json to_json(const GleasonReport& report) {
  return {{"overlap", report.overlap},
          {"chi_p", report.chi_p},
          {"chi_p_prime", report.chi_p_prime},
          {"idempotent", report.idempotent},
          {"contradiction", report.contradiction}};
}

Json to_json(const ForcedIndicator& forced) {
  Json j;
  j["by_independence"] = Json::array();
  for (const auto& q : forced.by_independence) j["by_independence"].push_back(to_json(q));
  j["by_permutation"] = Json::array();
  for (const auto& q : forced.by_permutation) j["by_permutation"].push_back(to_json(q));
  j["symmetry"] = forced.symmetry;
  j["agree"] = forced.agree();
  return j;
}

Json to_json(const OdUnsharpReport& report) {
  Json j;
  j["povm"] = Json::array();
  for (const auto& e : report.povm) j["povm"].push_back(to_json(e));
  j["forced_indicator"] = Json::array();
  for (const auto& q : report.forced_indicator) j["forced_indicator"].push_back(to_json(q));
  j["outcome_deterministic"] = report.outcome_deterministic;
  j["contradiction"] = report.contradiction;
  return j;
}

}  // namespace ncert
