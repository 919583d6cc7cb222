// Command-line front end.
//
// Exit codes: 0 success or expected verdict, 1 internal or I/O error,
// 2 input error, 3 infeasible (feasibility only), 4 verification deviation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ncert/bbmodel.hpp"
#include "ncert/figure.hpp"
#include "ncert/json_io.hpp"
#include "ncert/nogo.hpp"

namespace {

using namespace ncert;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kInfeasible = 3, kDeviation = 4 };

struct RunConfig {
  std::string command;
  std::string target;
  std::string input;
  std::string out;
  double tol = kDefaultTol;
  std::size_t samples = 100000;
  std::uint64_t seed = 12345;
  std::string format = "json";
  std::string prep = "a,A";
  std::string povm = "b";
  std::string psi = "a";
  std::string psi_prime = "b";
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& body, const std::string& summary) {
  // Without --out the document itself goes to stdout, so the summary moves
  // to stderr to keep stdout parseable.
  if (cfg.out.empty()) {
    std::cout << body;
    std::cerr << summary << "\n";
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot write '" + cfg.out + "'");
  f << body;
  f.close();
  if (!f) throw IoError("failed writing '" + cfg.out + "'");
  std::cout << summary << "\n";
}

std::string certificate_text(const Certificate& cert) {
  std::ostringstream s;
  s << "kind: " << cert.kind << "\nverdict: " << to_string(cert.verdict) << "\n";
  for (const auto& p : cert.premise_checks)
    s << "premise " << (p.passed() ? "ok  " : "FAIL") << "  " << p.name << "  dev=" << p.max_deviation << "\n";
  for (const auto& row : cert.cases) {
    s << "case [";
    for (std::size_t i = 0; i < row.pattern.size(); ++i) s << (i ? " " : "") << row.pattern[i];
    s << "]";
    if (row.conclusion == CaseConclusion::AllZero) s << " all-zero";
    if (row.conclusion == CaseConclusion::Rays) s << " " << row.rays.size() << " ray(s)";
    if (row.conclusion == CaseConclusion::Values) {
      s << " values";
      for (const auto& v : row.values) s << " " << to_string(v);
    }
    s << "\n";
    for (const auto& d : row.derivation) s << "    " << d << "\n";
  }
  for (const auto& n : cert.notes) s << "note: " << n << "\n";
  return s.str();
}

std::string render(const RunConfig& cfg, const Json& j, const std::string& text) {
  return cfg.format == "text" ? text : dump(j);
}

int run_nogo(const RunConfig& cfg) {
  const std::string& t = cfg.target;
  if (t == "prep" || t == "meas" || t == "transf") {
    const Certificate cert = t == "prep" ? prep_nogo() : t == "meas" ? meas_nogo() : transf_nogo();
    const bool expected = cert.verdict == Verdict::Infeasible && cert.premises_hold();
    emit(cfg, render(cfg, to_json(cert), certificate_text(cert)),
         "nogo " + t + ": " + to_string(cert.verdict) + ", " + std::to_string(cert.cases.size()) + " cases, " +
             std::to_string(cert.premise_checks.size()) + " premise checks");
    return expected ? kOk : kDeviation;
  }
  if (t == "gleason") {
    const GleasonReport r = gleason_contradiction(canonical_state_vector(cfg.psi), canonical_state_vector(cfg.psi_prime), cfg.tol);
    std::ostringstream text;
    text << "overlap " << r.overlap << ", chi_P' " << r.chi_p_prime << ", contradiction " << r.contradiction << "\n";
    emit(cfg, render(cfg, to_json(r), text.str()),
         "nogo gleason: chi_P' = " + std::to_string(r.chi_p_prime) + (r.contradiction ? ", contradiction" : ", none"));
    return r.contradiction ? kOk : kDeviation;
  }
  if (t == "od-unsharp") {
    const OdUnsharpReport r = od_unsharp_contradiction();
    std::string forced;
    for (const auto& q : r.forced_indicator) forced += (forced.empty() ? "" : ", ") + to_string(q);
    const std::string line = "nogo od-unsharp: forced indicator (" + forced + ")" +
                             (r.contradiction ? ", not outcome deterministic: contradiction" : ", no contradiction");
    emit(cfg, render(cfg, to_json(r), line + "\n"), line);
    return r.contradiction ? kOk : kDeviation;
  }
  throw InputError("unknown no-go target '" + t + "'");
}

int run_feasibility(const RunConfig& cfg) {
  Json doc;
  try {
    doc = read_json_file(cfg.input);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  const ConstraintSystem sys = instance_from_json(doc, cfg.tol);
  Certificate cert;
  try {
    cert = pointwise_feasibility(sys);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const EnumerationBoundError& e) {
    throw InputError(e.what());
  }
  emit(cfg, render(cfg, to_json(cert), certificate_text(cert)),
       "feasibility: " + to_string(cert.verdict) + ", " + std::to_string(cert.cases.size()) + " cases" +
           (cert.witness ? ", witness on " + std::to_string(cert.witness->ontic_size) + " ontic states" : ""));
  return cert.verdict == Verdict::Feasible ? kOk : kInfeasible;
}

/// "a,A" (equal weights) or "0.25:a,0.75:B" over the six named states.
BBPreparation parse_prep_spec(const std::string& spec) {
  std::vector<std::pair<std::optional<double>, std::string>> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      parts.emplace_back(std::nullopt, item);
    } else {
      try {
        parts.emplace_back(std::stod(item.substr(0, colon)), item.substr(colon + 1));
      } catch (const std::exception&) {
        throw InputError("bad weight in preparation spec '" + item + "'");
      }
    }
  }
  if (parts.empty()) throw InputError("empty preparation spec");
  std::vector<BBComponent> comps;
  for (const auto& [w, name] : parts)
    comps.push_back({w.value_or(1.0 / static_cast<double>(parts.size())), PureOnticState(canonical_state_vector(name))});
  return BBPreparation(std::move(comps));
}

/// "a", "b", "c" for the PVMs {P_x, P_X}, or "M", "trivial".
std::pair<std::string, Povm> parse_povm_spec(const std::string& spec) {
  const OperationalTheory theory = paper_instances();
  if (spec == "a" || spec == "b" || spec == "c") return {"M_" + spec, theory.measurement("M_" + spec).povm};
  if (spec == "M") return {"M", theory.measurement("M").povm};
  if (spec == "trivial") return {"M_trivial", theory.measurement("M_trivial").povm};
  throw InputError("unknown POVM spec '" + spec + "' (use a, b, c, M or trivial)");
}

int run_simulate(const RunConfig& cfg) {
  const BBPreparation prep = parse_prep_spec(cfg.prep);
  const auto [povm_name, povm] = parse_povm_spec(cfg.povm);
  const SimulationReport r = bb_simulate(prep, povm, cfg.samples, cfg.seed, cfg.prep, povm_name);
  std::ostringstream line;
  line << "simulate-bb: n=" << r.n << " seed=" << r.seed << " max_abs_dev=" << r.max_abs_dev << " bound=" << r.bound
       << (r.within_bound() ? " ok" : " EXCEEDED");
  emit(cfg, render(cfg, to_json(r), line.str() + "\n"), line.str());
  return r.within_bound() ? kOk : kDeviation;
}

int run_figure(const RunConfig& cfg) {
  const std::string svg = bloch_figure_svg();
  emit(cfg, svg, "figure: 6 states, 3 segments, 2 triangles, center I/2");
  return kOk;
}

int run_instance(const RunConfig& cfg) {
  const OperationalTheory theory = paper_instances();
  emit(cfg, dump(to_json(theory)),
       "instance: " + std::to_string(theory.preparations().size()) + " preparations, " +
           std::to_string(theory.measurements().size()) + " measurements, " +
           std::to_string(theory.transformations().size()) + " transformations");
  return kOk;
}

int run_verify(const RunConfig& cfg) {
  Json doc;
  try {
    doc = read_json_file(cfg.input);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  const OperationalTheory theory = theory_from_json(doc);
  const auto checks = theory.verify_mixtures(cfg.tol);
  Json j = Json::array();
  std::string text;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    j.push_back({{"name", c.name}, {"max_deviation", c.max_deviation}, {"ok", c.ok}});
    text += std::string(c.ok ? "ok    " : "FAIL  ") + c.name + "\n";
    if (!c.ok) ++failed;
  }
  emit(cfg, render(cfg, Json{{"mixtures", j}}, text),
       "verify: " + std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " mixtures hold");
  return failed == 0 ? kOk : kDeviation;
}

int run_kraus(const RunConfig& cfg) {
  KIdentityReport r;
  try {
    r = verify_k_identities(kExactTol);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDeviation;
  }
  std::ostringstream line;
  line << "kraus: max Choi deviation " << r.max_choi_dev() << ", Bloch projection deviation "
       << r.bloch_projection_max_dev;
  emit(cfg, render(cfg, to_json(r), line.str() + "\n"), line.str());
  return kOk;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "nogo") return run_nogo(cfg);
  if (cfg.command == "feasibility") return run_feasibility(cfg);
  if (cfg.command == "simulate-bb") return run_simulate(cfg);
  if (cfg.command == "figure") return run_figure(cfg);
  if (cfg.command == "instance") return run_instance(cfg);
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "kraus") return run_kraus(cfg);
  throw InputError("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Noncontextuality no-go certificates for qubit operational theories"};
  app.require_subcommand(1);

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output path (default: standard output)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--tol", cfg.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  };

  auto* nogo = app.add_subcommand("nogo", "Certify one of the no-go theorems");
  nogo->add_option("target", cfg.target, "prep, meas, transf, gleason or od-unsharp")
      ->required()
      ->check(CLI::IsMember({"prep", "meas", "transf", "gleason", "od-unsharp"}));
  nogo->add_option("--psi", cfg.psi, "First state for gleason (a, A, b, B, c, C)");
  nogo->add_option("--psi-prime", cfg.psi_prime, "Second state for gleason");
  common(nogo);

  auto* feas = app.add_subcommand("feasibility", "Certify a constraint system or operational theory file");
  feas->add_option("instance", cfg.input, "Instance JSON")->required();
  common(feas);

  auto* sim = app.add_subcommand("simulate-bb", "Sample the Beltrametti-Bugajski model");
  sim->add_option("--prep", cfg.prep, "States with optional weights, e.g. a,A or 0.25:a,0.75:b");
  sim->add_option("--povm", cfg.povm, "a, b, c (sharp), M or trivial");
  sim->add_option("--samples", cfg.samples, "Number of samples")->check(CLI::PositiveNumber);
  sim->add_option("--seed", cfg.seed, "RNG seed");
  common(sim);

  auto* fig = app.add_subcommand("figure", "Write the Bloch-disk SVG");
  fig->add_option("--out", cfg.out, "SVG path (default: standard output)");

  auto* inst = app.add_subcommand("instance", "Write the canonical qubit theory as JSON");
  common(inst);

  auto* ver = app.add_subcommand("verify", "Check the declared mixtures of a theory file");
  ver->add_option("instance", cfg.input, "Theory JSON")->required();
  common(ver);

  auto* kr = app.add_subcommand("kraus", "Check the five decompositions of the y-projection channel");
  common(kr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const NoContradictionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PremiseError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kDeviation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
