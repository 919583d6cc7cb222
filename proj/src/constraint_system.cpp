#include "ncert/constraint_system.hpp"

#include <algorithm>
#include <set>

namespace ncert {

ConstraintSystem::ConstraintSystem(std::vector<std::string> variables, std::vector<VariablePair> disjoint_pairs,
                                   std::vector<LinearForm> equality_groups)
    : variables_(std::move(variables)), pairs_(std::move(disjoint_pairs)), forms_(std::move(equality_groups)) {
  std::set<std::string> names;
  for (const auto& v : variables_) {
    if (v.empty()) throw ValidationError("variable names must be nonempty");
    if (!names.insert(v).second) throw ValidationError("duplicate variable '" + v + "'");
  }
  for (const auto& [x, y] : pairs_) {
    (void)index_of(x);
    (void)index_of(y);
    if (x == y) throw ValidationError("disjoint pair repeats variable '" + x + "'");
  }
  std::set<std::string> form_names;
  for (const auto& f : forms_) {
    if (!form_names.insert(f.name).second) throw ValidationError("duplicate form name '" + f.name + "'");
    for (const auto& t : f.terms) (void)index_of(t.variable);
  }
}

std::size_t ConstraintSystem::index_of(const std::string& variable) const {
  const auto it = std::find(variables_.begin(), variables_.end(), variable);
  if (it == variables_.end()) throw ValidationError("undeclared variable '" + variable + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

std::vector<std::string> ConstraintSystem::classes() const {
  std::vector<std::string> out;
  for (const auto& f : forms_)
    if (std::find(out.begin(), out.end(), f.equivalence_class) == out.end()) out.push_back(f.equivalence_class);
  return out;
}

RationalMatrix ConstraintSystem::form_matrix() const {
  RationalMatrix m = RationalMatrix::Zero(static_cast<Eigen::Index>(forms_.size()),
                                          static_cast<Eigen::Index>(variables_.size()));
  for (std::size_t r = 0; r < forms_.size(); ++r)
    for (const auto& t : forms_[r].terms)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(index_of(t.variable))) += t.coefficient;
  return m;
}

RationalMatrix ConstraintSystem::equality_matrix() const {
  const RationalMatrix f = form_matrix();
  std::vector<Eigen::Index> rows_first;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> diffs;
  for (const auto& cls : classes()) {
    Eigen::Index first = -1;
    for (std::size_t r = 0; r < forms_.size(); ++r) {
      if (forms_[r].equivalence_class != cls) continue;
      if (first < 0) first = static_cast<Eigen::Index>(r);
      else diffs.emplace_back(static_cast<Eigen::Index>(r), first);
    }
  }
  RationalMatrix e = RationalMatrix::Zero(static_cast<Eigen::Index>(diffs.size()), f.cols());
  for (std::size_t k = 0; k < diffs.size(); ++k)
    e.row(static_cast<Eigen::Index>(k)) = f.row(diffs[k].first) - f.row(diffs[k].second);
  return e;
}

ConstraintSystem ConstraintSystem::without_form(const std::string& name) const {
  std::vector<LinearForm> kept;
  for (const auto& f : forms_)
    if (f.name != name) kept.push_back(f);
  if (kept.size() == forms_.size()) throw ValidationError("no form named '" + name + "'");
  return {variables_, pairs_, std::move(kept)};
}

std::string format_form(const ConstraintSystem& sys, const RationalVector& coeffs, const std::vector<bool>& omit) {
  std::string out;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (coeffs(i) == 0 || (!omit.empty() && omit[ui])) continue;
    Rational c = coeffs(i);
    if (out.empty()) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    if (c != 1) out += to_string(c) + " ";
    out += sys.variables()[ui];
  }
  return out.empty() ? "0" : out;
}

ConstraintSystem build_prep_system() {
  const Rational half(1, 2);
  const Rational third(1, 3);
  std::vector<LinearForm> forms{
      {"aA", {{"a", half}, {"A", half}}, "nu"},
      {"bB", {{"b", half}, {"B", half}}, "nu"},
      {"cC", {{"c", half}, {"C", half}}, "nu"},
      {"abc", {{"a", third}, {"b", third}, {"c", third}}, "nu"},
      {"ABC", {{"A", third}, {"B", third}, {"C", third}}, "nu"},
  };
  return {{"a", "A", "b", "B", "c", "C"}, {{"a", "A"}, {"b", "B"}, {"c", "C"}}, std::move(forms)};
}

ConstraintSystem system_from_theory(const OperationalTheory& theory, double tol) {
  std::set<std::string> targets;
  std::vector<const MixtureDecl*> decls;
  for (const auto& m : theory.mixtures()) {
    if (m.kind != ProcedureKind::Preparation) continue;
    targets.insert(m.target);
    decls.push_back(&m);
  }
  for (const auto* m : decls)
    for (const auto& c : m->components)
      if (targets.count(c.label))
        throw ValidationError("preparation '" + c.label + "' is both a mixture target and a component");

  std::vector<std::string> variables;
  for (const auto& [label, p] : theory.preparations())
    if (!targets.count(label)) variables.push_back(label);

  std::vector<VariablePair> pairs;
  for (std::size_t i = 0; i < variables.size(); ++i)
    for (std::size_t j = i + 1; j < variables.size(); ++j) {
      const auto& x = theory.preparation(variables[i]).rho.matrix();
      const auto& y = theory.preparation(variables[j]).rho.matrix();
      if (max_abs_entry(x * y) <= tol) pairs.emplace_back(variables[i], variables[j]);
    }

  // Each target joins the class of the first earlier target with the same
  // density operator.
  std::vector<std::string> representatives;
  std::vector<LinearForm> forms;
  for (const auto* m : decls) {
    const auto& target = theory.preparation(m->target);
    std::string cls = m->target;
    for (const auto& rep : representatives)
      if (prep_equivalent(theory.preparation(rep), target, tol)) {
        cls = rep;
        break;
      }
    if (cls == m->target && std::find(representatives.begin(), representatives.end(), cls) == representatives.end())
      representatives.push_back(cls);
    std::string name = m->target;
    for (int k = 2; std::any_of(forms.begin(), forms.end(), [&](const LinearForm& g) { return g.name == name; }); ++k)
      name = m->target + "#" + std::to_string(k);
    LinearForm f{name, {}, cls};
    for (const auto& c : m->components) f.terms.push_back({c.label, c.weight});
    forms.push_back(std::move(f));
  }
  return {std::move(variables), std::move(pairs), std::move(forms)};
}

}  // namespace ncert
