#include "ncert/operational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace ncert {

std::string to_string(ProcedureKind kind) {
  switch (kind) {
    case ProcedureKind::Preparation: return "prep";
    case ProcedureKind::Measurement: return "meas";
    case ProcedureKind::Transformation: return "transf";
  }
  return "prep";
}

ProcedureKind procedure_kind_from_string(const std::string& s) {
  if (s == "prep") return ProcedureKind::Preparation;
  if (s == "meas") return ProcedureKind::Measurement;
  if (s == "transf") return ProcedureKind::Transformation;
  throw ValidationError("unknown procedure kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// Equivalence

bool prep_equivalent(const Preparation& p, const Preparation& q, double tol) {
  if (p.rho.dim() != q.rho.dim()) throw DimensionError("preparations differ in dimension");
  return max_abs_entry(p.rho.matrix() - q.rho.matrix()) <= tol;
}

std::optional<OutcomePermutation> meas_equivalent(const Measurement& m, const Measurement& n,
                                                  bool allow_permutation, double tol) {
  if (m.povm.dim() != n.povm.dim()) throw DimensionError("measurements differ in dimension");
  const std::size_t k = m.povm.size();
  if (k != n.povm.size()) return std::nullopt;
  if (allow_permutation && k > kMaxPermutationOutcomes)
    throw ValidationError("outcome-permutation search is limited to 8 outcomes");

  const auto matches = [&](const OutcomePermutation& perm) {
    for (std::size_t i = 0; i < k; ++i)
      if (max_abs_entry(m.povm[i].matrix() - n.povm[perm[i]].matrix()) > tol) return false;
    return true;
  };

  OutcomePermutation perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  if (!allow_permutation) return matches(perm) ? std::optional(perm) : std::nullopt;
  do {
    if (matches(perm)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::vector<OutcomePermutation> outcome_matchings(const Measurement& m, const Measurement& n, double tol) {
  if (m.povm.dim() != n.povm.dim()) throw DimensionError("measurements differ in dimension");
  const std::size_t k = m.povm.size();
  std::vector<OutcomePermutation> found;
  if (k != n.povm.size()) return found;
  if (k > kMaxPermutationOutcomes) throw ValidationError("outcome-permutation search is limited to 8 outcomes");
  OutcomePermutation perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      ok = max_abs_entry(m.povm[i].matrix() - n.povm[perm[i]].matrix()) <= tol;
    if (ok) found.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

bool transf_equivalent(const Transformation& s, const Transformation& t, double tol) {
  return channels_equal(s.channel, t.channel, tol);
}

// ---------------------------------------------------------------------------
// Mixtures

namespace {

template <typename Procedure>
void check_weights(const std::vector<Weighted<Procedure>>& components, double tol) {
  if (components.empty()) throw ValidationError("mixture needs at least one component");
  double sum = 0.0;
  for (const auto& [w, proc] : components) {
    if (!std::isfinite(w) || w < -tol) throw ValidationError("mixture weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol) throw ValidationError("mixture weights must sum to 1");
}

template <typename Procedure>
std::string describe(const std::vector<Weighted<Procedure>>& components) {
  std::ostringstream out;
  out << "mixture of";
  for (const auto& [w, proc] : components) out << ' ' << w << '*' << proc.label;
  return out.str();
}

}  // namespace

Preparation mix_preparations(const std::vector<Weighted<Preparation>>& components, std::string label,
                             double tol) {
  check_weights(components, tol);
  const auto d = components.front().second.rho.dim();
  CMatrix rho = CMatrix::Zero(d, d);
  for (const auto& [w, p] : components) {
    if (p.rho.dim() != d) throw DimensionError("mixed preparations differ in dimension");
    rho += std::max(w, 0.0) * p.rho.matrix();
  }
  return {std::move(label), DensityOperator(std::move(rho), tol), describe(components)};
}

Measurement mix_measurements(const std::vector<Weighted<Measurement>>& components, std::string label,
                             double tol) {
  check_weights(components, tol);
  const auto& first = components.front().second.povm;
  const auto d = first.dim();
  std::vector<CMatrix> sums(first.size(), CMatrix::Zero(d, d));
  for (const auto& [w, m] : components) {
    if (m.povm.size() != first.size()) throw ValidationError("mixed measurements differ in outcome count");
    if (m.povm.dim() != d) throw DimensionError("mixed measurements differ in dimension");
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += std::max(w, 0.0) * m.povm[k].matrix();
  }
  return {std::move(label), Povm::from_matrices(sums, tol), describe(components)};
}

Transformation mix_channels(const std::vector<Weighted<Transformation>>& components, std::string label,
                            double tol) {
  check_weights(components, tol);
  const auto& first = components.front().second.channel;
  std::vector<CMatrix> ops;
  for (const auto& [w, t] : components) {
    if (t.channel.input_dim() != first.input_dim() || t.channel.output_dim() != first.output_dim())
      throw DimensionError("mixed channels differ in dimension");
    const double scale = std::sqrt(std::max(w, 0.0));
    for (const auto& op : t.channel.ops()) ops.push_back(scale * op);
  }
  return {std::move(label), KrausChannel(std::move(ops), tol), describe(components)};
}

Measurement coarse_grain_povm(const Measurement& m, const std::vector<std::vector<std::size_t>>& partition,
                              std::string label) {
  const std::size_t k = m.povm.size();
  std::vector<int> seen(k, 0);
  for (const auto& block : partition) {
    if (block.empty()) throw ValidationError("partition blocks must be nonempty");
    for (auto j : block) {
      if (j >= k) throw ValidationError("partition refers to a missing outcome");
      if (seen[j]++) throw ValidationError("partition blocks overlap");
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c == 0; }))
    throw ValidationError("partition does not cover every outcome");

  const auto d = m.povm.dim();
  std::vector<Effect> effects;
  for (const auto& block : partition) {
    CMatrix e = CMatrix::Zero(d, d);
    for (auto j : block) e += m.povm[j].matrix();
    effects.emplace_back(std::move(e));
  }
  if (label.empty()) label = m.label + "/coarse";
  return {std::move(label), Povm(std::move(effects)), "coarse-graining of " + m.label};
}

// ---------------------------------------------------------------------------
// OperationalTheory

void OperationalTheory::add(Preparation p) {
  if (p.rho.dim() != dim_) throw DimensionError("preparation '" + p.label + "' has the wrong dimension");
  const auto label = p.label;
  if (!preparations_.emplace(label, std::move(p)).second)
    throw ValidationError("duplicate preparation label '" + label + "'");
}

void OperationalTheory::add(Measurement m) {
  if (m.povm.dim() != dim_) throw DimensionError("measurement '" + m.label + "' has the wrong dimension");
  const auto label = m.label;
  if (!measurements_.emplace(label, std::move(m)).second)
    throw ValidationError("duplicate measurement label '" + label + "'");
}

void OperationalTheory::add(Transformation t) {
  if (t.channel.input_dim() != dim_ || t.channel.output_dim() != dim_)
    throw DimensionError("transformation '" + t.label + "' has the wrong dimension");
  const auto label = t.label;
  if (!transformations_.emplace(label, std::move(t)).second)
    throw ValidationError("duplicate transformation label '" + label + "'");
}

namespace {

template <typename Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& label, const char* kind) {
  const auto it = map.find(label);
  if (it == map.end()) throw ValidationError(std::string("unknown ") + kind + " '" + label + "'");
  return it->second;
}

}  // namespace

const Preparation& OperationalTheory::preparation(const std::string& label) const {
  return lookup(preparations_, label, "preparation");
}
const Measurement& OperationalTheory::measurement(const std::string& label) const {
  return lookup(measurements_, label, "measurement");
}
const Transformation& OperationalTheory::transformation(const std::string& label) const {
  return lookup(transformations_, label, "transformation");
}

void OperationalTheory::declare_mixture(MixtureDecl decl) {
  if (decl.components.empty()) throw ValidationError("mixture '" + decl.target + "' has no components");
  const auto require = [&](const std::string& label) {
    switch (decl.kind) {
      case ProcedureKind::Preparation: (void)preparation(label); break;
      case ProcedureKind::Measurement: (void)measurement(label); break;
      case ProcedureKind::Transformation: (void)transformation(label); break;
    }
  };
  require(decl.target);
  for (const auto& c : decl.components) {
    if (c.weight < 0) throw ValidationError("mixture '" + decl.target + "' has a negative weight");
    require(c.label);
  }
  Rational total = 0;
  for (const auto& c : decl.components) total += c.weight;
  if (total != 1) throw ValidationError("mixture '" + decl.target + "' has weights summing to " + to_string(total));
  mixtures_.push_back(std::move(decl));
}

namespace {

std::string mixture_name(const MixtureDecl& m) {
  std::string s = m.target + " =";
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    s += (i ? " + " : " ") + to_string(m.components[i].weight) + " " + m.components[i].label;
  }
  return s;
}

}  // namespace

std::vector<MixtureCheck> OperationalTheory::verify_mixtures(double tol) const {
  std::vector<MixtureCheck> checks;
  for (const auto& m : mixtures_) {
    Rational total = 0;
    for (const auto& c : m.components) total += c.weight;
    double dev = std::abs(to_double(total - 1));

    switch (m.kind) {
      case ProcedureKind::Preparation: {
        CMatrix sum = CMatrix::Zero(dim_, dim_);
        for (const auto& c : m.components) sum += to_double(c.weight) * preparation(c.label).rho.matrix();
        dev = std::max(dev, max_abs_entry(sum - preparation(m.target).rho.matrix()));
        break;
      }
      case ProcedureKind::Measurement: {
        const auto& target = measurement(m.target).povm;
        for (const auto& c : m.components)
          if (measurement(c.label).povm.size() != target.size())
            throw ValidationError("mixture '" + m.target + "' mixes measurements of different outcome counts");
        for (std::size_t k = 0; k < target.size(); ++k) {
          CMatrix sum = CMatrix::Zero(dim_, dim_);
          for (const auto& c : m.components) sum += to_double(c.weight) * measurement(c.label).povm[k].matrix();
          dev = std::max(dev, max_abs_entry(sum - target[k].matrix()));
        }
        break;
      }
      case ProcedureKind::Transformation: {
        const auto din = dim_;
        CMatrix choi = CMatrix::Zero(din * din, din * din);
        for (const auto& c : m.components)
          choi += to_double(c.weight) * choi_matrix(transformation(c.label).channel).matrix;
        dev = std::max(dev, max_abs_entry(choi - choi_matrix(transformation(m.target).channel).matrix));
        break;
      }
    }
    checks.push_back({to_string(m.kind) + ": " + mixture_name(m), dev, dev <= tol});
  }
  return checks;
}

bool OperationalTheory::mixtures_hold(double tol) const {
  const auto checks = verify_mixtures(tol);
  return std::all_of(checks.begin(), checks.end(), [](const MixtureCheck& c) { return c.ok; });
}

// ---------------------------------------------------------------------------
// The canonical qubit instance

const std::vector<std::string>& canonical_state_names() {
  static const std::vector<std::string> names{"a", "A", "b", "B", "c", "C"};
  return names;
}

CVector canonical_state_vector(const std::string& name) {
  const double h = 0.5;
  const double r = std::sqrt(3.0) / 2.0;
  CVector v(2);
  if (name == "a") v << 1.0, 0.0;
  else if (name == "A") v << 0.0, 1.0;
  else if (name == "b") v << h, r;
  else if (name == "B") v << r, -h;
  else if (name == "c") v << h, -r;
  else if (name == "C") v << r, h;
  else throw ValidationError("unknown state name '" + name + "'");
  return v;
}

const std::vector<std::pair<int, std::string>>& rotation_labels() {
  static const std::vector<std::pair<int, std::string>> labels{
      {0, "T_0"}, {1, "T_pi/3"}, {2, "T_2pi/3"}, {3, "T_pi"}, {4, "T_4pi/3"}, {5, "T_5pi/3"}};
  return labels;
}

namespace {

Rational q(long n, long d) { return Rational(n, d); }

}  // namespace

OperationalTheory paper_instances() {
  OperationalTheory theory(2);

  std::map<std::string, Preparation> pure;
  for (const auto& name : canonical_state_names()) {
    Preparation p{name, DensityOperator::pure(canonical_state_vector(name)), "pure"};
    pure.emplace(name, p);
    theory.add(std::move(p));
  }

  const std::vector<std::pair<std::string, std::vector<std::string>>> prep_mixes{
      {"aA", {"a", "A"}}, {"bB", {"b", "B"}}, {"cC", {"c", "C"}}, {"abc", {"a", "b", "c"}}, {"ABC", {"A", "B", "C"}}};
  for (const auto& [target, parts] : prep_mixes) {
    const auto n = static_cast<long>(parts.size());
    std::vector<Weighted<Preparation>> comps;
    MixtureDecl decl{ProcedureKind::Preparation, target, {}};
    for (const auto& part : parts) {
      comps.emplace_back(1.0 / static_cast<double>(n), pure.at(part));
      decl.components.push_back({q(1, n), part});
    }
    theory.add(mix_preparations(comps, target));
    theory.declare_mixture(std::move(decl));
  }

  std::map<std::string, Measurement> pvms;
  for (const auto& [small, big] : {std::pair{"a", "A"}, std::pair{"b", "B"}, std::pair{"c", "C"}}) {
    const std::string label = std::string("M_") + small;
    Measurement m{label,
                  Povm::from_matrices({pure.at(small).rho.matrix(), pure.at(big).rho.matrix()}),
                  "projective"};
    pvms.emplace(label, m);
    theory.add(std::move(m));
  }
  {
    std::vector<Weighted<Measurement>> comps;
    MixtureDecl decl{ProcedureKind::Measurement, "M", {}};
    for (const auto& label : {"M_a", "M_b", "M_c"}) {
      comps.emplace_back(1.0 / 3.0, pvms.at(label));
      decl.components.push_back({q(1, 3), label});
    }
    theory.add(mix_measurements(comps, "M"));
    theory.declare_mixture(std::move(decl));
  }
  const CMatrix half_identity = 0.5 * CMatrix::Identity(2, 2);
  theory.add(Measurement{"M_trivial", Povm::from_matrices({half_identity, half_identity}), "fair coin"});

  std::map<int, Transformation> rotations;
  for (const auto& [k, label] : rotation_labels()) {
    Transformation t{label, rotation_channel_y(k * std::numbers::pi / 3.0), "unitary"};
    rotations.emplace(k, t);
    theory.add(std::move(t));
  }
  theory.add(mix_channels({{0.5, rotations.at(0)}, {0.5, rotations.at(3)}}, "T"));

  const std::vector<std::vector<int>> channel_mixes{{0, 3}, {1, 4}, {2, 5}, {0, 2, 4}, {1, 3, 5}};
  for (const auto& parts : channel_mixes) {
    const auto n = static_cast<long>(parts.size());
    MixtureDecl decl{ProcedureKind::Transformation, "T", {}};
    for (int k : parts) decl.components.push_back({q(1, n), rotation_labels()[static_cast<std::size_t>(k)].second});
    theory.declare_mixture(std::move(decl));
  }
  return theory;
}

}  // namespace ncert
