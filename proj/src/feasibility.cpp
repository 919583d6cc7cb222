#include "ncert/feasibility.hpp"

#include <algorithm>
#include <set>

#include "ncert/linalg.hpp"

namespace ncert {

std::string to_string(Verdict v) { return v == Verdict::Feasible ? "Feasible" : "Infeasible"; }

bool Certificate::premises_hold() const {
  return std::all_of(premise_checks.begin(), premise_checks.end(), [](const PremiseCheck& c) { return c.passed(); });
}

std::vector<bool> zero_pattern(const ConstraintSystem& sys, std::size_t index) {
  const auto& pairs = sys.disjoint_pairs();
  const std::size_t p = pairs.size();
  std::vector<bool> zeroed(sys.variable_count(), false);
  for (std::size_t i = 0; i < p; ++i) {
    const bool second = (index >> (p - 1 - i)) & 1U;
    zeroed[sys.index_of(second ? pairs[i].second : pairs[i].first)] = true;
  }
  return zeroed;
}

namespace {

std::vector<std::string> pattern_names(const ConstraintSystem& sys, std::size_t index) {
  const auto& pairs = sys.disjoint_pairs();
  const std::size_t p = pairs.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p; ++i) {
    const bool second = (index >> (p - 1 - i)) & 1U;
    const auto& name = second ? pairs[i].second : pairs[i].first;
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  }
  return names;
}

}  // namespace

std::vector<RationalVector> extreme_rays(const ConstraintSystem& sys, const std::vector<bool>& zeroed) {
  const RationalMatrix e = sys.equality_matrix();
  std::vector<Eigen::Index> free;
  for (std::size_t i = 0; i < sys.variable_count(); ++i)
    if (!zeroed[i]) free.push_back(static_cast<Eigen::Index>(i));
  if (free.size() > kMaxFreeVariables) throw EnumerationBoundError("too many free variables in one zero pattern");

  // An extreme ray has a minimal support S: the kernel of E restricted to S
  // is one-dimensional and spanned by a vector that is nonzero on all of S.
  std::vector<RationalVector> rays;
  const std::size_t f = free.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << f); ++mask) {
    std::vector<Eigen::Index> cols;
    for (std::size_t k = 0; k < f; ++k)
      if (mask & (std::size_t{1} << k)) cols.push_back(free[k]);
    RationalMatrix sub(e.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = e.col(cols[k]);
    const RationalMatrix kernel = linalg::null_space(sub);
    if (kernel.cols() != 1) continue;
    const Rational lead = kernel(0, 0);
    bool same_sign = true;
    for (Eigen::Index r = 0; r < kernel.rows() && same_sign; ++r)
      same_sign = kernel(r, 0) != 0 && ((kernel(r, 0) > 0) == (lead > 0));
    if (!same_sign) continue;
    RationalVector ray = RationalVector::Zero(static_cast<Eigen::Index>(sys.variable_count()));
    for (std::size_t k = 0; k < cols.size(); ++k) ray(cols[k]) = kernel(static_cast<Eigen::Index>(k), 0) / lead;
    rays.push_back(std::move(ray));
  }
  return rays;
}

std::optional<RationalVector> nonnegative_solution(const RationalMatrix& a, const RationalVector& b) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m) throw DimensionError("right-hand side does not match the system");
  if (m == 0) return RationalVector(RationalVector::Zero(n));

  // Columns: x (n), artificials (m), right-hand side. Last row: reduced costs
  // of the phase-one objective (sum of artificials).
  const Eigen::Index rhs = n + m;
  RationalMatrix t = RationalMatrix::Zero(m + 1, n + m + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Rational sign = b(i) < 0 ? Rational(-1) : Rational(1);
    t.row(i).head(n) = a.row(i) * sign;
    t(i, n + i) = 1;
    t(i, rhs) = b(i) * sign;
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < m; ++i) s += t(i, j);
    t(m, j) = -s;
  }
  {
    Rational s = 0;
    for (Eigen::Index i = 0; i < m; ++i) s += t(i, rhs);
    t(m, rhs) = -s;
  }

  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j)
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    Rational best_ratio;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      const Rational ratio = t(i, rhs) / t(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen for phase one
    const Rational pivot = t(leave, enter);
    t.row(leave) /= pivot;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Rational factor = t(i, enter);
      t.row(i) -= t.row(leave) * factor;
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  if (t(m, rhs) != 0) return std::nullopt;
  RationalVector x = RationalVector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto bi = basis[static_cast<std::size_t>(i)];
    if (bi < n) x(bi) = t(i, rhs);
  }
  return x;
}

std::pair<std::vector<std::string>, bool> derive_all_zero(const ConstraintSystem& sys,
                                                           const std::vector<bool>& zeroed) {
  std::vector<bool> zero = zeroed;
  std::vector<std::string> steps;
  const RationalMatrix f = sys.form_matrix();
  const auto& forms = sys.equality_groups();
  const auto n = static_cast<Eigen::Index>(sys.variable_count());

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& cls : sys.classes()) {
      std::vector<Eigen::Index> rows;
      for (std::size_t r = 0; r < forms.size(); ++r)
        if (forms[r].equivalence_class == cls) rows.push_back(static_cast<Eigen::Index>(r));
      for (std::size_t i = 0; i < rows.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < rows.size() && !changed; ++j) {
          int sign = 0;
          bool mixed = false;
          std::vector<std::size_t> forced;
          for (Eigen::Index v = 0; v < n; ++v) {
            if (zero[static_cast<std::size_t>(v)]) continue;
            const Rational d = f(rows[i], v) - f(rows[j], v);
            if (d == 0) continue;
            const int s = d > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) mixed = true;
            forced.push_back(static_cast<std::size_t>(v));
          }
          if (forced.empty() || mixed) continue;
          std::string text = forms[static_cast<std::size_t>(rows[i])].name + " = " +
                             forms[static_cast<std::size_t>(rows[j])].name + ": " +
                             format_form(sys, f.row(rows[i]).transpose(), zero) + " = " +
                             format_form(sys, f.row(rows[j]).transpose(), zero) + " =>";
          for (std::size_t k = 0; k < forced.size(); ++k) text += (k ? " = " : " ") + sys.variables()[forced[k]];
          text += " = 0";
          for (auto v : forced) zero[v] = true;
          steps.push_back(std::move(text));
          changed = true;
        }
      }
      if (changed) break;
    }
  }
  const bool complete = std::all_of(zero.begin(), zero.end(), [](bool z) { return z; });
  return {std::move(steps), complete};
}

namespace {

OntModel build_witness(const ConstraintSystem& sys, const std::vector<RationalVector>& rays,
                       const RationalVector& weights) {
  std::vector<RationalVector> points;
  for (std::size_t j = 0; j < rays.size(); ++j) {
    const Rational w = weights(static_cast<Eigen::Index>(j));
    if (w > 0) points.push_back(rays[j] * w);
  }
  const auto size = static_cast<Eigen::Index>(points.size());
  OntModel model;
  model.ontic_size = size;
  for (std::size_t v = 0; v < sys.variable_count(); ++v) {
    Eigen::VectorXd mu(size);
    for (Eigen::Index l = 0; l < size; ++l) mu(l) = to_double(points[static_cast<std::size_t>(l)](static_cast<Eigen::Index>(v)));
    model.preparations.emplace(sys.variables()[v], Distribution(std::move(mu)));
  }

  // The common value of each class is itself a distribution when the class's
  // forms are convex combinations.
  const RationalMatrix f = sys.form_matrix();
  for (const auto& cls : sys.classes()) {
    if (model.preparations.count(cls)) continue;
    Eigen::Index first = -1;
    bool convex = true;
    for (std::size_t r = 0; r < sys.equality_groups().size(); ++r) {
      if (sys.equality_groups()[r].equivalence_class != cls) continue;
      const auto row = static_cast<Eigen::Index>(r);
      if (first < 0) first = row;
      Rational total = 0;
      for (Eigen::Index v = 0; v < f.cols(); ++v) {
        if (f(row, v) < 0) convex = false;
        total += f(row, v);
      }
      convex = convex && total == 1;
    }
    if (!convex || first < 0) continue;
    Eigen::VectorXd nu(size);
    for (Eigen::Index l = 0; l < size; ++l) nu(l) = to_double(f.row(first).dot(points[static_cast<std::size_t>(l)]));
    model.preparations.emplace(cls, Distribution(std::move(nu)));
  }
  return model;
}

}  // namespace

Certificate pointwise_feasibility(const ConstraintSystem& sys) {
  if (sys.variable_count() == 0) throw ValidationError("degenerate constraint system: no variables");
  if (sys.disjoint_pairs().size() > kMaxDisjointPairs)
    throw EnumerationBoundError("more than 20 disjoint pairs; zero-pattern enumeration refused");

  Certificate cert;
  cert.kind = "pointwise";
  cert.system = sys;

  const std::size_t patterns = std::size_t{1} << sys.disjoint_pairs().size();
  std::vector<RationalVector> all_rays;
  bool every_pattern_zero = true;
  for (std::size_t idx = 0; idx < patterns; ++idx) {
    const auto zeroed = zero_pattern(sys, idx);
    CaseRow row;
    row.pattern = pattern_names(sys, idx);
    row.rays = extreme_rays(sys, zeroed);
    if (row.rays.empty()) {
      row.conclusion = CaseConclusion::AllZero;
      auto [steps, complete] = derive_all_zero(sys, zeroed);
      row.derivation = std::move(steps);
      if (!complete) {
        row.derivation.push_back(
            "remaining equalities admit no nonzero nonnegative solution (exact null-space analysis)");
      }
    } else {
      every_pattern_zero = false;
      row.conclusion = CaseConclusion::Rays;
      row.derivation.push_back("cone generated by " + std::to_string(row.rays.size()) + " extreme ray(s)");
      for (const auto& r : row.rays)
        if (std::none_of(all_rays.begin(), all_rays.end(), [&](const RationalVector& s) { return s == r; }))
          all_rays.push_back(r);
    }
    cert.cases.push_back(std::move(row));
  }

  const auto n = static_cast<Eigen::Index>(sys.variable_count());
  std::optional<RationalVector> weights;
  if (!all_rays.empty()) {
    RationalMatrix r(n, static_cast<Eigen::Index>(all_rays.size()));
    for (std::size_t j = 0; j < all_rays.size(); ++j) r.col(static_cast<Eigen::Index>(j)) = all_rays[j];
    weights = nonnegative_solution(r, RationalVector::Constant(n, Rational(1)));
  }

  if (weights) {
    cert.verdict = Verdict::Feasible;
    cert.witness = build_witness(sys, all_rays, *weights);
    cert.notes.push_back("normalization met with " + std::to_string(cert.witness->ontic_size) +
                         " ontic state(s), one per extreme ray used");
  } else {
    cert.verdict = Verdict::Infeasible;
    cert.notes.push_back(every_pattern_zero
                             ? "every zero pattern forces the all-zero solution, so no variable can be normalized"
                             : "no nonnegative combination of the extreme rays gives every variable total weight 1");
  }
  return cert;
}

bool verify_witness(const ConstraintSystem& sys, const OntModel& witness, double tol) {
  try {
    witness.validate();
    for (const auto& v : sys.variables()) (void)witness.preparation(v);
  } catch (const std::exception&) {
    return false;
  }
  for (const auto& [x, y] : sys.disjoint_pairs())
    if (!disjoint(witness.preparation(x), witness.preparation(y), tol)) return false;

  const RationalMatrix f = sys.form_matrix();
  Eigen::MatrixXd fd(f.rows(), f.cols());
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    for (Eigen::Index j = 0; j < f.cols(); ++j) fd(i, j) = to_double(f(i, j));
  Eigen::MatrixXd values(static_cast<Eigen::Index>(sys.variable_count()), witness.ontic_size);
  for (std::size_t v = 0; v < sys.variable_count(); ++v)
    values.row(static_cast<Eigen::Index>(v)) = witness.preparation(sys.variables()[v]).weights().transpose();
  const Eigen::MatrixXd form_values = fd * values;
  for (const auto& cls : sys.classes()) {
    Eigen::Index first = -1;
    for (std::size_t r = 0; r < sys.equality_groups().size(); ++r) {
      if (sys.equality_groups()[r].equivalence_class != cls) continue;
      const auto row = static_cast<Eigen::Index>(r);
      if (first < 0) first = row;
      else if ((form_values.row(row) - form_values.row(first)).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

bool verify_case(const ConstraintSystem& sys, const CaseRow& row) {
  const auto n = static_cast<Eigen::Index>(sys.variable_count());
  std::vector<bool> zeroed(sys.variable_count(), false);
  for (const auto& name : row.pattern) zeroed[sys.index_of(name)] = true;
  const RationalMatrix e = sys.equality_matrix();

  switch (row.conclusion) {
    case CaseConclusion::Rays:
      if (row.rays.empty()) return false;
      for (const auto& r : row.rays) {
        if (r.size() != n) return false;
        bool nonzero = false;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (r(i) < 0) return false;
          if (zeroed[static_cast<std::size_t>(i)] && r(i) != 0) return false;
          nonzero = nonzero || r(i) != 0;
        }
        if (!nonzero) return false;
        if (e.rows() > 0) {
          const RationalVector residual = e * r;
          for (Eigen::Index i = 0; i < residual.size(); ++i)
            if (residual(i) != 0) return false;
        }
      }
      return true;
    case CaseConclusion::AllZero: {
      Eigen::Index zero_count = 0;
      for (bool z : zeroed) zero_count += z ? 1 : 0;
      const Eigen::Index m = e.rows() + zero_count + 1;
      RationalMatrix a = RationalMatrix::Zero(m, n);
      RationalVector b = RationalVector::Zero(m);
      a.topRows(e.rows()) = e;
      Eigen::Index r = e.rows();
      for (Eigen::Index i = 0; i < n; ++i)
        if (zeroed[static_cast<std::size_t>(i)]) a(r++, i) = 1;
      a.row(r).setConstant(Rational(1));
      b(r) = 1;
      return !nonnegative_solution(a, b).has_value();
    }
    case CaseConclusion::Values:
      return false;
  }
  return false;
}

}  // namespace ncert
