#include "brute_force.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

using ncert::Rational;
using Row = std::vector<Rational>;

namespace {

/// Gauss-Jordan on [A | b]; drops zero rows. False if some row reads 0 = c
/// with c nonzero.
bool reduce(std::vector<Row>& m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational pivot = m[r][c];
    for (auto& x : m[r]) x /= pivot;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = 0; k <= cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i)
    if (m[i][cols] != 0) return false;
  m.resize(r);
  return true;
}

/// Solves the square system formed by columns `basis`; empty when singular.
std::vector<Rational> solve_basis(const std::vector<Row>& a, const std::vector<std::size_t>& basis) {
  const std::size_t n = basis.size();
  std::vector<Row> m(a.size(), Row(n + 1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) m[i][k] = a[i][basis[k]];
    m[i][n] = a[i].back();
  }
  if (!reduce(m, n) || m.size() != n) return {};
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

/// Is there y >= 0 with A y = b (b stored as the last entry of each row)?
bool nonnegative_feasible(std::vector<Row> a, std::size_t cols) {
  if (!reduce(a, cols)) return false;
  const std::size_t r = a.size();
  if (r == 0) return true;
  if (cols < r) return false;
  std::vector<bool> pick(cols, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(r), true);
  do {
    std::vector<std::size_t> basis;
    for (std::size_t c = 0; c < cols; ++c)
      if (pick[c]) basis.push_back(c);
    const auto x = solve_basis(a, basis);
    if (!x.empty() && std::all_of(x.begin(), x.end(), [](const Rational& v) { return v >= 0; })) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

/// Pairs form_k - form_0 for each class, as coefficient rows over variables.
std::vector<Row> class_differences(const ncert::ConstraintSystem& sys) {
  const std::size_t n = sys.variable_count();
  std::map<std::string, Row> first;
  std::vector<Row> rows;
  for (const auto& f : sys.equality_groups()) {
    Row coeffs(n, Rational(0));
    for (const auto& t : f.terms) coeffs[sys.index_of(t.variable)] += t.coefficient;
    auto it = first.find(f.equivalence_class);
    if (it == first.end()) {
      first.emplace(f.equivalence_class, coeffs);
      continue;
    }
    Row d(n);
    for (std::size_t v = 0; v < n; ++v) d[v] = coeffs[v] - it->second[v];
    rows.push_back(std::move(d));
  }
  return rows;
}

bool feasible_with(const ncert::ConstraintSystem& sys, const std::vector<std::vector<bool>>& zero_sets,
                   const std::vector<Row>& diffs) {
  const std::size_t n = sys.variable_count();
  // Column (point, variable) exists only where the variable is not zeroed.
  std::vector<std::pair<std::size_t, std::size_t>> columns;
  for (std::size_t l = 0; l < zero_sets.size(); ++l)
    for (std::size_t v = 0; v < n; ++v)
      if (!zero_sets[l][v]) columns.emplace_back(l, v);
  const std::size_t cols = columns.size();

  std::vector<Row> a;
  for (std::size_t l = 0; l < zero_sets.size(); ++l) {
    for (const auto& d : diffs) {
      Row row(cols + 1, Rational(0));
      for (std::size_t c = 0; c < cols; ++c)
        if (columns[c].first == l) row[c] = d[columns[c].second];
      a.push_back(std::move(row));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    Row row(cols + 1, Rational(0));
    for (std::size_t c = 0; c < cols; ++c)
      if (columns[c].second == v) row[c] = 1;
    row[cols] = 1;
    a.push_back(std::move(row));
  }
  return nonnegative_feasible(std::move(a), cols);
}

}  // namespace

bool brute_force_feasible(const ncert::ConstraintSystem& sys, int max_points) {
  const std::size_t n = sys.variable_count();
  const auto& pairs = sys.disjoint_pairs();

  // Every way to zero one member of each pair.
  std::vector<std::vector<bool>> patterns;
  std::vector<std::size_t> choice(pairs.size(), 0);
  while (true) {
    std::vector<bool> z(n, false);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      z[sys.index_of(choice[i] ? pairs[i].second : pairs[i].first)] = true;
    if (std::find(patterns.begin(), patterns.end(), z) == patterns.end()) patterns.push_back(std::move(z));
    std::size_t i = 0;
    while (i < choice.size() && choice[i] == 1) choice[i++] = 0;
    if (i == choice.size()) break;
    choice[i] = 1;
  }

  const auto diffs = class_differences(sys);
  // Points are interchangeable, so nondecreasing pattern sequences suffice.
  for (int size = 1; size <= max_points; ++size) {
    std::vector<std::size_t> seq(static_cast<std::size_t>(size), 0);
    while (true) {
      std::vector<std::vector<bool>> zero_sets;
      for (auto k : seq) zero_sets.push_back(patterns[k]);
      if (feasible_with(sys, zero_sets, diffs)) return true;
      int i = size - 1;
      while (i >= 0 && seq[static_cast<std::size_t>(i)] == patterns.size() - 1) --i;
      if (i < 0) break;
      const std::size_t next = seq[static_cast<std::size_t>(i)] + 1;
      for (auto k = static_cast<std::size_t>(i); k < seq.size(); ++k) seq[k] = next;
    }
  }
  return false;
}

}  // namespace oracle
