// Kuhn-Munkres with exact rational potentials.

#include "fairdiv/matching.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairdiv {

namespace {

// Maximum weight of a matching covering all `rows` inside `cols`
// (rows.size() <= cols.size()). Returns the row -> column-slot assignment.
Rational assignment_max(const WeightMatrix& w, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols, std::size_t real_cols,
                        std::vector<std::size_t>* slot_of_row = nullptr) {
  const std::size_t n = rows.size(), m = cols.size();
  if (n == 0) return Rational(0);
  auto cost = [&](std::size_t r, std::size_t c) -> Rational {
    const std::size_t col = cols[c - 1];
    return col < real_cols ? -w[rows[r - 1]][col] : Rational(0);
  };
  std::vector<Rational> u(n + 1), v(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<Rational> minv(m + 1);
    std::vector<bool> finite(m + 1, false), used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      Rational delta;
      bool have_delta = false;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const Rational cur = cost(i0, j) - u[i0] - v[j];
        if (!finite[j] || cur < minv[j]) {
          minv[j] = cur;
          finite[j] = true;
          way[j] = j0;
        }
        if (!have_delta || minv[j] < delta) {
          delta = minv[j];
          have_delta = true;
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Rational total;
  if (slot_of_row) slot_of_row->assign(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    total -= cost(p[j], j);
    if (slot_of_row) (*slot_of_row)[p[j] - 1] = j - 1;
  }
  return total;
}

}  // namespace

Matching max_weight_left_perfect_matching(const WeightMatrix& w) {
  const std::size_t n = w.size();
  const std::size_t m = n == 0 ? 0 : w[0].size();
  for (const auto& row : w) {
    if (row.size() != m) throw std::invalid_argument("weight matrix rows differ in length");
    for (const auto& x : row)
      if (x.is_negative()) throw std::invalid_argument("negative matching weight");
  }
  const std::size_t width = std::max(n, m);
  std::vector<std::size_t> rows(n), cols(width);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  for (std::size_t c = 0; c < width; ++c) cols[c] = c;

  Matching out;
  out.weight = assignment_max(w, rows, cols, m);
  out.assignment.assign(n, std::nullopt);

  // Fix agents one at a time to the smallest column that keeps the optimum.
  Rational need = out.weight;
  std::vector<std::size_t> free_cols = cols;
  for (std::size_t r = 0; r < n; ++r) {
    const std::vector<std::size_t> rest_rows(rows.begin() + static_cast<long>(r) + 1, rows.end());
    bool fixed = false;
    for (std::size_t k = 0; k < free_cols.size() && !fixed; ++k) {
      const std::size_t c = free_cols[k];
      const Rational here = c < m ? w[r][c] : Rational(0);
      std::vector<std::size_t> rest_cols = free_cols;
      rest_cols.erase(rest_cols.begin() + static_cast<long>(k));
      if (here + assignment_max(w, rest_rows, rest_cols, m) == need) {
        if (c < m) out.assignment[r] = c;
        need -= here;
        free_cols = std::move(rest_cols);
        fixed = true;
      }
    }
    if (!fixed) throw std::logic_error("matching canonicalization lost the optimum");
  }
  return out;
}

WeightMatrix singleton_weights(const Instance& inst) {
  WeightMatrix w(inst.n(), std::vector<Rational>(inst.m()));
  for (Agent i = 0; i < inst.n(); ++i) {
    const auto& v = inst.valuation(i);
    for (Good g = 0; g < inst.m(); ++g) w[i][g] = v.is_additive() ? v.good_value(g) : v.value(Bundle{g});
  }
  return w;
}

}  // namespace fairdiv
