#include "bethe/linalg.h"

#include <stdexcept>

namespace bethe {

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  auto a = m;
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

RationalMatrix matrix_product(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix out(n, std::vector<Rational>(b.at(0).size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

RationalMatrix matrix_inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rational> e(n);
    e[c] = Rational(1);
    auto sol = solve_linear(m, e);
    if (!sol || !sol->unique) throw std::domain_error("matrix is singular");
    for (std::size_t r = 0; r < n; ++r) out[r][c] = sol->x[r];
  }
  return out;
}

std::optional<LinearSolution> solve_linear(const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  RationalMatrix m = a;
  for (std::size_t r = 0; r < rows; ++r) m[r].push_back(b.at(r));
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && m[p][col].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const Rational inv = m[row][col].inverse();
    for (std::size_t c = col; c <= cols; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c <= cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (!m[r][cols].is_zero()) return std::nullopt;
  }
  LinearSolution sol;
  sol.x.assign(cols, Rational());
  for (std::size_t k = 0; k < pivots.size(); ++k) sol.x[pivots[k]] = m[k][cols];
  sol.rank = static_cast<int>(pivots.size());
  sol.unique = sol.rank == static_cast<int>(cols);
  return sol;
}

}  // namespace bethe
