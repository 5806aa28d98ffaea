#pragma once

#include <optional>
#include <vector>

#include "kb/linalg/subspace.hpp"

namespace kb {

template <FieldScalar K>
struct SolveResult {
  std::optional<Matrix<K>> solution;  // x with A x = b, free variables set to zero
  Subspace<K> kernel;                 // all x with A x = 0
};

namespace detail {

template <FieldScalar K>
Subspace<K> kernel_from_echelon(const Echelon<K>& e, std::size_t n) {
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots)
    if (p < n) is_pivot[p] = true;
  std::vector<Vec<K>> gens;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v = zero_vec<K>(n);
    v[f] = K(1);
    for (std::size_t r = 0; r < e.rank(); ++r)
      if (e.pivots[r] < n) v[e.pivots[r]] = -e.rows(r, f);
    gens.push_back(std::move(v));
  }
  return Subspace<K>::span(n, gens);
}

}  // namespace detail

/// Null space of A as a subspace of K^cols.
template <FieldScalar K>
Subspace<K> kernel(const Matrix<K>& a) {
  return detail::kernel_from_echelon(rref(a), a.cols());
}

/// Column space of A as a subspace of K^rows.
template <FieldScalar K>
Subspace<K> image(const Matrix<K>& a) {
  return Subspace<K>::span(a.transpose());
}

/**
 * Solves A x = b exactly. `b` may have several columns; a solution is
 * returned only when every column is consistent.
 */
template <FieldScalar K>
SolveResult<K> solve(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw ShapeError("solve: A and b have different row counts");
  const std::size_t n = a.cols(), k = b.cols();
  auto e = rref(Matrix<K>::hstack(a, b));
  SolveResult<K> out{std::nullopt, detail::kernel_from_echelon(e, n)};
  for (auto p : e.pivots)
    if (p >= n) return out;
  Matrix<K> x(n, k);
  for (std::size_t r = 0; r < e.rank(); ++r)
    for (std::size_t j = 0; j < k; ++j) x(e.pivots[r], j) = e.rows(r, n + j);
  out.solution = std::move(x);
  return out;
}

/// Single right-hand side convenience form.
template <FieldScalar K>
std::optional<Vec<K>> solve_vec(const Matrix<K>& a, const Vec<K>& b) {
  auto r = solve(a, Matrix<K>::from_columns(a.rows(), {b}));
  if (!r.solution) return std::nullopt;
  return r.solution->col_vec(0);
}

}  // namespace kb
