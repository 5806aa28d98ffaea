#pragma once

/**
 * @file echelon.hpp
 * @brief Canonical reduced row echelon form, with a dense and a sparse kernel.
 *
 * Both kernels return the same canonical RREF: nonzero rows only, leading
 * entries equal to one, pivot columns cleared in every other row. Which one
 * runs is decided by the input density against a tunable threshold; the
 * result never depends on the choice.
 */

#include <atomic>
#include <map>
#include <utility>
#include <vector>

#include "kb/linalg/matrix.hpp"

namespace kb {

struct LinalgConfig {
  /// Inputs with density strictly below this use the sparse kernel.
  static std::atomic<double>& sparse_density_threshold() {
    static std::atomic<double> t{0.25};
    return t;
  }
};

template <FieldScalar K>
struct Echelon {
  Matrix<K> rows;                    // rank x cols, canonical RREF
  std::vector<std::size_t> pivots;   // pivot column of each row, increasing

  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

template <FieldScalar K>
Echelon<K> rref_dense(Matrix<K> m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m(p, c).is_zero()) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
    K inv = m(r, c).inverse();
    for (std::size_t j = c; j < C; ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < C; ++j)
        if (!m(r, j).is_zero()) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<K> out(r, C);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = m(i, j);
  return {std::move(out), std::move(pivots)};
}

template <FieldScalar K>
using SparseRow = std::vector<std::pair<std::size_t, K>>;

// a - f*b on sorted sparse rows
template <FieldScalar K>
SparseRow<K> sparse_axpy(const SparseRow<K>& a, const K& f, const SparseRow<K>& b) {
  SparseRow<K> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(f * b[j].second));
      ++j;
    } else {
      K v = a[i].second - f * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <FieldScalar K>
Echelon<K> rref_sparse(const Matrix<K>& m) {
  const std::size_t C = m.cols();
  std::map<std::size_t, SparseRow<K>> pivot_rows;  // pivot column -> normalized row
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseRow<K> row;
    for (std::size_t j = 0; j < C; ++j)
      if (!m(i, j).is_zero()) row.emplace_back(j, m(i, j));
    while (!row.empty()) {
      auto it = pivot_rows.find(row.front().first);
      if (it == pivot_rows.end()) break;
      K f = row.front().second;
      row = sparse_axpy(row, f, it->second);
    }
    if (row.empty()) continue;
    K inv = row.front().second.inverse();
    for (auto& e : row) e.second = e.second * inv;
    pivot_rows.emplace(row.front().first, std::move(row));
  }
  // back substitution, highest pivot first
  for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
    const std::size_t pc = it->first;
    for (auto& [c, row] : pivot_rows) {
      if (c >= pc) break;
      auto hit = std::lower_bound(row.begin(), row.end(), pc,
                                  [](const auto& e, std::size_t col) { return e.first < col; });
      if (hit == row.end() || hit->first != pc) continue;
      K f = hit->second;
      row = sparse_axpy(row, f, it->second);
    }
  }
  Echelon<K> out{Matrix<K>(pivot_rows.size(), C), {}};
  std::size_t r = 0;
  for (const auto& [c, row] : pivot_rows) {
    out.pivots.push_back(c);
    for (const auto& [j, v] : row) out.rows(r, j) = v;
    ++r;
  }
  return out;
}

}  // namespace detail

/// Canonical RREF of `m`; kernel chosen by density.
template <FieldScalar K>
Echelon<K> rref(const Matrix<K>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {Matrix<K>(0, m.cols()), {}};
  if (m.density() < LinalgConfig::sparse_density_threshold().load()) return detail::rref_sparse(m);
  return detail::rref_dense(m);
}

template <FieldScalar K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank();
}

}  // namespace kb
