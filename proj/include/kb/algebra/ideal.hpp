#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kb/algebra/algebra.hpp"

namespace kb {

template <FieldScalar K>
struct TwoSidedIdeal {
  AlgebraPtr<K> algebra;
  Subspace<K> space;

  std::size_t dim() const { return space.dim(); }
  friend bool operator==(const TwoSidedIdeal& a, const TwoSidedIdeal& b) { return a.space == b.space; }
};

/// Smallest two-sided ideal containing the span of `gens`.
template <FieldScalar K>
TwoSidedIdeal<K> ideal_closure(const AlgebraPtr<K>& r, const std::vector<Vec<K>>& gens) {
  const std::size_t n = r->dim();
  Subspace<K> cur = Subspace<K>::span(n, gens);
  while (true) {
    std::vector<Vec<K>> more = cur.basis_vectors();
    for (const auto& v : cur.basis_vectors())
      for (std::size_t b = 0; b < n; ++b) {
        more.push_back(r->mul(r->basis_element(b), v));
        more.push_back(r->mul(v, r->basis_element(b)));
      }
    Subspace<K> next = Subspace<K>::span(n, more);
    if (next.dim() == cur.dim()) return {r, std::move(cur)};
    cur = std::move(next);
  }
}

/// Wraps a subspace that must already be a two-sided ideal.
template <FieldScalar K>
TwoSidedIdeal<K> make_ideal(const AlgebraPtr<K>& r, Subspace<K> space) {
  if (space.ambient() != r->dim()) throw ShapeError("ideal ambient dimension mismatch");
  for (const auto& v : space.basis_vectors())
    for (std::size_t b = 0; b < r->dim(); ++b)
      if (!space.contains(r->mul(r->basis_element(b), v)) || !space.contains(r->mul(v, r->basis_element(b))))
        throw ValidationError("subspace is not closed under multiplication by " + r->names()[b]);
  return {r, std::move(space)};
}

template <FieldScalar K>
TwoSidedIdeal<K> zero_ideal(const AlgebraPtr<K>& r) {
  return {r, Subspace<K>(r->dim())};
}

template <FieldScalar K>
TwoSidedIdeal<K> whole_ideal(const AlgebraPtr<K>& r) {
  return {r, Subspace<K>::whole(r->dim())};
}

/// a*b = span of pairwise products (already a two-sided ideal).
template <FieldScalar K>
TwoSidedIdeal<K> ideal_product(const TwoSidedIdeal<K>& a, const TwoSidedIdeal<K>& b) {
  std::vector<Vec<K>> prods;
  for (const auto& x : a.space.basis_vectors())
    for (const auto& y : b.space.basis_vectors()) prods.push_back(a.algebra->mul(x, y));
  return ideal_closure(a.algebra, prods);
}

template <FieldScalar K>
TwoSidedIdeal<K> ideal_square(const TwoSidedIdeal<K>& a) {
  return ideal_product(a, a);
}

template <FieldScalar K>
bool is_idempotent(const TwoSidedIdeal<K>& a) {
  return ideal_square(a).space == a.space;
}

/// R e R for an idempotent element e.
template <FieldScalar K>
TwoSidedIdeal<K> generated_by(const AlgebraPtr<K>& r, const Vec<K>& e) {
  if (!r->is_idempotent(e)) throw ValidationError("generated_by: element is not idempotent");
  std::vector<Vec<K>> gens;
  for (std::size_t i = 0; i < r->dim(); ++i)
    for (std::size_t j = 0; j < r->dim(); ++j) gens.push_back(r->mul(r->basis_element(i), e, r->basis_element(j)));
  return {r, Subspace<K>::span(r->dim(), gens)};
}

/// Throws unless the characteristic makes trace-form arguments sound for this dimension.
template <FieldScalar K>
void require_trace_characteristic(const Algebra<K>& r) {
  auto p = r.field().characteristic();
  if (p != 0 && p <= r.dim())
    throw CharacteristicError("trace-form radical needs characteristic 0 or > dim (" + std::to_string(r.dim()) +
                              "), got " + std::to_string(p));
}

/**
 * Jacobson radical as the kernel of the trace form (x, y) -> tr(L_{xy}).
 * Valid in characteristic 0 or p > dim R; the result is checked nilpotent.
 */
template <FieldScalar K>
TwoSidedIdeal<K> radical(const AlgebraPtr<K>& r) {
  require_trace_characteristic(*r);
  const std::size_t n = r->dim();
  Matrix<K> gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<K> l = r->left_mult(r->product(i, j));
      K tr(0);
      for (std::size_t k = 0; k < n; ++k) tr += l(k, k);
      gram(i, j) = tr;
    }
  TwoSidedIdeal<K> rad = make_ideal(r, kernel(gram.transpose()));
  TwoSidedIdeal<K> power = rad;
  for (std::size_t k = 0; k <= n && !power.space.is_zero(); ++k) power = ideal_product(power, rad);
  if (!power.space.is_zero()) throw std::logic_error("trace-form kernel is not nilpotent");
  return rad;
}

/// Nilpotency index: least k with a^k = 0, or 0 when a is not nilpotent.
template <FieldScalar K>
std::size_t nilpotency_index(const TwoSidedIdeal<K>& a) {
  if (a.space.is_zero()) return 1;
  TwoSidedIdeal<K> power = a;
  for (std::size_t k = 1; k <= a.algebra->dim() + 1; ++k) {
    if (power.space.is_zero()) return k;
    power = ideal_product(power, a);
  }
  return 0;
}

template <FieldScalar K>
struct QuotientAlgebra {
  AlgebraPtr<K> algebra;  // R/a
  RingMap<K> projection;  // R -> R/a
  std::vector<std::size_t> kept_basis;  // R basis index behind each quotient basis element
  std::vector<std::size_t> kept_idempotents;  // R idempotent index behind each quotient idempotent
};

/**
 * R/a. The quotient basis is the images of the R basis elements that are not
 * pivot columns of a's echelon basis, in order, keeping their names. Zero
 * images of idempotents are dropped from the idempotent list.
 */
template <FieldScalar K>
QuotientAlgebra<K> quotient_algebra(const TwoSidedIdeal<K>& a) {
  const auto& r = a.algebra;
  const std::size_t n = r->dim();
  std::vector<bool> pivot(n, false);
  for (auto p : a.space.pivots()) pivot[p] = true;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (!pivot[i]) kept.push_back(i);
  if (kept.empty()) throw ValidationError("quotient by the whole algebra is the zero ring");
  const std::size_t m = kept.size();
  auto project = [&](const Vec<K>& x) {
    Vec<K> red = a.space.reduce(x);
    Vec<K> out;
    out.reserve(m);
    for (auto k : kept) out.push_back(red[k]);
    return out;
  };
  AlgebraData<K> d;
  d.field = r->field();
  d.primitive = r->primitive_claimed();
  for (auto k : kept) d.names.push_back(r->names()[k]);
  d.table.assign(m, std::vector<Vec<K>>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) d.table[i][j] = project(r->product(kept[i], kept[j]));
  d.unit = project(r->unit());
  std::vector<std::size_t> kept_idem;
  for (std::size_t i = 0; i < r->num_idempotents(); ++i) {
    Vec<K> e = project(r->idempotent(i));
    if (is_zero_vec<K>(e)) continue;
    d.idempotents.push_back(std::move(e));
    kept_idem.push_back(i);
  }
  auto s = Algebra<K>::validate(std::move(d));
  std::vector<Vec<K>> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(project(r->basis_element(i)));
  auto proj = RingMap<K>::validate(r, s, Matrix<K>::from_columns(m, cols));
  return {s, std::move(proj), std::move(kept), std::move(kept_idem)};
}

}  // namespace kb
