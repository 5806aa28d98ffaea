#pragma once

// Small algebras and modules shared by the unit tests, built directly from
// structure constants rather than through the fixture loader.

#include <string>
#include <tuple>
#include <vector>

#include "kb/algebra/bimodule.hpp"
#include "kb/algebra/cover.hpp"
#include "kb/linalg/fp.hpp"
#include "kb/linalg/rational.hpp"

namespace kbt {

using kb::AlgebraPtr;
using kb::FieldSpec;
using kb::Matrix;
using kb::Vec;

template <class K>
K num(long v, const FieldSpec& f) {
  return kb::ScalarTraits<K>::from_int(v, f);
}

template <class K>
Vec<K> vec(std::initializer_list<long> xs, const FieldSpec& f) {
  Vec<K> v;
  for (long x : xs) v.push_back(num<K>(x, f));
  return v;
}

/// products: (i, j, l) meaning b_i b_j = b_l; all other products vanish.
template <class K>
AlgebraPtr<K> make_algebra(const FieldSpec& f, std::vector<std::string> names,
                           const std::vector<std::tuple<int, int, int>>& products, const std::vector<Vec<K>>& idempotents) {
  const std::size_t n = names.size();
  kb::AlgebraData<K> d;
  d.field = f;
  d.names = std::move(names);
  d.table.assign(n, std::vector<Vec<K>>(n, Vec<K>(n, num<K>(0, f))));
  for (auto [i, j, l] : products) d.table[i][j][l] = num<K>(1, f);
  d.idempotents = idempotents;
  d.primitive = true;
  d.unit = Vec<K>(n, num<K>(0, f));
  for (const auto& e : idempotents) d.unit = kb::add(d.unit, e);
  return kb::Algebra<K>::validate(std::move(d));
}

/// Upper triangular 2x2 matrices, basis e11, e12, e22, idempotents e11, e22.
template <class K>
AlgebraPtr<K> ut2(const FieldSpec& f = {}) {
  return make_algebra<K>(f, {"e11", "e12", "e22"}, {{0, 0, 0}, {0, 1, 1}, {1, 2, 1}, {2, 2, 2}},
                         {vec<K>({1, 0, 0}, f), vec<K>({0, 0, 1}, f)});
}

/// k x k with basis the two coordinate idempotents.
template <class K>
AlgebraPtr<K> kxk(const FieldSpec& f = {}) {
  return make_algebra<K>(f, {"u", "v"}, {{0, 0, 0}, {1, 1, 1}}, {vec<K>({1, 0}, f), vec<K>({0, 1}, f)});
}

/// k[x]/(x^2), basis 1, x.
template <class K>
AlgebraPtr<K> dual_numbers(const FieldSpec& f = {}) {
  return make_algebra<K>(f, {"1", "x"}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}}, {vec<K>({1, 0}, f)});
}

/// k x k -> UT2, (x, y) -> diag(x, y).
template <class K>
kb::RingMap<K> diag_map(const AlgebraPtr<K>& b, const AlgebraPtr<K>& a) {
  const auto& f = a->field();
  return kb::RingMap<K>::validate(b, a, Matrix<K>::from_columns(3, {vec<K>({1, 0, 0}, f), vec<K>({0, 0, 1}, f)}));
}

/// UT2 -> UT2/span{e12, e22}.
template <class K>
kb::QuotientAlgebra<K> corner_quotient(const AlgebraPtr<K>& r) {
  const auto& f = r->field();
  auto a = kb::make_ideal(r, kb::Subspace<K>::span(3, {vec<K>({0, 1, 0}, f), vec<K>({0, 0, 1}, f)}));
  return kb::quotient_algebra(a);
}

/// Simple modules of UT2: S1 = top of P1 (e11 acts by 1), S2 = P2.
template <class K>
kb::Module<K> ut2_simple(const AlgebraPtr<K>& r, int which) {
  const auto& f = r->field();
  Matrix<K> one(1, 1, {num<K>(1, f)}), zero(1, 1, {num<K>(0, f)});
  if (which == 1) return kb::Module<K>::validate(r, 1, {one, zero, zero});
  return kb::Module<K>::validate(r, 1, {zero, zero, one});
}

}  // namespace kbt
