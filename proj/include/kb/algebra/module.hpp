#pragma once

/**
 * @file module.hpp
 * @brief Finite-dimensional right modules.
 *
 * A right R-module of dimension d is a list of d x d matrices A_q, one per
 * basis element b_q of R, acting on column vectors: v . b_q = A_q v.
 */

#include <string>
#include <utility>
#include <vector>

#include "kb/algebra/ideal.hpp"

namespace kb {

template <FieldScalar K>
class Module {
 public:
  Module() = default;

  static Module validate(AlgebraPtr<K> r, std::size_t dim, std::vector<Matrix<K>> action) {
    Module m(std::move(r), dim, std::move(action));
    m.check();
    return m;
  }

  /// R as a right module over itself.
  static Module regular(const AlgebraPtr<K>& r) {
    std::vector<Matrix<K>> act;
    for (std::size_t q = 0; q < r->dim(); ++q) act.push_back(r->right_mult(r->basis_element(q)));
    return Module(r, r->dim(), std::move(act));
  }

  static Module zero(const AlgebraPtr<K>& r) { return Module(r, 0, std::vector<Matrix<K>>(r->dim(), Matrix<K>(0, 0))); }

  const AlgebraPtr<K>& algebra() const { return alg_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix<K>>& action() const { return action_; }
  const Matrix<K>& action(std::size_t q) const { return action_[q]; }

  /// Matrix of v -> v . r
  Matrix<K> act_matrix(const Vec<K>& r) const {
    Matrix<K> m(dim_, dim_);
    for (std::size_t q = 0; q < r.size(); ++q) {
      if (r[q].is_zero()) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
          if (!action_[q](i, j).is_zero()) m(i, j) += r[q] * action_[q](i, j);
    }
    return m;
  }
  Vec<K> act(const Vec<K>& v, const Vec<K>& r) const { return act_matrix(r).apply(v); }

  Vec<K> basis_vector(std::size_t i) const {
    Vec<K> v = zero_vec<K>(dim_);
    v[i] = K(1);
    return v;
  }

  /// Invariant check: A_q A_p = sum_l c[p][q][l] A_l, unit acts as identity.
  void check() const {
    const auto& r = *alg_;
    if (action_.size() != r.dim()) throw ValidationError("module action has wrong number of matrices");
    for (const auto& a : action_)
      if (a.rows() != dim_ || a.cols() != dim_) throw ValidationError("module action matrix has wrong shape");
    for (std::size_t p = 0; p < r.dim(); ++p)
      for (std::size_t q = 0; q < r.dim(); ++q)
        if (action_[q] * action_[p] != act_matrix(r.product(p, q)))
          throw ValidationError("module action does not respect (" + r.names()[p] + "," + r.names()[q] + ")");
    if (act_matrix(r.unit()) != Matrix<K>::identity(dim_)) throw ValidationError("unit does not act as identity");
  }

 private:
  Module(AlgebraPtr<K> r, std::size_t dim, std::vector<Matrix<K>> action)
      : alg_(std::move(r)), dim_(dim), action_(std::move(action)) {}

  AlgebraPtr<K> alg_;
  std::size_t dim_ = 0;
  std::vector<Matrix<K>> action_;
};

/// A submodule or quotient together with its structure map.
template <FieldScalar K>
struct SubModule {
  Module<K> module;
  Matrix<K> inclusion;  // ambient_dim x dim
  Subspace<K> space;
};

template <FieldScalar K>
struct QuotientModule {
  Module<K> module;
  Matrix<K> projection;  // dim x ambient_dim
};

/// Right-module closure of span(gens) inside M.
template <FieldScalar K>
Subspace<K> submodule_closure(const Module<K>& m, const std::vector<Vec<K>>& gens) {
  Subspace<K> cur = Subspace<K>::span(m.dim(), gens);
  while (true) {
    std::vector<Vec<K>> more = cur.basis_vectors();
    for (const auto& v : cur.basis_vectors())
      for (const auto& a : m.action()) more.push_back(a.apply(v));
    Subspace<K> next = Subspace<K>::span(m.dim(), more);
    if (next.dim() == cur.dim()) return cur;
    cur = std::move(next);
  }
}

template <FieldScalar K>
SubModule<K> submodule(const Module<K>& m, Subspace<K> u) {
  if (u.ambient() != m.dim()) throw ShapeError("submodule ambient mismatch");
  std::vector<Matrix<K>> act;
  for (const auto& a : m.action()) {
    std::vector<Vec<K>> cols;
    for (const auto& v : u.basis_vectors()) {
      auto c = u.coords(a.apply(v));
      if (!c) throw ValidationError("subspace is not a submodule");
      cols.push_back(std::move(*c));
    }
    act.push_back(Matrix<K>::from_columns(u.dim(), cols));
  }
  Matrix<K> inc = Matrix<K>::from_columns(m.dim(), u.basis_vectors());
  return {Module<K>::validate(m.algebra(), u.dim(), std::move(act)), std::move(inc), std::move(u)};
}

template <FieldScalar K>
QuotientModule<K> quotient_module(const Module<K>& m, const Subspace<K>& u) {
  QuotientCoords<K> q(Subspace<K>::whole(m.dim()), u);
  std::vector<Matrix<K>> act;
  for (const auto& a : m.action()) {
    std::vector<Vec<K>> cols;
    for (std::size_t i = 0; i < q.dim(); ++i) {
      cols.push_back(q.coords(a.apply(q.representative(i))));
    }
    act.push_back(Matrix<K>::from_columns(q.dim(), cols));
  }
  std::vector<Vec<K>> pcols;
  for (std::size_t j = 0; j < m.dim(); ++j) pcols.push_back(q.coords(m.basis_vector(j)));
  return {Module<K>::validate(m.algebra(), q.dim(), std::move(act)), Matrix<K>::from_columns(q.dim(), pcols)};
}

template <FieldScalar K>
Module<K> direct_sum(const Module<K>& a, const Module<K>& b) {
  std::vector<Matrix<K>> act;
  const std::size_t d = a.dim() + b.dim();
  for (std::size_t q = 0; q < a.action().size(); ++q) {
    Matrix<K> m(d, d);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a.action(q)(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b.action(q)(i, j);
    act.push_back(std::move(m));
  }
  return Module<K>::validate(a.algebra(), d, std::move(act));
}

/// e_i R as a module, with basis the echelon basis of e_i R inside R.
template <FieldScalar K>
Module<K> indecomposable_projective(const AlgebraPtr<K>& r, std::size_t i) {
  return submodule(Module<K>::regular(r), r->right_ideal(i)).module;
}

/// M . a, the span of m . x for m in M and x in a.
template <FieldScalar K>
Subspace<K> product_submodule(const Module<K>& m, const Subspace<K>& a) {
  std::vector<Vec<K>> gens;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (const auto& x : a.basis_vectors()) gens.push_back(m.act(m.basis_vector(i), x));
  return Subspace<K>::span(m.dim(), gens);
}

/// {m : m . x = 0 for all x in a}
template <FieldScalar K>
Subspace<K> annihilated_by(const Module<K>& m, const Subspace<K>& a) {
  Matrix<K> stacked(0, m.dim());
  for (const auto& x : a.basis_vectors()) stacked = Matrix<K>::vstack(stacked, m.act_matrix(x));
  if (stacked.rows() == 0) return Subspace<K>::whole(m.dim());
  return kernel(stacked);
}

template <FieldScalar K>
bool annihilated_by_ideal(const Module<K>& m, const Subspace<K>& a) {
  return product_submodule(m, a).is_zero();
}

/// Matrix f: M -> N is R-linear iff f A^M_q = A^N_q f for all q.
template <FieldScalar K>
bool is_module_map(const Module<K>& m, const Module<K>& n, const Matrix<K>& f) {
  for (std::size_t q = 0; q < m.action().size(); ++q)
    if (f * m.action(q) != n.action(q) * f) return false;
  return true;
}

/// Hom_R(M, N) as a subspace of (dim N x dim M) matrices, flattened row-major.
template <FieldScalar K>
Subspace<K> hom_modules(const Module<K>& m, const Module<K>& n) {
  const std::size_t dm = m.dim(), dn = n.dim(), unknowns = dm * dn;
  if (unknowns == 0) return Subspace<K>(0);
  Matrix<K> sys(0, unknowns);
  for (std::size_t q = 0; q < m.action().size(); ++q) {
    // (f A - B f)_{ij} = sum_k f_ik A_kj - sum_k B_ik f_kj
    Matrix<K> block(dn * dm, unknowns);
    const auto& a = m.action(q);
    const auto& b = n.action(q);
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dm; ++j) {
        std::size_t row = i * dm + j;
        for (std::size_t k = 0; k < dm; ++k)
          if (!a(k, j).is_zero()) block(row, i * dm + k) += a(k, j);
        for (std::size_t k = 0; k < dn; ++k)
          if (!b(i, k).is_zero()) block(row, k * dm + j) -= b(i, k);
      }
    sys = Matrix<K>::vstack(sys, block);
  }
  return kernel(sys);
}

template <FieldScalar K>
std::size_t hom_dim(const Module<K>& m, const Module<K>& n) {
  return hom_modules(m, n).dim();
}

/// Restriction of scalars along f: R -> S turns a right S-module into a right R-module.
template <FieldScalar K>
Module<K> restrict_along(const Module<K>& m, const RingMap<K>& f) {
  if (m.algebra() != f.target()) throw ShapeError("restrict_along: module is not over the target of the ring map");
  std::vector<Matrix<K>> act;
  for (std::size_t q = 0; q < f.source()->dim(); ++q) act.push_back(m.act_matrix(f.image(q)));
  return Module<K>::validate(f.source(), m.dim(), std::move(act));
}

/// Short exact sequence 0 -> A -i-> B -p-> C -> 0 of right modules.
template <FieldScalar K>
struct ShortExact {
  Module<K> sub, middle, quotient;
  Matrix<K> inclusion, projection;

  bool verify() const {
    if (!is_module_map(sub, middle, inclusion) || !is_module_map(middle, quotient, projection)) return false;
    if (!(projection * inclusion).is_zero()) return false;
    return rank(inclusion) == sub.dim() && rank(projection) == quotient.dim() &&
           sub.dim() + quotient.dim() == middle.dim();
  }
};

/// 0 -> U -> M -> M/U -> 0 for a submodule U.
template <FieldScalar K>
ShortExact<K> short_exact_from(const Module<K>& m, const Subspace<K>& u) {
  auto s = submodule(m, u);
  auto q = quotient_module(m, u);
  return {s.module, m, q.module, s.inclusion, q.projection};
}

}  // namespace kb
