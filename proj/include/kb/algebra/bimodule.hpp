#pragma once

/**
 * @file bimodule.hpp
 * @brief (R,S)-bimodules and tensor products over R.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kb/algebra/module.hpp"

namespace kb {

/// Left R-action matrices L_p (v -> b_p v) and right S-action matrices R_q (v -> v b_q).
template <FieldScalar K>
class Bimodule {
 public:
  Bimodule() = default;

  static Bimodule validate(AlgebraPtr<K> left, AlgebraPtr<K> right, std::size_t dim, std::vector<Matrix<K>> lact,
                           std::vector<Matrix<K>> ract) {
    Bimodule b(std::move(left), std::move(right), dim, std::move(lact), std::move(ract));
    b.check();
    return b;
  }

  /// R as an (R,R)-bimodule.
  static Bimodule regular(const AlgebraPtr<K>& r) {
    std::vector<Matrix<K>> l, rr;
    for (std::size_t q = 0; q < r->dim(); ++q) {
      l.push_back(r->left_mult(r->basis_element(q)));
      rr.push_back(r->right_mult(r->basis_element(q)));
    }
    return Bimodule(r, r, r->dim(), std::move(l), std::move(rr));
  }

  /// S as an (R,S)-bimodule via f: R -> S; tensoring with it is induction.
  static Bimodule induction(const RingMap<K>& f) {
    const auto& s = f.target();
    std::vector<Matrix<K>> l, rr;
    for (std::size_t p = 0; p < f.source()->dim(); ++p) l.push_back(s->left_mult(f.image(p)));
    for (std::size_t q = 0; q < s->dim(); ++q) rr.push_back(s->right_mult(s->basis_element(q)));
    return validate(f.source(), s, s->dim(), std::move(l), std::move(rr));
  }

  /// S as an (S,R)-bimodule via f: R -> S; tensoring with it is restriction of scalars.
  static Bimodule restriction(const RingMap<K>& f) {
    const auto& s = f.target();
    std::vector<Matrix<K>> l, rr;
    for (std::size_t p = 0; p < s->dim(); ++p) l.push_back(s->left_mult(s->basis_element(p)));
    for (std::size_t q = 0; q < f.source()->dim(); ++q) rr.push_back(s->right_mult(f.image(q)));
    return validate(s, f.source(), s->dim(), std::move(l), std::move(rr));
  }

  /// A two-sided ideal of R viewed as an (R,R)-sub-bimodule of R.
  static Bimodule of_ideal(const TwoSidedIdeal<K>& a) {
    const auto& r = a.algebra;
    std::vector<Matrix<K>> l, rr;
    auto restrict = [&](const Matrix<K>& m) {
      std::vector<Vec<K>> cols;
      for (const auto& v : a.space.basis_vectors()) cols.push_back(a.space.coords_unchecked(m.apply(v)));
      return Matrix<K>::from_columns(a.dim(), cols);
    };
    for (std::size_t q = 0; q < r->dim(); ++q) {
      l.push_back(restrict(r->left_mult(r->basis_element(q))));
      rr.push_back(restrict(r->right_mult(r->basis_element(q))));
    }
    return validate(r, r, a.dim(), std::move(l), std::move(rr));
  }

  const AlgebraPtr<K>& left_algebra() const { return left_; }
  const AlgebraPtr<K>& right_algebra() const { return right_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix<K>>& left_action() const { return lact_; }
  const std::vector<Matrix<K>>& right_action() const { return ract_; }

  Matrix<K> left_matrix(const Vec<K>& r) const { return combine(lact_, r); }
  Matrix<K> right_matrix(const Vec<K>& s) const { return combine(ract_, s); }
  Vec<K> left_act(const Vec<K>& r, const Vec<K>& v) const { return left_matrix(r).apply(v); }
  Vec<K> right_act(const Vec<K>& v, const Vec<K>& s) const { return right_matrix(s).apply(v); }

  Module<K> right_module() const { return Module<K>::validate(right_, dim_, ract_); }

  /// The left R-structure as a right module over the opposite algebra `r_op`.
  Module<K> left_module_over(const AlgebraPtr<K>& r_op) const {
    if (r_op->dim() != left_->dim()) throw ShapeError("opposite algebra has the wrong dimension");
    return Module<K>::validate(r_op, dim_, lact_);
  }

  void check() const {
    if (lact_.size() != left_->dim() || ract_.size() != right_->dim())
      throw ValidationError("bimodule action lists have wrong length");
    for (const auto& m : lact_)
      if (m.rows() != dim_ || m.cols() != dim_) throw ValidationError("left action matrix has wrong shape");
    for (const auto& m : ract_)
      if (m.rows() != dim_ || m.cols() != dim_) throw ValidationError("right action matrix has wrong shape");
    const auto& r = *left_;
    const auto& s = *right_;
    for (std::size_t p = 0; p < r.dim(); ++p)
      for (std::size_t q = 0; q < r.dim(); ++q)
        if (lact_[p] * lact_[q] != left_matrix(r.product(p, q)))
          throw ValidationError("left action does not respect (" + r.names()[p] + "," + r.names()[q] + ")");
    for (std::size_t p = 0; p < s.dim(); ++p)
      for (std::size_t q = 0; q < s.dim(); ++q)
        if (ract_[q] * ract_[p] != right_matrix(s.product(p, q)))
          throw ValidationError("right action does not respect (" + s.names()[p] + "," + s.names()[q] + ")");
    const auto id = Matrix<K>::identity(dim_);
    if (left_matrix(r.unit()) != id || right_matrix(s.unit()) != id)
      throw ValidationError("bimodule units do not act as identity");
    for (std::size_t p = 0; p < r.dim(); ++p)
      for (std::size_t q = 0; q < s.dim(); ++q)
        if (lact_[p] * ract_[q] != ract_[q] * lact_[p])
          throw ValidationError("left and right actions do not commute on (" + r.names()[p] + "," + s.names()[q] + ")");
  }

 private:
  Bimodule(AlgebraPtr<K> l, AlgebraPtr<K> r, std::size_t dim, std::vector<Matrix<K>> la, std::vector<Matrix<K>> ra)
      : left_(std::move(l)), right_(std::move(r)), dim_(dim), lact_(std::move(la)), ract_(std::move(ra)) {}

  Matrix<K> combine(const std::vector<Matrix<K>>& acts, const Vec<K>& x) const {
    Matrix<K> m(dim_, dim_);
    for (std::size_t q = 0; q < x.size(); ++q) {
      if (x[q].is_zero()) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
          if (!acts[q](i, j).is_zero()) m(i, j) += x[q] * acts[q](i, j);
    }
    return m;
  }

  AlgebraPtr<K> left_, right_;
  std::size_t dim_ = 0;
  std::vector<Matrix<K>> lact_, ract_;
};

/**
 * M (x)_R B computed as the coequalizer of M (x)_k R (x)_k B => M (x)_k B.
 * Coordinates on M (x)_k B are indexed i * dim B + j for m_i (x) b_j.
 */
template <FieldScalar K>
struct TensorProduct {
  Module<K> module;               // right S-module
  std::optional<Bimodule<K>> bimodule;  // when M carried a left action too
  QuotientCoords<K> quotient;     // on M (x)_k B modulo the balancing relations
  std::size_t dim_m = 0, dim_b = 0;

  std::size_t dim() const { return quotient.dim(); }
  Vec<K> class_of(std::size_t i, std::size_t j) const {
    Vec<K> v = zero_vec<K>(dim_m * dim_b);
    v[i * dim_b + j] = K(1);
    return quotient.coords(v);
  }
  /// Elementary tensor (i, j) whose class is the i-th quotient basis vector.
  std::pair<std::size_t, std::size_t> representative(std::size_t k) const {
    Vec<K> rep = quotient.representative(k);
    for (std::size_t f = 0; f < rep.size(); ++f)
      if (!rep[f].is_zero()) return {f / dim_b, f % dim_b};
    throw std::logic_error("zero representative in tensor quotient");
  }
};

namespace detail {

template <FieldScalar K>
QuotientCoords<K> balanced_quotient(const std::vector<Matrix<K>>& m_right, std::size_t dm,
                                    const std::vector<Matrix<K>>& b_left, std::size_t db) {
  const std::size_t n = dm * db;
  std::vector<Vec<K>> rels;
  for (std::size_t q = 0; q < m_right.size(); ++q)
    for (std::size_t p = 0; p < dm; ++p)
      for (std::size_t s = 0; s < db; ++s) {
        Vec<K> v = zero_vec<K>(n);
        // (m_p . b_q) (x) b_s - m_p (x) (b_q . b_s)
        for (std::size_t i = 0; i < dm; ++i)
          if (!m_right[q](i, p).is_zero()) v[i * db + s] += m_right[q](i, p);
        for (std::size_t j = 0; j < db; ++j)
          if (!b_left[q](j, s).is_zero()) v[p * db + j] -= b_left[q](j, s);
        if (!is_zero_vec<K>(v)) rels.push_back(std::move(v));
      }
  return QuotientCoords<K>(Subspace<K>::whole(n), Subspace<K>::span(n, rels));
}

// Action on M (x)_k B induced by (id (x) act) or (act (x) id), pushed to the quotient.
template <FieldScalar K>
Matrix<K> induced_action(const QuotientCoords<K>& q, std::size_t dm, std::size_t db, const Matrix<K>* on_m,
                         const Matrix<K>* on_b) {
  std::vector<Vec<K>> cols;
  for (std::size_t k = 0; k < q.dim(); ++k) {
    Vec<K> rep = q.representative(k);
    Vec<K> img = zero_vec<K>(dm * db);
    for (std::size_t f = 0; f < rep.size(); ++f) {
      if (rep[f].is_zero()) continue;
      std::size_t i = f / db, j = f % db;
      if (on_b) {
        for (std::size_t t = 0; t < db; ++t)
          if (!(*on_b)(t, j).is_zero()) img[i * db + t] += rep[f] * (*on_b)(t, j);
      } else {
        for (std::size_t t = 0; t < dm; ++t)
          if (!(*on_m)(t, i).is_zero()) img[t * db + j] += rep[f] * (*on_m)(t, i);
      }
    }
    cols.push_back(q.coords(img));
  }
  return Matrix<K>::from_columns(q.dim(), cols);
}

}  // namespace detail

/// M (x)_R B for a right R-module M and an (R,S)-bimodule B.
template <FieldScalar K>
TensorProduct<K> module_tensor(const Module<K>& m, const Bimodule<K>& b) {
  if (m.algebra() != b.left_algebra()) throw ShapeError("module_tensor: algebra mismatch");
  TensorProduct<K> t;
  t.dim_m = m.dim();
  t.dim_b = b.dim();
  t.quotient = detail::balanced_quotient(m.action(), m.dim(), b.left_action(), b.dim());
  std::vector<Matrix<K>> act;
  for (const auto& rq : b.right_action()) act.push_back(detail::induced_action<K>(t.quotient, t.dim_m, t.dim_b, nullptr, &rq));
  t.module = Module<K>::validate(b.right_algebra(), t.quotient.dim(), std::move(act));
  return t;
}

/// M (x)_R B for an (T,R)-bimodule M; keeps the left T-action.
template <FieldScalar K>
TensorProduct<K> bimodule_tensor(const Bimodule<K>& m, const Bimodule<K>& b) {
  if (m.right_algebra() != b.left_algebra()) throw ShapeError("bimodule_tensor: algebra mismatch");
  TensorProduct<K> t = module_tensor(m.right_module(), b);
  std::vector<Matrix<K>> lact;
  for (const auto& lp : m.left_action()) lact.push_back(detail::induced_action<K>(t.quotient, t.dim_m, t.dim_b, &lp, nullptr));
  t.bimodule = Bimodule<K>::validate(m.left_algebra(), b.right_algebra(), t.dim(), std::move(lact), t.module.action());
  return t;
}

/// (f (x) id_B): M (x)_R B -> M' (x)_R B for a module map f: M -> M'.
template <FieldScalar K>
Matrix<K> tensor_map(const TensorProduct<K>& src, const TensorProduct<K>& dst, const Matrix<K>& f) {
  if (f.cols() != src.dim_m || f.rows() != dst.dim_m || src.dim_b != dst.dim_b) throw ShapeError("tensor_map: shape mismatch");
  std::vector<Vec<K>> cols;
  for (std::size_t k = 0; k < src.dim(); ++k) {
    Vec<K> rep = src.quotient.representative(k);
    Vec<K> img = zero_vec<K>(dst.dim_m * dst.dim_b);
    for (std::size_t x = 0; x < rep.size(); ++x) {
      if (rep[x].is_zero()) continue;
      std::size_t i = x / src.dim_b, j = x % src.dim_b;
      for (std::size_t t = 0; t < dst.dim_m; ++t)
        if (!f(t, i).is_zero()) img[t * dst.dim_b + j] += rep[x] * f(t, i);
    }
    cols.push_back(dst.quotient.coords(img));
  }
  return Matrix<K>::from_columns(dst.dim(), cols);
}

}  // namespace kb
