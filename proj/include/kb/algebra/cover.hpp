#pragma once

/**
 * @file cover.hpp
 * @brief Direct sums of the projectives e_i R and greedy projective covers.
 */

#include <numeric>
#include <utility>
#include <vector>

#include "kb/algebra/module.hpp"

namespace kb {

/**
 * Coordinates on P = e_{s_0} R (+) e_{s_1} R (+) ..., each block in the echelon
 * basis of e_s R inside R.
 */
template <FieldScalar K>
class ProjectiveLayout {
 public:
  ProjectiveLayout() = default;
  ProjectiveLayout(AlgebraPtr<K> r, std::vector<std::size_t> summands) : alg_(std::move(r)), summands_(std::move(summands)) {
    offsets_.push_back(0);
    for (auto s : summands_) {
      if (s >= alg_->num_idempotents()) throw ShapeError("summand index out of range");
      offsets_.push_back(offsets_.back() + alg_->right_ideal(s).dim());
    }
  }

  const AlgebraPtr<K>& algebra() const { return alg_; }
  const std::vector<std::size_t>& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }
  std::size_t dim() const { return offsets_.back(); }
  std::size_t offset(std::size_t k) const { return offsets_[k]; }
  std::size_t block_dim(std::size_t k) const { return offsets_[k + 1] - offsets_[k]; }

  /// Algebra element of block k.
  Vec<K> element(const Vec<K>& v, std::size_t k) const {
    Vec<K> c(v.begin() + static_cast<std::ptrdiff_t>(offsets_[k]), v.begin() + static_cast<std::ptrdiff_t>(offsets_[k + 1]));
    return alg_->right_ideal(summands_[k]).combine(c);
  }
  /// Inverse of element(): x_k must lie in e_{s_k} R.
  Vec<K> from_elements(const std::vector<Vec<K>>& xs) const {
    if (xs.size() != size()) throw ShapeError("wrong number of blocks");
    Vec<K> v;
    v.reserve(dim());
    for (std::size_t k = 0; k < size(); ++k) {
      auto c = alg_->right_ideal(summands_[k]).coords(xs[k]);
      if (!c) throw ValidationError("block element is not in e_i R");
      v.insert(v.end(), c->begin(), c->end());
    }
    return v;
  }

  Module<K> module() const {
    std::vector<Matrix<K>> act;
    for (std::size_t q = 0; q < alg_->dim(); ++q) {
      Matrix<K> m(dim(), dim());
      for (std::size_t k = 0; k < size(); ++k) {
        const auto& ideal = alg_->right_ideal(summands_[k]);
        for (std::size_t j = 0; j < ideal.dim(); ++j) {
          auto c = ideal.coords_unchecked(alg_->mul(ideal.basis_vector(j), alg_->basis_element(q)));
          for (std::size_t i = 0; i < c.size(); ++i) m(offsets_[k] + i, offsets_[k] + j) = c[i];
        }
      }
      act.push_back(std::move(m));
    }
    return Module<K>::validate(alg_, dim(), std::move(act));
  }

 private:
  AlgebraPtr<K> alg_;
  std::vector<std::size_t> summands_;
  std::vector<std::size_t> offsets_;
};

/// The module map P -> M sending the generator of block k to gens[k].
template <FieldScalar K>
Matrix<K> generator_map(const Module<K>& m, const ProjectiveLayout<K>& p, const std::vector<Vec<K>>& gens) {
  std::vector<Vec<K>> cols;
  const auto& r = *m.algebra();
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& ideal = r.right_ideal(p.summands()[k]);
    for (std::size_t j = 0; j < ideal.dim(); ++j) cols.push_back(m.act(gens[k], ideal.basis_vector(j)));
  }
  return Matrix<K>::from_columns(m.dim(), cols);
}

template <FieldScalar K>
struct ProjectiveCover {
  ProjectiveLayout<K> layout;
  std::vector<Vec<K>> generators;  // generators[k] lies in M e_{summand k}
  Matrix<K> map;                   // dim M x dim P, surjective

  bool is_iso() const { return map.cols() == map.rows(); }
};

/**
 * Greedy cover: for each idempotent in list order, take the echelon basis of
 * M e_i and keep the vectors outside (current image + M rad). Minimal when the
 * idempotents are primitive; surjective in any case by Nakayama.
 */
template <FieldScalar K>
ProjectiveCover<K> projective_cover(const Module<K>& m, const TwoSidedIdeal<K>& rad) {
  const auto& r = m.algebra();
  Subspace<K> covered = product_submodule(m, rad.space);
  std::vector<std::size_t> summands;
  std::vector<Vec<K>> gens;
  for (std::size_t i = 0; i < r->num_idempotents() && covered.dim() < m.dim(); ++i) {
    Subspace<K> mei = image(m.act_matrix(r->idempotent(i)));
    for (const auto& v : mei.basis_vectors()) {
      if (covered.contains(v)) continue;
      summands.push_back(i);
      gens.push_back(v);
      covered = sum(covered, submodule_closure(m, {v}));
    }
  }
  ProjectiveLayout<K> layout(r, std::move(summands));
  Matrix<K> map = generator_map(m, layout, gens);
  if (rank(map) != m.dim()) throw std::logic_error("projective cover is not surjective");
  return {std::move(layout), std::move(gens), std::move(map)};
}

/// M is projective iff its minimal cover is injective. Needs primitive idempotents to be a decision procedure.
template <FieldScalar K>
bool is_projective(const Module<K>& m, const TwoSidedIdeal<K>& rad) {
  return projective_cover(m, rad).is_iso();
}

/// Multiplicity of each e_i R in the top of M (dimension counts of M e_i / M rad e_i over End).
template <FieldScalar K>
std::vector<std::size_t> top_multiplicities(const Module<K>& m, const TwoSidedIdeal<K>& rad) {
  auto c = projective_cover(m, rad);
  std::vector<std::size_t> out(m.algebra()->num_idempotents(), 0);
  for (auto s : c.layout.summands()) ++out[s];
  return out;
}

/// Corner algebra eRe, with basis the echelon basis of eRe inside R and unit e.
template <FieldScalar K>
struct CornerAlgebra {
  AlgebraPtr<K> algebra;
  Subspace<K> space;  // eRe inside R
  Vec<K> e;
};

template <FieldScalar K>
CornerAlgebra<K> corner_algebra(const AlgebraPtr<K>& r, const Vec<K>& e) {
  if (!r->is_idempotent(e) || is_zero_vec<K>(e)) throw ValidationError("corner_algebra: element is not a nonzero idempotent");
  std::vector<Vec<K>> gens;
  for (std::size_t b = 0; b < r->dim(); ++b) gens.push_back(r->mul(e, r->basis_element(b), e));
  Subspace<K> ere = Subspace<K>::span(r->dim(), gens);
  const std::size_t n = ere.dim();
  AlgebraData<K> d;
  d.field = r->field();
  for (std::size_t i = 0; i < n; ++i) d.names.push_back(r->element_str(ere.basis_vector(i)));
  d.table.assign(n, std::vector<Vec<K>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d.table[i][j] = ere.coords_unchecked(r->mul(ere.basis_vector(i), ere.basis_vector(j)));
  d.unit = ere.coords_unchecked(e);
  // Idempotents e e_i e that survive and are orthogonal; fall back to the unit alone.
  std::vector<Vec<K>> idem;
  for (const auto& ei : r->idempotents()) {
    Vec<K> x = r->mul(e, ei, e);
    if (!is_zero_vec<K>(x)) idem.push_back(ere.coords_unchecked(x));
  }
  d.idempotents = idem;
  try {
    return {Algebra<K>::validate(d), std::move(ere), e};
  } catch (const AlgebraError&) {
    d.idempotents = {d.unit};
    return {Algebra<K>::validate(std::move(d)), std::move(ere), e};
  }
}

/// The functor M -> Me into right eRe-modules.
template <FieldScalar K>
Module<K> apply_corner(const CornerAlgebra<K>& c, const Module<K>& m) {
  Subspace<K> me = image(m.act_matrix(c.e));
  std::vector<Matrix<K>> act;
  for (const auto& x : c.space.basis_vectors()) {
    Matrix<K> a = m.act_matrix(x);
    std::vector<Vec<K>> cols;
    for (const auto& v : me.basis_vectors()) cols.push_back(me.coords_unchecked(a.apply(v)));
    act.push_back(Matrix<K>::from_columns(me.dim(), cols));
  }
  return Module<K>::validate(c.algebra, me.dim(), std::move(act));
}

/// Me -> Ne induced by f: M -> N, in the echelon bases used by apply_corner.
template <FieldScalar K>
Matrix<K> apply_corner_map(const CornerAlgebra<K>& c, const Module<K>& m, const Module<K>& n, const Matrix<K>& f) {
  Subspace<K> me = image(m.act_matrix(c.e));
  Subspace<K> ne = image(n.act_matrix(c.e));
  std::vector<Vec<K>> cols;
  for (const auto& v : me.basis_vectors()) cols.push_back(ne.coords_unchecked(f.apply(v)));
  return Matrix<K>::from_columns(ne.dim(), cols);
}

}  // namespace kb
