#pragma once

/**
 * @file annihilator.hpp
 * @brief Ann F and Ker F restricted to a finite window.
 */

#include <vector>

#include "kb/functors/bimodule_functor.hpp"
#include "kb/ideals/hom_ideal.hpp"

namespace kb {

/// The images F(X_i) of the window objects and the induced maps on hom spaces.
template <FieldScalar K>
class FunctorOnSubcat {
 public:
  FunctorOnSubcat(const BimoduleFunctor<K>& f, typename FiniteSubcat<K>::Ptr s) : f_(&f), sub_(std::move(s)) {
    if (sub_->algebra() != f.source()) throw ShapeError("functor and window live over different algebras");
    for (std::size_t i = 0; i < sub_->size(); ++i) images_.push_back(f.apply(sub_->object(i).complex));
  }

  const ProjComplex<K>& image(std::size_t i) const { return images_.at(i); }

  /// Matrix of Hom(X_i, X_j) -> Hom(F X_i, F X_j) in class coordinates.
  Matrix<K> induced(std::size_t i, std::size_t j) const {
    const auto& src = sub_->hom(i, j);
    auto dst = HomSpace<K>::compute(images_[i], images_[j]);
    std::vector<Vec<K>> cols;
    for (std::size_t a = 0; a < src.dim(); ++a) cols.push_back(dst.class_coords(f_->apply(src.basis(a))));
    return Matrix<K>::from_columns(dst.dim(), cols);
  }

 private:
  const BimoduleFunctor<K>* f_;
  typename FiniteSubcat<K>::Ptr sub_;
  std::vector<ProjComplex<K>> images_;
};

/// Per pair, the maps phi with F(phi) null-homotopic.
template <FieldScalar K>
HomIdeal<K> ann_on_subcat(const BimoduleFunctor<K>& f, const typename FiniteSubcat<K>::Ptr& s) {
  FunctorOnSubcat<K> fs(f, s);
  HomIdeal<K> out(s);
  for (std::size_t i = 0; i < s->size(); ++i)
    for (std::size_t j = 0; j < s->size(); ++j) {
      const std::size_t d = s->hom(i, j).dim();
      if (d == 0) continue;
      Matrix<K> m = fs.induced(i, j);
      out.set(i, j, m.rows() == 0 ? Subspace<K>::whole(d) : kernel(m));
    }
  return out;
}

/// Window objects X with F(X) contractible.
template <FieldScalar K>
std::vector<std::size_t> ker_on_subcat(const BimoduleFunctor<K>& f, const typename FiniteSubcat<K>::Ptr& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s->size(); ++i)
    if (is_contractible(f.apply(s->object(i).complex))) out.push_back(i);
  return out;
}

}  // namespace kb
