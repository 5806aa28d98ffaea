#pragma once

/**
 * @file hom_ideal.hpp
 * @brief Ideals of a finite window: one subspace of Hom(X_i, X_j) per ordered pair.
 *
 * Subspaces are in homotopy-class coordinates of the window's hom spaces.
 * Every statement is relative to the window: composites through objects
 * outside it are invisible.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kb/functors/subcat.hpp"

namespace kb {

template <FieldScalar K>
class HomIdeal {
 public:
  using SubcatPtr = typename FiniteSubcat<K>::Ptr;

  HomIdeal() = default;
  explicit HomIdeal(SubcatPtr s) : sub_(std::move(s)) {
    for (std::size_t i = 0; i < sub_->size(); ++i)
      for (std::size_t j = 0; j < sub_->size(); ++j) parts_.emplace_back(sub_->hom(i, j).dim());
  }

  static HomIdeal zero(SubcatPtr s) { return HomIdeal(std::move(s)); }
  static HomIdeal full(SubcatPtr s) {
    HomIdeal h(s);
    for (std::size_t i = 0; i < s->size(); ++i)
      for (std::size_t j = 0; j < s->size(); ++j) h.set(i, j, Subspace<K>::whole(s->hom(i, j).dim()));
    return h;
  }

  const SubcatPtr& subcat() const { return sub_; }
  std::size_t size() const { return sub_->size(); }
  const Subspace<K>& part(std::size_t i, std::size_t j) const { return parts_.at(i * size() + j); }
  void set(std::size_t i, std::size_t j, Subspace<K> u) {
    if (u.ambient() != sub_->hom(i, j).dim()) throw ShapeError("ideal component has the wrong ambient dimension");
    parts_.at(i * size() + j) = std::move(u);
  }
  std::size_t dim(std::size_t i, std::size_t j) const { return part(i, j).dim(); }
  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& p : parts_) d += p.dim();
    return d;
  }
  bool is_zero() const { return total_dim() == 0; }

  bool contains(std::size_t i, std::size_t j, const GradedMap<K>& f) const {
    return part(i, j).contains(sub_->hom(i, j).class_coords(f));
  }

  bool is_subset_of(const HomIdeal& o) const {
    same_subcat(o);
    for (std::size_t k = 0; k < parts_.size(); ++k)
      if (!parts_[k].is_subspace_of(o.parts_[k])) return false;
    return true;
  }
  friend bool operator==(const HomIdeal& a, const HomIdeal& b) {
    a.same_subcat(b);
    return a.parts_ == b.parts_;
  }

  void same_subcat(const HomIdeal& o) const {
    if (sub_ != o.sub_) throw ShapeError("ideals live on different windows");
  }

 private:
  SubcatPtr sub_;
  std::vector<Subspace<K>> parts_;
};

template <FieldScalar K>
Vec<K> unit_vec(std::size_t n, std::size_t i) {
  Vec<K> v = zero_vec<K>(n);
  v[i] = K(1);
  return v;
}

/// Adds Hom o I and I o Hom until nothing changes. Returns the number of rounds that enlarged I.
template <FieldScalar K>
std::size_t close_ideal(HomIdeal<K>& ideal) {
  const auto& s = *ideal.subcat();
  const std::size_t n = s.size();
  std::size_t rounds = 0;
  while (true) {
    bool grew = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& p = ideal.part(i, j);
        if (p.is_zero()) continue;
        const auto vs = p.basis_vectors();
        // post-composition into (i, k)
        for (std::size_t k = 0; k < n; ++k) {
          const auto& hjk = s.hom(j, k);
          if (hjk.dim() == 0) continue;
          std::vector<Vec<K>> gens;
          for (const auto& v : vs)
            for (std::size_t b = 0; b < hjk.dim(); ++b) gens.push_back(s.compose(i, j, k, v, unit_vec<K>(hjk.dim(), b)));
          Subspace<K> add = Subspace<K>::span(s.hom(i, k).dim(), gens);
          if (!add.is_subspace_of(ideal.part(i, k))) {
            ideal.set(i, k, sum(ideal.part(i, k), add));
            grew = true;
          }
        }
        // pre-composition into (h, j)
        for (std::size_t h = 0; h < n; ++h) {
          const auto& hhi = s.hom(h, i);
          if (hhi.dim() == 0) continue;
          std::vector<Vec<K>> gens;
          for (std::size_t a = 0; a < hhi.dim(); ++a)
            for (const auto& v : ideal.part(i, j).basis_vectors()) gens.push_back(s.compose(h, i, j, unit_vec<K>(hhi.dim(), a), v));
          Subspace<K> add = Subspace<K>::span(s.hom(h, j).dim(), gens);
          if (!add.is_subspace_of(ideal.part(h, j))) {
            ideal.set(h, j, sum(ideal.part(h, j), add));
            grew = true;
          }
        }
      }
    if (!grew) return rounds;
    ++rounds;
  }
}

/// True when closing changes nothing.
template <FieldScalar K>
bool is_two_sided(const HomIdeal<K>& ideal) {
  HomIdeal<K> c = ideal;
  return close_ideal(c) == 0;
}

struct IdealGenerator {
  std::size_t source, target;
};

/// Least ideal of the window containing the given classes.
template <FieldScalar K>
HomIdeal<K> generate_ideal(const typename FiniteSubcat<K>::Ptr& s,
                           const std::vector<std::pair<IdealGenerator, Vec<K>>>& gens) {
  HomIdeal<K> h(s);
  for (const auto& [ends, c] : gens) {
    if (ends.source >= s->size() || ends.target >= s->size()) throw ShapeError("ideal generator endpoints outside the window");
    if (c.size() != s->hom(ends.source, ends.target).dim()) throw ShapeError("ideal generator has the wrong length");
    h.set(ends.source, ends.target, sum(h.part(ends.source, ends.target), Subspace<K>::span(c.size(), {c})));
  }
  close_ideal(h);
  return h;
}

/// Same, from chain maps between window objects (located by equality of complexes).
template <FieldScalar K>
HomIdeal<K> generate_ideal(const typename FiniteSubcat<K>::Ptr& s, const std::vector<GradedMap<K>>& maps) {
  std::vector<std::pair<IdealGenerator, Vec<K>>> gens;
  for (const auto& f : maps) {
    auto i = s->find(f.source()), j = s->find(f.target());
    if (!i || !j) throw ShapeError("ideal generator endpoints outside the window");
    gens.push_back({{*i, *j}, s->hom(*i, *j).class_coords(f)});
  }
  return generate_ideal<K>(s, gens);
}

/// (I J)(X, Z) = span{ psi o phi : phi in J(X, Y), psi in I(Y, Z) }, closed.
template <FieldScalar K>
HomIdeal<K> ideal_product(const HomIdeal<K>& a, const HomIdeal<K>& b) {
  a.same_subcat(b);
  const auto& s = *a.subcat();
  const std::size_t n = s.size();
  HomIdeal<K> out(a.subcat());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Vec<K>> gens;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.part(i, j).is_zero() || a.part(j, k).is_zero()) continue;
        for (const auto& phi : b.part(i, j).basis_vectors())
          for (const auto& psi : a.part(j, k).basis_vectors()) gens.push_back(s.compose(i, j, k, phi, psi));
      }
      out.set(i, k, Subspace<K>::span(s.hom(i, k).dim(), gens));
    }
  close_ideal(out);
  return out;
}

template <FieldScalar K>
bool is_idempotent(const HomIdeal<K>& a) {
  return ideal_product(a, a) == a;
}

template <FieldScalar K>
struct SigmaReport {
  bool stable = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (i, j) with Sigma I(i, j) != I(Sigma i, Sigma j)
};

/// Sigma I = I on every pair whose suspension is also in the window.
template <FieldScalar K>
SigmaReport<K> sigma_stable(const HomIdeal<K>& a) {
  const auto& s = *a.subcat();
  SigmaReport<K> rep;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      auto si = s.shifted(i, 1), sj = s.shifted(j, 1);
      if (!si || !sj) continue;
      ++rep.pairs_checked;
      Matrix<K> m = s.shift_matrix(i, j, 1);
      std::vector<Vec<K>> imgs;
      for (const auto& v : a.part(i, j).basis_vectors()) imgs.push_back(m.apply(v));
      // Sigma is bijective on hom spaces, so equality of subspaces is the right test.
      if (!(Subspace<K>::span(s.hom(*si, *sj).dim(), imgs) == a.part(*si, *sj))) {
        rep.stable = false;
        rep.witness = std::make_pair(i, j);
        return rep;
      }
    }
  return rep;
}

/// Window indices of X' -a-> X -b-> X'' -> Sigma X' for a recognized triangle.
struct WindowTriangle {
  std::size_t x1, x, x2;
};

template <FieldScalar K>
struct SaturationReport {
  bool saturated = true;
  std::size_t triangles_used = 0;  // triangles with b in I
  // first violation: triangle index, target object, a class phi with phi o a in I, phi not in I
  std::optional<std::size_t> triangle;
  std::optional<std::size_t> target;
  std::optional<Vec<K>> phi;
};

/**
 * For each triangle with b in I and each window object Y, the subspace
 * {phi in Hom(X, Y) : phi o a in I} must lie in I(X, Y).
 */
template <FieldScalar K>
SaturationReport<K> saturation_check(const HomIdeal<K>& ideal, const std::vector<Triangle<K>>& triangles) {
  const auto& s = *ideal.subcat();
  SaturationReport<K> rep;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    auto v = recognize_triangle(tri);
    if (!v.exact || !verify_triangle_verdict(tri, v)) throw ValidationError("saturation check given a triangle that is not exact");
    auto x1 = s.find(tri.alpha.source()), x = s.find(tri.alpha.target()), x2 = s.find(tri.beta.target());
    if (!x1 || !x || !x2) throw ShapeError("triangle objects are not in the window");
    if (!ideal.contains(*x, *x2, tri.beta)) continue;
    ++rep.triangles_used;
    const Vec<K> a = s.hom(*x1, *x).class_coords(tri.alpha);
    for (std::size_t y = 0; y < s.size(); ++y) {
      const auto& hxy = s.hom(*x, y);
      if (hxy.dim() == 0) continue;
      // phi -> class(phi o a) modulo I(X', Y)
      const auto& target = ideal.part(*x1, y);
      QuotientCoords<K> mod(Subspace<K>::whole(s.hom(*x1, y).dim()), target);
      std::vector<Vec<K>> cols;
      for (std::size_t b = 0; b < hxy.dim(); ++b) cols.push_back(mod.coords(s.compose(*x1, *x, y, a, unit_vec<K>(hxy.dim(), b))));
      Subspace<K> pre = mod.dim() == 0 ? Subspace<K>::whole(hxy.dim()) : kernel(Matrix<K>::from_columns(mod.dim(), cols));
      if (!pre.is_subspace_of(ideal.part(*x, y))) {
        rep.saturated = false;
        rep.triangle = t;
        rep.target = y;
        for (const auto& w : pre.basis_vectors())
          if (!ideal.part(*x, y).contains(w)) {
            rep.phi = w;
            break;
          }
        return rep;
      }
    }
  }
  return rep;
}

/// Span of all composites X -> K -> Y with K among `through`, computed pairwise.
template <FieldScalar K>
HomIdeal<K> factor_through_ideal(const typename FiniteSubcat<K>::Ptr& s, const std::vector<std::size_t>& through) {
  HomIdeal<K> out(s);
  for (std::size_t i = 0; i < s->size(); ++i)
    for (std::size_t j = 0; j < s->size(); ++j) {
      std::vector<Vec<K>> gens;
      for (auto k : through) {
        const auto& hik = s->hom(i, k);
        const auto& hkj = s->hom(k, j);
        for (std::size_t a = 0; a < hik.dim(); ++a)
          for (std::size_t b = 0; b < hkj.dim(); ++b)
            gens.push_back(s->compose(i, k, j, unit_vec<K>(hik.dim(), a), unit_vec<K>(hkj.dim(), b)));
      }
      out.set(i, j, Subspace<K>::span(s->hom(i, j).dim(), gens));
    }
  return out;
}

/// The ideal generated by the identities of `through`.
template <FieldScalar K>
HomIdeal<K> identity_generated_ideal(const typename FiniteSubcat<K>::Ptr& s, const std::vector<std::size_t>& through) {
  std::vector<std::pair<IdealGenerator, Vec<K>>> gens;
  for (auto k : through) {
    const auto& hkk = s->hom(k, k);
    if (hkk.dim() == 0) continue;  // contractible: identity is zero
    gens.push_back({{k, k}, hkk.class_coords(GradedMap<K>::identity(s->object(k).complex))});
  }
  return generate_ideal<K>(s, gens);
}

}  // namespace kb
