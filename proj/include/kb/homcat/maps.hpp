#pragma once

/**
 * @file maps.hpp
 * @brief Graded maps between complexes: chain maps (degree 0) and homotopies (degree -1).
 *
 * A degree-k map f : X -> Y has components f^n : X^n -> Y^{n+k} for every n in
 * the range of X. Its boundary is D(f) = d_Y f - (-1)^k f d_X, so a chain map
 * satisfies D(f) = 0 and a homotopy h witnesses f - g = D(h) = d h + h d.
 */

#include <map>
#include <utility>
#include <vector>

#include "kb/homcat/complex.hpp"

namespace kb {

template <FieldScalar K>
class GradedMap {
 public:
  GradedMap() = default;

  static GradedMap zero(ProjComplex<K> src, ProjComplex<K> tgt, int degree) {
    GradedMap f(std::move(src), std::move(tgt), degree);
    for (int n = f.src_.lo(); n <= f.src_.hi(); ++n) f.comp_.emplace(n, f.zero_block(n));
    return f;
  }
  /// components[i] is the component at source degree src.lo() + i.
  static GradedMap make(ProjComplex<K> src, ProjComplex<K> tgt, int degree, std::vector<BlockMatrix<K>> components) {
    GradedMap f = zero(std::move(src), std::move(tgt), degree);
    if (components.size() != f.src_.length()) throw ShapeError("graded map needs one component per source degree");
    for (std::size_t i = 0; i < components.size(); ++i) f.set(f.src_.lo() + static_cast<int>(i), std::move(components[i]));
    return f;
  }
  static GradedMap identity(const ProjComplex<K>& x) {
    GradedMap f = zero(x, x, 0);
    for (int n = x.lo(); n <= x.hi(); ++n) f.comp_[n] = BlockMatrix<K>::identity(x.algebra(), x.term(n));
    return f;
  }

  const ProjComplex<K>& source() const { return src_; }
  const ProjComplex<K>& target() const { return tgt_; }
  int degree() const { return degree_; }

  /// f^n : X^n -> Y^{n+degree}.
  BlockMatrix<K> component(int n) const {
    auto it = comp_.find(n);
    return it == comp_.end() ? zero_block(n) : it->second;
  }
  void set(int n, BlockMatrix<K> m) {
    if (n < src_.lo() || n > src_.hi()) throw ShapeError("component degree outside the source range");
    if (m.row_summands() != tgt_.term(n + degree_) || m.col_summands() != src_.term(n))
      throw ShapeError("component in degree " + std::to_string(n) + " does not match the terms");
    m.check_corners();
    comp_[n] = std::move(m);
  }

  bool is_zero() const {
    for (const auto& [n, m] : comp_)
      if (!m.is_zero()) return false;
    return true;
  }

  GradedMap scaled(const K& c) const {
    GradedMap g = *this;
    for (auto& [n, m] : g.comp_) m = m.scaled(c);
    return g;
  }
  GradedMap operator-() const { return scaled(K(-1)); }
  friend GradedMap operator+(const GradedMap& a, const GradedMap& b) {
    a.check_parallel(b);
    GradedMap c = a;
    for (auto& [n, m] : c.comp_) m = m + b.component(n);
    return c;
  }
  friend GradedMap operator-(const GradedMap& a, const GradedMap& b) { return a + (-b); }
  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    if (a.degree_ != b.degree_ || !(a.src_ == b.src_) || !(a.tgt_ == b.tgt_)) return false;
    for (int n = a.src_.lo(); n <= a.src_.hi(); ++n)
      if (!(a.component(n) == b.component(n))) return false;
    return true;
  }

  /// Concatenated algebra coordinates of every entry of every component.
  Vec<K> flatten() const {
    Vec<K> out;
    for (int n = src_.lo(); n <= src_.hi(); ++n) {
      auto m = component(n);
      for (std::size_t i = 0; i < m.num_rows(); ++i)
        for (std::size_t j = 0; j < m.num_cols(); ++j) out.insert(out.end(), m(i, j).begin(), m(i, j).end());
    }
    return out;
  }

 private:
  GradedMap(ProjComplex<K> src, ProjComplex<K> tgt, int degree)
      : src_(std::move(src)), tgt_(std::move(tgt)), degree_(degree) {
    if (src_.algebra() != tgt_.algebra()) throw ShapeError("graded map between complexes over different algebras");
  }
  BlockMatrix<K> zero_block(int n) const { return BlockMatrix<K>(src_.algebra(), tgt_.term(n + degree_), src_.term(n)); }
  void check_parallel(const GradedMap& b) const {
    if (degree_ != b.degree_ || !(src_ == b.src_) || !(tgt_ == b.tgt_)) throw ShapeError("maps are not parallel");
  }

  ProjComplex<K> src_, tgt_;
  int degree_ = 0;
  std::map<int, BlockMatrix<K>> comp_;
};

/// g o f.
template <FieldScalar K>
GradedMap<K> compose(const GradedMap<K>& g, const GradedMap<K>& f) {
  if (!(f.target() == g.source())) throw ShapeError("compose: target of the first map is not the source of the second");
  GradedMap<K> h = GradedMap<K>::zero(f.source(), g.target(), f.degree() + g.degree());
  for (int n = f.source().lo(); n <= f.source().hi(); ++n) h.set(n, g.component(n + f.degree()) * f.component(n));
  return h;
}

/// D(f) = d_Y f - (-1)^k f d_X, of degree k + 1.
template <FieldScalar K>
GradedMap<K> boundary(const GradedMap<K>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const int k = f.degree();
  GradedMap<K> out = GradedMap<K>::zero(x, y, k + 1);
  for (int n = x.lo(); n <= x.hi(); ++n) {
    BlockMatrix<K> a = y.d(n + k) * f.component(n);
    BlockMatrix<K> b = f.component(n + 1) * x.d(n);
    out.set(n, (k % 2 == 0) ? a - b : a + b);
  }
  return out;
}

template <FieldScalar K>
bool is_chain_map(const GradedMap<K>& f) {
  return f.degree() == 0 && boundary(f).is_zero();
}

/// Sigma^s f : Sigma^s X -> Sigma^s Y, (Sigma^s f)^m = (-1)^{s k} f^{m+s}.
template <FieldScalar K>
GradedMap<K> shift(const GradedMap<K>& f, int s) {
  GradedMap<K> g = GradedMap<K>::zero(f.source().shift(s), f.target().shift(s), f.degree());
  const bool neg = (s * f.degree()) % 2 != 0;
  for (int m = g.source().lo(); m <= g.source().hi(); ++m) {
    auto c = f.component(m + s);
    g.set(m, neg ? -c : c);
  }
  return g;
}

/// Inclusion and projection of a direct sum X (+) Y.
template <FieldScalar K>
struct SumMaps {
  ProjComplex<K> sum;
  GradedMap<K> in1, in2, pr1, pr2;
};

template <FieldScalar K>
SumMaps<K> direct_sum_maps(const ProjComplex<K>& a, const ProjComplex<K>& b) {
  auto s = direct_sum(a, b);
  const auto& r = s.algebra();
  auto in1 = GradedMap<K>::zero(a, s, 0), in2 = GradedMap<K>::zero(b, s, 0);
  auto pr1 = GradedMap<K>::zero(s, a, 0), pr2 = GradedMap<K>::zero(s, b, 0);
  for (int n = s.lo(); n <= s.hi(); ++n) {
    auto ia = BlockMatrix<K>::identity(r, a.term(n)), ib = BlockMatrix<K>::identity(r, b.term(n));
    if (!a.term(n).empty()) {
      in1.set(n, BlockMatrix<K>::assemble(r, {a.term(n), b.term(n)}, {a.term(n)}, {{&ia}, {nullptr}}));
    }
    if (!b.term(n).empty()) {
      in2.set(n, BlockMatrix<K>::assemble(r, {a.term(n), b.term(n)}, {b.term(n)}, {{nullptr}, {&ib}}));
    }
    pr1.set(n, BlockMatrix<K>::assemble(r, {a.term(n)}, {a.term(n), b.term(n)}, {{&ia, nullptr}}));
    pr2.set(n, BlockMatrix<K>::assemble(r, {b.term(n)}, {a.term(n), b.term(n)}, {{nullptr, &ib}}));
  }
  return {std::move(s), std::move(in1), std::move(in2), std::move(pr1), std::move(pr2)};
}

}  // namespace kb
