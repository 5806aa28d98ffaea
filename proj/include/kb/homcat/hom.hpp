#pragma once

/**
 * @file hom.hpp
 * @brief Hom spaces in the homotopy category, contractions and null-homotopies.
 *
 * A degree-k map X -> Y is parametrized by slots: one coordinate per basis
 * vector of each corner e_t R e_s occupied by a block entry. Hom(X, Y) is the
 * kernel of the chain condition modulo the image of h -> dh + hd.
 */

#include <optional>
#include <utility>
#include <vector>

#include "kb/homcat/maps.hpp"

namespace kb {

template <FieldScalar K>
class MapLayout {
 public:
  struct Slot {
    int n;
    std::size_t row, col, basis;
  };

  MapLayout() = default;
  MapLayout(ProjComplex<K> src, ProjComplex<K> tgt, int degree)
      : src_(std::move(src)), tgt_(std::move(tgt)), degree_(degree) {
    const auto& r = *src_.algebra();
    for (int n = src_.lo(); n <= src_.hi(); ++n) {
      const auto& rows = tgt_.term(n + degree_);
      const auto& cols = src_.term(n);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
          for (std::size_t b = 0; b < r.corner(rows[i], cols[j]).dim(); ++b) slots_.push_back({n, i, j, b});
    }
  }

  const ProjComplex<K>& source() const { return src_; }
  const ProjComplex<K>& target() const { return tgt_; }
  int degree() const { return degree_; }
  std::size_t size() const { return slots_.size(); }
  const std::vector<Slot>& slots() const { return slots_; }

  Vec<K> coords(const GradedMap<K>& f) const {
    if (f.degree() != degree_) throw ShapeError("map degree does not match the layout");
    const auto& r = *src_.algebra();
    Vec<K> out;
    out.reserve(size());
    for (int n = src_.lo(); n <= src_.hi(); ++n) {
      auto m = f.component(n);
      for (std::size_t i = 0; i < m.num_rows(); ++i)
        for (std::size_t j = 0; j < m.num_cols(); ++j) {
          const auto& c = r.corner(m.row_summands()[i], m.col_summands()[j]);
          auto x = c.coords_unchecked(m(i, j));
          out.insert(out.end(), x.begin(), x.end());
        }
    }
    return out;
  }

  GradedMap<K> map(const Vec<K>& c) const {
    if (c.size() != size()) throw ShapeError("coordinate vector does not match the layout");
    const auto& r = *src_.algebra();
    GradedMap<K> f = GradedMap<K>::zero(src_, tgt_, degree_);
    std::size_t s = 0;
    for (int n = src_.lo(); n <= src_.hi(); ++n) {
      BlockMatrix<K> m = f.component(n);
      for (std::size_t i = 0; i < m.num_rows(); ++i)
        for (std::size_t j = 0; j < m.num_cols(); ++j) {
          const auto& corner = r.corner(m.row_summands()[i], m.col_summands()[j]);
          Vec<K> x(c.begin() + static_cast<std::ptrdiff_t>(s), c.begin() + static_cast<std::ptrdiff_t>(s + corner.dim()));
          m.at(i, j) = corner.combine(x);
          s += corner.dim();
        }
      f.set(n, std::move(m));
    }
    return f;
  }

  GradedMap<K> unit(std::size_t s) const {
    Vec<K> c = zero_vec<K>(size());
    c[s] = K(1);
    return map(c);
  }

  /// Matrix whose column s is fn(unit(s)); `rows` fixes the height when there are no slots.
  template <class Fn>
  Matrix<K> operator_matrix(Fn fn, std::size_t rows) const {
    std::vector<Vec<K>> cols;
    cols.reserve(size());
    for (std::size_t s = 0; s < size(); ++s) cols.push_back(fn(unit(s)));
    return Matrix<K>::from_columns(rows, cols);
  }

 private:
  ProjComplex<K> src_, tgt_;
  int degree_ = 0;
  std::vector<Slot> slots_;
};

/// Number of flattened algebra coordinates of a degree-k map X -> Y.
template <FieldScalar K>
std::size_t flat_size(const ProjComplex<K>& x, const ProjComplex<K>& y, int k) {
  std::size_t s = 0;
  for (int n = x.lo(); n <= x.hi(); ++n) s += x.term(n).size() * y.term(n + k).size();
  return s * x.algebra()->dim();
}

/// Matrix of h -> D(h) from degree-(-1) slots to degree-0 slots.
template <FieldScalar K>
Matrix<K> homotopy_operator(const MapLayout<K>& deg0, const MapLayout<K>& deg_1) {
  return deg_1.operator_matrix([&](const GradedMap<K>& h) { return deg0.coords(boundary(h)); }, deg0.size());
}

/// y with y^T A = 0 and y^T b = 1, certifying that A x = b has no solution.
template <FieldScalar K>
std::optional<Vec<K>> infeasibility_witness(const Matrix<K>& a, const Vec<K>& b) {
  Matrix<K> sys = Matrix<K>::vstack(a.transpose(), Matrix<K>::from_rows(a.rows(), {b}));
  Vec<K> rhs = zero_vec<K>(a.cols() + 1);
  rhs.back() = K(1);
  return solve_vec(sys, rhs);
}

template <FieldScalar K>
bool check_infeasibility(const Matrix<K>& a, const Vec<K>& b, const Vec<K>& y) {
  if (y.size() != a.rows() || b.size() != a.rows()) return false;
  if (!is_zero_vec<K>(a.transpose().apply(y))) return false;
  K dot(0);
  for (std::size_t i = 0; i < y.size(); ++i) dot += y[i] * b[i];
  return !dot.is_zero();
}

template <FieldScalar K>
class HomSpace {
 public:
  HomSpace() = default;

  static HomSpace compute(const ProjComplex<K>& x, const ProjComplex<K>& y) {
    HomSpace h;
    h.deg0_ = MapLayout<K>(x, y, 0);
    h.deg_1_ = MapLayout<K>(x, y, -1);
    const std::size_t rows = flat_size(x, y, 1);
    Matrix<K> chain = h.deg0_.operator_matrix([](const GradedMap<K>& f) { return boundary(f).flatten(); }, rows);
    h.cycles_ = h.deg0_.size() == 0 ? Subspace<K>(0) : kernel(chain);
    h.htpy_ = homotopy_operator(h.deg0_, h.deg_1_);
    h.boundaries_ = image(h.htpy_);
    h.quotient_ = QuotientCoords<K>(h.cycles_, h.boundaries_);
    return h;
  }

  const ProjComplex<K>& source() const { return deg0_.source(); }
  const ProjComplex<K>& target() const { return deg0_.target(); }
  const MapLayout<K>& layout() const { return deg0_; }
  const MapLayout<K>& homotopy_layout() const { return deg_1_; }
  const Subspace<K>& cycles() const { return cycles_; }
  const Subspace<K>& boundaries() const { return boundaries_; }
  const Matrix<K>& homotopy_matrix() const { return htpy_; }

  std::size_t dim() const { return quotient_.dim(); }
  GradedMap<K> basis(std::size_t i) const { return deg0_.map(quotient_.representative(i)); }
  std::vector<GradedMap<K>> basis() const {
    std::vector<GradedMap<K>> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis(i));
    return out;
  }
  GradedMap<K> from_class(const Vec<K>& c) const { return deg0_.map(quotient_.lift(c)); }

  /// Coordinates of the homotopy class of a chain map.
  Vec<K> class_coords(const GradedMap<K>& f) const {
    Vec<K> c = deg0_.coords(f);
    if (!cycles_.contains(c)) throw ValidationError("map is not a chain map");
    return quotient_.coords(c);
  }
  bool is_null(const GradedMap<K>& f) const { return boundaries_.contains(deg0_.coords(f)); }

  /// h with dh + hd = f, when f is null-homotopic.
  std::optional<GradedMap<K>> null_homotopy(const GradedMap<K>& f) const {
    auto sol = solve_vec(htpy_, deg0_.coords(f));
    if (!sol) return std::nullopt;
    return deg_1_.map(*sol);
  }

 private:
  MapLayout<K> deg0_, deg_1_;
  Subspace<K> cycles_, boundaries_;
  QuotientCoords<K> quotient_;
  Matrix<K> htpy_;
};

/// h with dh + hd = f for a degree-0 map f, solved without computing the full hom space.
template <FieldScalar K>
std::optional<GradedMap<K>> null_homotopy(const GradedMap<K>& f) {
  MapLayout<K> deg0(f.source(), f.target(), 0), deg_1(f.source(), f.target(), -1);
  auto sol = solve_vec(homotopy_operator(deg0, deg_1), deg0.coords(f));
  if (!sol) return std::nullopt;
  return deg_1.map(*sol);
}

/// Linear functional separating f from the null-homotopic maps, if f is not null-homotopic.
template <FieldScalar K>
std::optional<Vec<K>> non_null_witness(const GradedMap<K>& f) {
  MapLayout<K> deg0(f.source(), f.target(), 0), deg_1(f.source(), f.target(), -1);
  return infeasibility_witness(homotopy_operator(deg0, deg_1), deg0.coords(f));
}

/// Re-checks a non-null witness from scratch.
template <FieldScalar K>
bool verify_non_null(const GradedMap<K>& f, const Vec<K>& y) {
  MapLayout<K> deg0(f.source(), f.target(), 0), deg_1(f.source(), f.target(), -1);
  return check_infeasibility(homotopy_operator(deg0, deg_1), deg0.coords(f), y);
}

template <FieldScalar K>
bool verify_homotopy(const GradedMap<K>& f, const GradedMap<K>& h) {
  return h.degree() == -1 && h.source() == f.source() && h.target() == f.target() && boundary(h) == f;
}

/// Contraction h of X (dh + hd = id), or nullopt when X is not contractible.
template <FieldScalar K>
std::optional<GradedMap<K>> contraction(const ProjComplex<K>& x) {
  return null_homotopy(GradedMap<K>::identity(x));
}

template <FieldScalar K>
bool is_contractible(const ProjComplex<K>& x) {
  return contraction(x).has_value();
}

/// Independent check of dh + hd = id using only block arithmetic.
template <FieldScalar K>
bool verify_contraction(const ProjComplex<K>& x, const GradedMap<K>& h) {
  return verify_homotopy(GradedMap<K>::identity(x), h);
}

}  // namespace kb
