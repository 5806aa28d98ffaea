#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kb/linalg/echelon.hpp"

namespace kb {

/**
 * Subspace of K^n stored by its canonical RREF basis, so two subspaces are
 * equal as sets exactly when their stored bases are equal.
 */
template <FieldScalar K>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(const Matrix<K>& rows) {
    Subspace s(rows.cols());
    auto e = rref(rows);
    s.basis_ = std::move(e.rows);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace span(std::size_t ambient, const std::vector<Vec<K>>& vectors) {
    if (vectors.empty()) return Subspace(ambient);
    return span(Matrix<K>::from_rows(ambient, vectors));
  }
  static Subspace whole(std::size_t n) { return span(Matrix<K>::identity(n)); }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  bool is_zero() const { return pivots_.empty(); }
  const Matrix<K>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec<K> basis_vector(std::size_t i) const { return basis_.row_vec(i); }
  std::vector<Vec<K>> basis_vectors() const {
    std::vector<Vec<K>> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_vector(i));
    return out;
  }

  /// v minus its component along the basis; zero at every pivot column.
  Vec<K> reduce(Vec<K> v) const {
    check(v.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      K c = v[pivots_[i]];
      if (!c.is_zero()) axpy<K>(v, -c, basis_.row(i));
    }
    return v;
  }

  bool contains(const Vec<K>& v) const { return is_zero_vec<K>(reduce(v)); }

  /// Coordinates of v in the stored basis, or nullopt if v is not a member.
  std::optional<Vec<K>> coords(const Vec<K>& v) const {
    if (!contains(v)) return std::nullopt;
    return coords_unchecked(v);
  }
  Vec<K> coords_unchecked(const Vec<K>& v) const {
    Vec<K> c;
    c.reserve(dim());
    for (auto p : pivots_) c.push_back(v[p]);
    return c;
  }
  /// Inverse of coords.
  Vec<K> combine(const Vec<K>& c) const {
    if (c.size() != dim()) throw ShapeError("coordinate length does not match subspace dimension");
    Vec<K> v = zero_vec<K>(ambient_);
    for (std::size_t i = 0; i < dim(); ++i) axpy<K>(v, c[i], basis_.row(i));
    return v;
  }

  bool is_subspace_of(const Subspace& w) const {
    check(w.ambient_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (!w.contains(basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    a.check(b.ambient_);
    return span(Matrix<K>::vstack(a.basis_, b.basis_));
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check(b.ambient_);
    if (a.is_zero() || b.is_zero()) return Subspace(a.ambient_);
    // x in both  <=>  x = sum u_i a_i = sum w_j b_j; solve [A^T | -B^T] (u,w) = 0.
    const std::size_t n = a.ambient_, da = a.dim(), db = b.dim();
    Matrix<K> sys(n, da + db);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t r = 0; r < n; ++r) sys(r, i) = a.basis_(i, r);
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t r = 0; r < n; ++r) sys(r, da + j) = -b.basis_(j, r);
    auto e = rref(sys);
    std::vector<Vec<K>> gens;
    std::vector<bool> is_pivot(da + db, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < da + db; ++f) {
      if (is_pivot[f]) continue;
      Vec<K> sol = zero_vec<K>(da + db);
      sol[f] = K(1);
      for (std::size_t r = 0; r < e.rank(); ++r) sol[e.pivots[r]] = -e.rows(r, f);
      Vec<K> x = zero_vec<K>(n);
      for (std::size_t i = 0; i < da; ++i) axpy<K>(x, sol[i], a.basis_.row(i));
      gens.push_back(std::move(x));
    }
    return span(n, gens);
  }

 private:
  void check(std::size_t n) const {
    if (n != ambient_) throw ShapeError("ambient dimension mismatch");
  }

  std::size_t ambient_ = 0;
  Matrix<K> basis_;
  std::vector<std::size_t> pivots_;
};

/// Coset representatives of V/W (W must lie in V), reduced against W.
template <FieldScalar K>
std::vector<Vec<K>> quotient_basis(const Subspace<K>& v, const Subspace<K>& w) {
  if (v.ambient() != w.ambient()) throw ShapeError("ambient dimension mismatch");
  if (!w.is_subspace_of(v)) throw ValidationError("quotient_basis: W is not contained in V");
  std::vector<Vec<K>> residues;
  for (std::size_t i = 0; i < v.dim(); ++i) residues.push_back(w.reduce(v.basis_vector(i)));
  return Subspace<K>::span(v.ambient(), residues).basis_vectors();
}

/**
 * Coordinates on a quotient V/W. Members of V are reduced modulo W and then
 * read off in the canonical representative basis.
 */
template <FieldScalar K>
class QuotientCoords {
 public:
  QuotientCoords() = default;
  QuotientCoords(const Subspace<K>& v, Subspace<K> w)
      : w_(std::move(w)), reps_(Subspace<K>::span(v.ambient(), quotient_basis(v, w_))) {}

  std::size_t dim() const { return reps_.dim(); }
  const Subspace<K>& modulus() const { return w_; }
  const Subspace<K>& representatives() const { return reps_; }
  Vec<K> representative(std::size_t i) const { return reps_.basis_vector(i); }

  /// Caller guarantees v is a member of V.
  Vec<K> coords(const Vec<K>& v) const {
    Vec<K> r = w_.reduce(v);
    return reps_.coords_unchecked(r);
  }
  bool is_trivial(const Vec<K>& v) const { return w_.contains(v); }
  Vec<K> lift(const Vec<K>& c) const { return reps_.combine(c); }

 private:
  Subspace<K> w_;
  Subspace<K> reps_;
};

}  // namespace kb
