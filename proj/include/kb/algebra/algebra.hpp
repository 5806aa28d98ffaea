#pragma once

/**
 * @file algebra.hpp
 * @brief Finite-dimensional algebras given by structure constants.
 *
 * An algebra is a basis b_0..b_{n-1}, a table with b_i b_j = sum_l c[i][j][l] b_l,
 * a unit and a complete list of orthogonal idempotents e_1..e_m. Elements are
 * coefficient vectors. Validation checks every invariant and reports the first
 * failing witness.
 */

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kb/linalg/solve.hpp"

namespace kb {

/// Validation failure with the offending basis indices.
class AlgebraError : public ValidationError {
 public:
  enum class Kind { Shape, NonAssociative, Unit, Idempotent, RingMap };
  AlgebraError(Kind kind, std::vector<std::size_t> witness, const std::string& what)
      : ValidationError(what), kind_(kind), witness_(std::move(witness)) {}
  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  Kind kind_;
  std::vector<std::size_t> witness_;
};

/// Unvalidated presentation as read from a fixture.
template <FieldScalar K>
struct AlgebraData {
  FieldSpec field;
  std::vector<std::string> names;
  std::vector<std::vector<Vec<K>>> table;  // table[i][j] = b_i * b_j
  Vec<K> unit;
  std::vector<Vec<K>> idempotents;
  bool primitive = false;  // claimed, not verified
};

template <FieldScalar K>
class Algebra;

template <FieldScalar K>
using AlgebraPtr = std::shared_ptr<const Algebra<K>>;

template <FieldScalar K>
class Algebra {
 public:
  /// Checks shape, associativity, unit and the idempotent system.
  static AlgebraPtr<K> validate(AlgebraData<K> raw) {
    const std::size_t n = raw.names.size();
    auto shape_fail = [](std::vector<std::size_t> w, const std::string& msg) {
      return AlgebraError(AlgebraError::Kind::Shape, std::move(w), msg);
    };
    if (n == 0) throw shape_fail({}, "algebra must have positive dimension");
    if (raw.table.size() != n) throw shape_fail({}, "structure table has wrong number of rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (raw.table[i].size() != n) throw shape_fail({i}, "structure table row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < n; ++j)
        if (raw.table[i][j].size() != n)
          throw shape_fail({i, j}, "structure constants for (" + raw.names[i] + "," + raw.names[j] + ") have wrong length");
    }
    if (raw.unit.size() != n) throw shape_fail({}, "unit has wrong length");
    for (const auto& e : raw.idempotents)
      if (e.size() != n) throw shape_fail({}, "idempotent has wrong length");

    auto alg = std::shared_ptr<Algebra>(new Algebra(std::move(raw)));
    alg->check_associative();
    alg->check_unit();
    alg->check_idempotents();
    alg->build_corners();
    return alg;
  }

  std::size_t dim() const { return data_.names.size(); }
  const FieldSpec& field() const { return data_.field; }
  const std::vector<std::string>& names() const { return data_.names; }
  const AlgebraData<K>& data() const { return data_; }
  bool primitive_claimed() const { return data_.primitive; }

  const Vec<K>& product(std::size_t i, std::size_t j) const { return data_.table[i][j]; }
  const Vec<K>& unit() const { return data_.unit; }
  const std::vector<Vec<K>>& idempotents() const { return data_.idempotents; }
  const Vec<K>& idempotent(std::size_t i) const { return data_.idempotents.at(i); }
  std::size_t num_idempotents() const { return data_.idempotents.size(); }

  Vec<K> zero() const { return zero_vec<K>(dim()); }
  Vec<K> basis_element(std::size_t i) const {
    Vec<K> v = zero();
    v[i] = K(1);
    return v;
  }
  Vec<K> scalar(const K& c) const { return scale(c, data_.unit); }

  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const {
    const std::size_t n = dim();
    if (a.size() != n || b.size() != n) throw ShapeError("algebra element has wrong length");
    Vec<K> r = zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j].is_zero()) continue;
        axpy<K>(r, a[i] * b[j], data_.table[i][j]);
      }
    }
    return r;
  }
  Vec<K> mul(const Vec<K>& a, const Vec<K>& b, const Vec<K>& c) const { return mul(mul(a, b), c); }

  /// Matrix of x -> a x on column coordinate vectors.
  Matrix<K> left_mult(const Vec<K>& a) const {
    std::vector<Vec<K>> cols;
    for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(a, basis_element(j)));
    return Matrix<K>::from_columns(dim(), cols);
  }
  /// Matrix of x -> x a.
  Matrix<K> right_mult(const Vec<K>& a) const {
    std::vector<Vec<K>> cols;
    for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(basis_element(j), a));
    return Matrix<K>::from_columns(dim(), cols);
  }

  /// e_i R e_j as a subspace of R.
  const Subspace<K>& corner(std::size_t i, std::size_t j) const { return corners_.at(i * num_idempotents() + j); }
  /// e_i R, the indecomposable-by-declaration projective right module.
  const Subspace<K>& right_ideal(std::size_t i) const { return right_ideals_.at(i); }

  bool is_idempotent(const Vec<K>& e) const { return mul(e, e) == e; }

  std::string element_str(const Vec<K>& v) const {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += (v[i] == K(1) ? "" : v[i].str() + "*") + data_.names[i];
    }
    return s.empty() ? "0" : s;
  }

 private:
  explicit Algebra(AlgebraData<K> d) : data_(std::move(d)) {}

  void check_associative() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec<K> ij = data_.table[i][j];
        for (std::size_t l = 0; l < n; ++l) {
          if (mul(ij, basis_element(l)) != mul(basis_element(i), data_.table[j][l]))
            throw AlgebraError(AlgebraError::Kind::NonAssociative, {i, j, l},
                               "multiplication not associative on (" + data_.names[i] + "," + data_.names[j] + "," +
                                   data_.names[l] + ")");
        }
      }
  }
  void check_unit() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      Vec<K> b = basis_element(i);
      if (mul(data_.unit, b) != b || mul(b, data_.unit) != b)
        throw AlgebraError(AlgebraError::Kind::Unit, {i}, "unit is not a two-sided identity on " + data_.names[i]);
    }
  }
  void check_idempotents() const {
    const auto& es = data_.idempotents;
    if (es.empty()) throw AlgebraError(AlgebraError::Kind::Idempotent, {}, "idempotent list is empty");
    Vec<K> total = zero();
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (is_zero_vec<K>(es[i])) throw AlgebraError(AlgebraError::Kind::Idempotent, {i}, "idempotent " + std::to_string(i) + " is zero");
      for (std::size_t j = 0; j < es.size(); ++j) {
        Vec<K> p = mul(es[i], es[j]);
        bool ok = i == j ? p == es[i] : is_zero_vec<K>(p);
        if (!ok)
          throw AlgebraError(AlgebraError::Kind::Idempotent, {i, j},
                             i == j ? "e_" + std::to_string(i) + " is not idempotent"
                                    : "e_" + std::to_string(i) + " e_" + std::to_string(j) + " != 0");
      }
      total = add(total, es[i]);
    }
    if (total != data_.unit) throw AlgebraError(AlgebraError::Kind::Idempotent, {}, "idempotents do not sum to the unit");
  }
  void build_corners() {
    const std::size_t m = num_idempotents();
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Vec<K>> gens;
      for (std::size_t b = 0; b < dim(); ++b) gens.push_back(mul(data_.idempotents[i], basis_element(b)));
      right_ideals_.push_back(Subspace<K>::span(dim(), gens));
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Vec<K>> gens;
        for (std::size_t b = 0; b < dim(); ++b) gens.push_back(mul(data_.idempotents[i], basis_element(b), data_.idempotents[j]));
        corners_.push_back(Subspace<K>::span(dim(), gens));
      }
  }

  AlgebraData<K> data_;
  std::vector<Subspace<K>> corners_;
  std::vector<Subspace<K>> right_ideals_;
};

/// Opposite algebra: same basis, b_i *op b_j = b_j b_i.
template <FieldScalar K>
AlgebraPtr<K> opposite(const Algebra<K>& r) {
  AlgebraData<K> d = r.data();
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j) d.table[i][j] = r.product(j, i);
  return Algebra<K>::validate(std::move(d));
}

/// Unital algebra homomorphism given by the images of basis elements.
template <FieldScalar K>
class RingMap {
 public:
  RingMap() = default;
  /// `images` has one column per source basis element.
  static RingMap validate(AlgebraPtr<K> source, AlgebraPtr<K> target, Matrix<K> images) {
    if (images.rows() != target->dim() || images.cols() != source->dim())
      throw AlgebraError(AlgebraError::Kind::Shape, {}, "ring map matrix has wrong shape");
    RingMap f(std::move(source), std::move(target), std::move(images));
    const std::size_t n = f.source_->dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (f(f.source_->product(i, j)) != f.target_->mul(f.image(i), f.image(j)))
          throw AlgebraError(AlgebraError::Kind::RingMap, {i, j},
                             "ring map not multiplicative on (" + f.source_->names()[i] + "," + f.source_->names()[j] + ")");
    if (f(f.source_->unit()) != f.target_->unit())
      throw AlgebraError(AlgebraError::Kind::RingMap, {}, "ring map is not unital");
    return f;
  }
  static RingMap identity(AlgebraPtr<K> r) {
    auto m = Matrix<K>::identity(r->dim());
    return RingMap(r, r, std::move(m));
  }

  const AlgebraPtr<K>& source() const { return source_; }
  const AlgebraPtr<K>& target() const { return target_; }
  const Matrix<K>& matrix() const { return images_; }
  Vec<K> image(std::size_t i) const { return images_.col_vec(i); }
  Vec<K> operator()(const Vec<K>& x) const { return images_.apply(x); }

 private:
  RingMap(AlgebraPtr<K> s, AlgebraPtr<K> t, Matrix<K> m) : source_(std::move(s)), target_(std::move(t)), images_(std::move(m)) {}

  AlgebraPtr<K> source_, target_;
  Matrix<K> images_;
};

}  // namespace kb
