#pragma once

/**
 * @file complex.hpp
 * @brief Bounded complexes of finitely generated projectives e_i R.
 *
 * Conventions: cohomological grading, d^n : X^n -> X^{n+1}. A term is a list
 * of idempotent indices, the summand e_i R for each. A map between sums of
 * projectives is a block matrix with one algebra element per (target summand,
 * source summand) pair; the entry x in e_t R e_s acts by left multiplication.
 * (Sigma^k X)^n = X^{n+k} with differential (-1)^k d.
 */

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kb/algebra/cover.hpp"

namespace kb {

template <FieldScalar K>
class BlockMatrix {
 public:
  BlockMatrix() = default;
  /// Zero map from sum_j e_{cols[j]} R to sum_i e_{rows[i]} R.
  BlockMatrix(AlgebraPtr<K> r, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
      : alg_(std::move(r)), rows_(std::move(rows)), cols_(std::move(cols)),
        entries_(rows_.size() * cols_.size(), alg_->zero()) {}

  static BlockMatrix identity(const AlgebraPtr<K>& r, const std::vector<std::size_t>& summands) {
    BlockMatrix m(r, summands, summands);
    for (std::size_t i = 0; i < summands.size(); ++i) m.at(i, i) = r->idempotent(summands[i]);
    return m;
  }

  /// Glue blocks: parts[a][b] maps column group b to row group a; nullptr is zero.
  static BlockMatrix assemble(const AlgebraPtr<K>& r, const std::vector<std::vector<std::size_t>>& row_groups,
                              const std::vector<std::vector<std::size_t>>& col_groups,
                              const std::vector<std::vector<const BlockMatrix*>>& parts) {
    std::vector<std::size_t> rows, cols, roff, coff;
    for (const auto& g : row_groups) {
      roff.push_back(rows.size());
      rows.insert(rows.end(), g.begin(), g.end());
    }
    for (const auto& g : col_groups) {
      coff.push_back(cols.size());
      cols.insert(cols.end(), g.begin(), g.end());
    }
    BlockMatrix m(r, rows, cols);
    for (std::size_t a = 0; a < row_groups.size(); ++a)
      for (std::size_t b = 0; b < col_groups.size(); ++b) {
        const BlockMatrix* p = parts[a][b];
        if (!p) continue;
        if (p->rows_ != row_groups[a] || p->cols_ != col_groups[b]) throw ShapeError("assemble: block does not fit its slot");
        for (std::size_t i = 0; i < p->num_rows(); ++i)
          for (std::size_t j = 0; j < p->num_cols(); ++j) m.at(roff[a] + i, coff[b] + j) = (*p)(i, j);
      }
    return m;
  }

  const AlgebraPtr<K>& algebra() const { return alg_; }
  const std::vector<std::size_t>& row_summands() const { return rows_; }
  const std::vector<std::size_t>& col_summands() const { return cols_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_.size(); }

  const Vec<K>& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_.size() + j]; }
  Vec<K>& at(std::size_t i, std::size_t j) { return entries_[i * cols_.size() + j]; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Vec<K>& x) { return is_zero_vec<K>(x); });
  }

  /// Throws unless every entry (i, j) lies in e_{rows[i]} R e_{cols[j]}.
  void check_corners() const {
    for (std::size_t i = 0; i < num_rows(); ++i)
      for (std::size_t j = 0; j < num_cols(); ++j)
        if (!alg_->corner(rows_[i], cols_[j]).contains((*this)(i, j)))
          throw ValidationError("block entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                alg_->element_str((*this)(i, j)) + " is not in e" + std::to_string(rows_[i]) + " R e" +
                                std::to_string(cols_[j]));
  }

  friend BlockMatrix operator*(const BlockMatrix& b, const BlockMatrix& a) {
    if (b.cols_ != a.rows_) throw ShapeError("block matrix product: summand mismatch");
    BlockMatrix c(a.alg_ ? a.alg_ : b.alg_, b.rows_, a.cols_);
    for (std::size_t i = 0; i < b.num_rows(); ++i)
      for (std::size_t k = 0; k < b.num_cols(); ++k) {
        const auto& x = b(i, k);
        if (is_zero_vec<K>(x)) continue;
        for (std::size_t j = 0; j < a.num_cols(); ++j) {
          const auto& y = a(k, j);
          if (is_zero_vec<K>(y)) continue;
          c.at(i, j) = add(c(i, j), c.alg_->mul(x, y));
        }
      }
    return c;
  }
  friend BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b) {
    a.check_same(b);
    BlockMatrix c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] = add(a.entries_[k], b.entries_[k]);
    return c;
  }
  friend BlockMatrix operator-(const BlockMatrix& a, const BlockMatrix& b) {
    a.check_same(b);
    BlockMatrix c = a;
    for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] = sub(a.entries_[k], b.entries_[k]);
    return c;
  }
  BlockMatrix operator-() const { return scaled(K(-1)); }
  BlockMatrix scaled(const K& c) const {
    BlockMatrix m = *this;
    for (auto& e : m.entries_) e = scale(c, e);
    return m;
  }
  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  /// The k-linear map between the layouts of the column and row sums.
  Matrix<K> linear() const {
    ProjectiveLayout<K> src(alg_, cols_), dst(alg_, rows_);
    Matrix<K> m(dst.dim(), src.dim());
    for (std::size_t j = 0; j < num_cols(); ++j) {
      const auto& ideal = alg_->right_ideal(cols_[j]);
      for (std::size_t b = 0; b < ideal.dim(); ++b) {
        Vec<K> u = ideal.basis_vector(b);
        for (std::size_t i = 0; i < num_rows(); ++i) {
          if (is_zero_vec<K>((*this)(i, j))) continue;
          Vec<K> c = alg_->right_ideal(rows_[i]).coords_unchecked(alg_->mul((*this)(i, j), u));
          for (std::size_t t = 0; t < c.size(); ++t) m(dst.offset(i) + t, src.offset(j) + b) = c[t];
        }
      }
    }
    return m;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < num_rows(); ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < num_cols(); ++j) os << (j ? ", " : "") << alg_->element_str((*this)(i, j));
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same(const BlockMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw ShapeError("block matrix shape mismatch");
  }

  AlgebraPtr<K> alg_;
  std::vector<std::size_t> rows_, cols_;
  std::vector<Vec<K>> entries_;
};

/// Bounded complex of projectives, normalized so the outermost terms are nonzero.
template <FieldScalar K>
class ProjComplex {
 public:
  using Term = std::vector<std::size_t>;

  ProjComplex() = default;

  /// diffs[k] : terms[k] -> terms[k+1]; validates corners and d o d = 0.
  static ProjComplex make(AlgebraPtr<K> r, int lo, std::vector<Term> terms, std::vector<BlockMatrix<K>> diffs) {
    if (!terms.empty() && diffs.size() + 1 != terms.size())
      throw ShapeError("complex needs exactly one differential between consecutive terms");
    ProjComplex x(std::move(r), lo, std::move(terms), std::move(diffs));
    x.check();
    x.normalize();
    return x;
  }
  static ProjComplex zero(AlgebraPtr<K> r) { return ProjComplex(std::move(r), 0, {}, {}); }
  static ProjComplex stalk(AlgebraPtr<K> r, Term summands, int degree) {
    return make(std::move(r), degree, {std::move(summands)}, {});
  }

  const AlgebraPtr<K>& algebra() const { return alg_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  /// Number of degrees spanned.
  std::size_t length() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  const Term& term(int n) const {
    static const Term none;
    if (n < lo_ || n > hi()) return none;
    return terms_[static_cast<std::size_t>(n - lo_)];
  }
  /// d^n : X^n -> X^{n+1}; a zero block outside the stored range.
  BlockMatrix<K> d(int n) const {
    if (n >= lo_ && n < hi()) return diffs_[static_cast<std::size_t>(n - lo_)];
    return BlockMatrix<K>(alg_, term(n + 1), term(n));
  }
  ProjectiveLayout<K> layout(int n) const { return ProjectiveLayout<K>(alg_, term(n)); }
  std::size_t total_summands() const {
    std::size_t s = 0;
    for (const auto& t : terms_) s += t.size();
    return s;
  }

  /// Sigma^k X.
  ProjComplex shift(int k) const {
    ProjComplex x = *this;
    if (terms_.empty()) return x;
    x.lo_ = lo_ - k;
    if (k % 2 != 0)
      for (auto& m : x.diffs_) m = -m;
    return x;
  }

  friend ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const int lo = std::min(a.lo_, b.lo_), hi = std::max(a.hi(), b.hi());
    std::vector<Term> terms;
    std::vector<BlockMatrix<K>> diffs;
    for (int n = lo; n <= hi; ++n) {
      Term t = a.term(n);
      t.insert(t.end(), b.term(n).begin(), b.term(n).end());
      terms.push_back(std::move(t));
    }
    for (int n = lo; n < hi; ++n) {
      auto da = a.d(n), db = b.d(n);
      diffs.push_back(BlockMatrix<K>::assemble(a.alg_, {a.term(n + 1), b.term(n + 1)}, {a.term(n), b.term(n)},
                                               {{&da, nullptr}, {nullptr, &db}}));
    }
    return make(a.alg_, lo, std::move(terms), std::move(diffs));
  }

  friend bool operator==(const ProjComplex& a, const ProjComplex& b) {
    if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
    return a.lo_ == b.lo_ && a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (int n = lo_; n <= hi(); ++n) {
      os << "deg " << n << ": [";
      for (std::size_t i = 0; i < term(n).size(); ++i) os << (i ? "," : "") << "P" << term(n)[i];
      os << "]";
      if (n < hi()) os << " --" << d(n).str() << "--> ";
    }
    return os.str();
  }

 private:
  ProjComplex(AlgebraPtr<K> r, int lo, std::vector<Term> terms, std::vector<BlockMatrix<K>> diffs)
      : alg_(std::move(r)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {}

  void check() const {
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      const auto& m = diffs_[k];
      if (m.row_summands() != terms_[k + 1] || m.col_summands() != terms_[k])
        throw ShapeError("differential in degree " + std::to_string(lo_ + static_cast<int>(k)) + " does not match its terms");
      m.check_corners();
    }
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k)
      if (!(diffs_[k + 1] * diffs_[k]).is_zero())
        throw ValidationError("d o d != 0 in degree " + std::to_string(lo_ + static_cast<int>(k)));
  }

  void normalize() {
    std::size_t first = 0;
    while (first < terms_.size() && terms_[first].empty()) ++first;
    if (first == terms_.size()) {
      terms_.clear();
      diffs_.clear();
      lo_ = 0;
      return;
    }
    std::size_t last = terms_.size() - 1;
    while (terms_[last].empty()) --last;
    std::vector<Term> t(terms_.begin() + static_cast<std::ptrdiff_t>(first), terms_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    std::vector<BlockMatrix<K>> d(diffs_.begin() + static_cast<std::ptrdiff_t>(first), diffs_.begin() + static_cast<std::ptrdiff_t>(last));
    lo_ += static_cast<int>(first);
    terms_ = std::move(t);
    diffs_ = std::move(d);
  }

  AlgebraPtr<K> alg_;
  int lo_ = 0;
  std::vector<Term> terms_;
  std::vector<BlockMatrix<K>> diffs_;
};

}  // namespace kb
