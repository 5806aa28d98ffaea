#pragma once

/**
 * @file subcat.hpp
 * @brief A finite, shift-closed window of objects in K^b(proj R) with cached hom spaces.
 *
 * Objects are Sigma^n X_b for each base complex X_b and each declared shift n,
 * stored base-major with shifts ascending. Composition of homotopy classes is
 * tabulated once: comp(i, j, k)[a] is the matrix of w -> class(w o basis_a)
 * from Hom(j, k) to Hom(i, k).
 */

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kb/homcat/triangle.hpp"

namespace kb {

template <FieldScalar K>
struct SubcatObject {
  std::string base;
  int shift = 0;
  ProjComplex<K> complex;

  std::string label() const {
    if (shift == 0) return base;
    return "S^" + std::to_string(shift) + " " + base;
  }
};

template <FieldScalar K>
class FiniteSubcat {
 public:
  using Ptr = std::shared_ptr<const FiniteSubcat>;

  static Ptr make(const AlgebraPtr<K>& r, const std::vector<std::pair<std::string, ProjComplex<K>>>& bases,
                  std::vector<int> shifts) {
    if (shifts.empty()) throw ValidationError("subcategory window needs at least one shift");
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
    auto s = std::shared_ptr<FiniteSubcat>(new FiniteSubcat);
    s->alg_ = r;
    s->shifts_ = shifts;
    for (const auto& [name, x] : bases) {
      if (x.algebra() != r) throw ShapeError("subcategory object " + name + " lives over another algebra");
      s->base_names_.push_back(name);
      for (int n : shifts) s->objects_.push_back({name, n, x.shift(n)});
    }
    s->build();
    return s;
  }

  /// Window {Sigma^n X : |n| <= w}.
  static Ptr symmetric(const AlgebraPtr<K>& r, const std::vector<std::pair<std::string, ProjComplex<K>>>& bases, int w) {
    std::vector<int> shifts;
    for (int n = -w; n <= w; ++n) shifts.push_back(n);
    return make(r, bases, std::move(shifts));
  }

  const AlgebraPtr<K>& algebra() const { return alg_; }
  std::size_t size() const { return objects_.size(); }
  const SubcatObject<K>& object(std::size_t i) const { return objects_.at(i); }
  const std::vector<int>& shifts() const { return shifts_; }
  const std::vector<std::string>& base_names() const { return base_names_; }

  const HomSpace<K>& hom(std::size_t i, std::size_t j) const { return homs_.at(i * size() + j); }

  std::optional<std::size_t> index(const std::string& base, int shift) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (objects_[i].base == base && objects_[i].shift == shift) return i;
    return std::nullopt;
  }
  /// Index of Sigma^s of object i, when it is in the window.
  std::optional<std::size_t> shifted(std::size_t i, int s) const { return index(objects_.at(i).base, objects_.at(i).shift + s); }
  /// First object equal to x as a complex.
  std::optional<std::size_t> find(const ProjComplex<K>& x) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (objects_[i].complex == x) return i;
    return std::nullopt;
  }

  /// Class of w o v for v in Hom(i, j), w in Hom(j, k).
  Vec<K> compose(std::size_t i, std::size_t j, std::size_t k, const Vec<K>& v, const Vec<K>& w) const {
    const auto& tab = table(i, j, k);
    Vec<K> out = zero_vec<K>(hom(i, k).dim());
    if (tab.empty()) return out;
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (v[a].is_zero()) continue;
      Vec<K> img = tab[a].apply(w);
      axpy<K>(out, v[a], img);
    }
    return out;
  }

  /// Class of Sigma^s f in Hom(Sigma^s X_i, Sigma^s X_j); both shifted objects must be in the window.
  Matrix<K> shift_matrix(std::size_t i, std::size_t j, int s) const {
    auto si = shifted(i, s), sj = shifted(j, s);
    if (!si || !sj) throw ShapeError("shift leaves the window");
    const auto& src = hom(i, j);
    const auto& dst = hom(*si, *sj);
    std::vector<Vec<K>> cols;
    for (std::size_t a = 0; a < src.dim(); ++a) cols.push_back(dst.class_coords(kb::shift(src.basis(a), s)));
    return Matrix<K>::from_columns(dst.dim(), cols);
  }

  /// Window description carried verbatim in reports.
  std::string description() const {
    std::ostringstream os;
    os << "relative to S = {S^n X : X in {";
    for (std::size_t b = 0; b < base_names_.size(); ++b) os << (b ? ", " : "") << base_names_[b];
    os << "}, n in {";
    for (std::size_t k = 0; k < shifts_.size(); ++k) os << (k ? ", " : "") << shifts_[k];
    os << "}}";
    return os.str();
  }

 private:
  FiniteSubcat() = default;

  void build() {
    const std::size_t n = size();
    homs_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) homs_.push_back(HomSpace<K>::compute(objects_[i].complex, objects_[j].complex));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (hom(i, j).dim() == 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (hom(j, k).dim() == 0) continue;
          std::vector<Matrix<K>> tab;
          const auto& hik = hom(i, k);
          for (std::size_t a = 0; a < hom(i, j).dim(); ++a) {
            auto v = hom(i, j).basis(a);
            std::vector<Vec<K>> cols;
            for (std::size_t b = 0; b < hom(j, k).dim(); ++b) cols.push_back(hik.class_coords(kb::compose(hom(j, k).basis(b), v)));
            tab.push_back(Matrix<K>::from_columns(hik.dim(), cols));
          }
          comp_.emplace(std::make_tuple(i, j, k), std::move(tab));
        }
      }
  }

  const std::vector<Matrix<K>>& table(std::size_t i, std::size_t j, std::size_t k) const {
    static const std::vector<Matrix<K>> empty;
    auto it = comp_.find(std::make_tuple(i, j, k));
    return it == comp_.end() ? empty : it->second;
  }

  AlgebraPtr<K> alg_;
  std::vector<int> shifts_;
  std::vector<std::string> base_names_;
  std::vector<SubcatObject<K>> objects_;
  std::vector<HomSpace<K>> homs_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<Matrix<K>>> comp_;
};

}  // namespace kb
