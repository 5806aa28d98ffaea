#pragma once

/**
 * @file bimodule_functor.hpp
 * @brief The functor - (x)_R B : K^b(proj R) -> K^b(proj S) of an (R,S)-bimodule.
 *
 * For each source idempotent e_i the witness lists pairs (j, g) with
 * g in e_i B e_j such that theta_i : (+)_l e_{j_l} S -> e_i B, s -> sum g_l s_l,
 * is bijective. Then F(e_i R) = (+)_l e_{j_l} S, and an entry r in e_a R e_c
 * of a differential is sent to the block matrix whose column k is the
 * decomposition of r g_{c,k} along theta_a.
 */

#include <optional>
#include <utility>
#include <vector>

#include "kb/algebra/bimodule.hpp"
#include "kb/homcat/triangle.hpp"

namespace kb {

template <FieldScalar K>
struct WitnessPart {
  std::size_t target_idempotent;
  Vec<K> generator;  // element of B
};

template <FieldScalar K>
using ProjectivityWitness = std::vector<std::vector<WitnessPart<K>>>;

template <FieldScalar K>
class BimoduleFunctor {
 public:
  BimoduleFunctor() = default;

  /// Validates a supplied witness, or computes one from minimal covers of e_i B when none is given.
  static BimoduleFunctor make(Bimodule<K> b, std::optional<ProjectivityWitness<K>> witness = std::nullopt) {
    BimoduleFunctor f;
    f.bim_ = std::move(b);
    f.witness_ = witness ? std::move(*witness) : f.compute_witness();
    f.witness_supplied_ = witness.has_value();
    f.check_witness();
    return f;
  }
  static BimoduleFunctor identity(const AlgebraPtr<K>& r) {
    ProjectivityWitness<K> w;
    for (std::size_t i = 0; i < r->num_idempotents(); ++i) w.push_back({{i, r->idempotent(i)}});
    return make(Bimodule<K>::regular(r), std::move(w));
  }
  /// - (x)_R S along f : R -> S.
  static BimoduleFunctor induction(const RingMap<K>& f) { return make(Bimodule<K>::induction(f)); }
  /// Restriction of scalars along f : B -> A, i.e. - (x)_A A_B.
  static BimoduleFunctor restriction(const RingMap<K>& f) { return make(Bimodule<K>::restriction(f)); }

  const AlgebraPtr<K>& source() const { return bim_.left_algebra(); }
  const AlgebraPtr<K>& target() const { return bim_.right_algebra(); }
  const Bimodule<K>& bimodule() const { return bim_; }
  const ProjectivityWitness<K>& witness() const { return witness_; }
  bool witness_supplied() const { return witness_supplied_; }

  std::vector<std::size_t> image_term(const std::vector<std::size_t>& term) const {
    std::vector<std::size_t> out;
    for (auto i : term)
      for (const auto& p : witness_[i]) out.push_back(p.target_idempotent);
    return out;
  }

  BlockMatrix<K> apply(const BlockMatrix<K>& m) const {
    BlockMatrix<K> out(target(), image_term(m.row_summands()), image_term(m.col_summands()));
    std::size_t col = 0;
    for (std::size_t c = 0; c < m.num_cols(); ++c) {
      const auto& wc = witness_[m.col_summands()[c]];
      for (std::size_t k = 0; k < wc.size(); ++k, ++col) {
        std::size_t row = 0;
        for (std::size_t a = 0; a < m.num_rows(); ++a) {
          const std::size_t ia = m.row_summands()[a];
          const auto& wa = witness_[ia];
          if (is_zero_vec<K>(m(a, c))) {
            row += wa.size();
            continue;
          }
          Vec<K> y = bim_.left_act(m(a, c), wc[k].generator);
          Vec<K> coords = left_inverse_[ia].apply(y);
          ProjectiveLayout<K> lay(target(), targets_[ia]);
          for (std::size_t l = 0; l < wa.size(); ++l, ++row) out.at(row, col) = lay.element(coords, l);
        }
      }
    }
    return out;
  }

  ProjComplex<K> apply(const ProjComplex<K>& x) const {
    if (x.algebra() != source()) throw ShapeError("functor applied to a complex over the wrong algebra");
    if (x.empty()) return ProjComplex<K>::zero(target());
    std::vector<std::vector<std::size_t>> terms;
    std::vector<BlockMatrix<K>> diffs;
    for (int n = x.lo(); n <= x.hi(); ++n) terms.push_back(image_term(x.term(n)));
    for (int n = x.lo(); n < x.hi(); ++n) diffs.push_back(apply(x.d(n)));
    return ProjComplex<K>::make(target(), x.lo(), std::move(terms), std::move(diffs));
  }

  GradedMap<K> apply(const GradedMap<K>& f) const {
    GradedMap<K> g = GradedMap<K>::zero(apply(f.source()), apply(f.target()), f.degree());
    // the image may be trimmed, so iterate over its range
    for (int n = g.source().lo(); n <= g.source().hi(); ++n) {
      if (g.source().term(n).empty()) continue;
      g.set(n, apply(f.component(n)));
    }
    return g;
  }

 private:
  ProjectivityWitness<K> compute_witness() const {
    const auto& r = *source();
    auto rad = radical(target());
    Module<K> bs = bim_.right_module();
    ProjectivityWitness<K> w;
    for (std::size_t i = 0; i < r.num_idempotents(); ++i) {
      Subspace<K> eib = image(bim_.left_matrix(r.idempotent(i)));
      auto sub = submodule(bs, eib);
      auto cover = projective_cover(sub.module, rad);
      if (!cover.is_iso())
        throw ValidationError("e" + std::to_string(i) + " B is not projective as a right module over the target");
      std::vector<WitnessPart<K>> parts;
      for (std::size_t k = 0; k < cover.layout.size(); ++k)
        parts.push_back({cover.layout.summands()[k], sub.inclusion.apply(cover.generators[k])});
      w.push_back(std::move(parts));
    }
    return w;
  }

  void check_witness() {
    const auto& r = *source();
    const auto& s = *target();
    if (witness_.size() != r.num_idempotents()) throw ValidationError("projectivity witness needs one entry per source idempotent");
    targets_.clear();
    left_inverse_.clear();
    for (std::size_t i = 0; i < r.num_idempotents(); ++i) {
      std::vector<std::size_t> js;
      std::vector<Vec<K>> gens;
      for (const auto& p : witness_[i]) {
        if (p.target_idempotent >= s.num_idempotents()) throw ValidationError("witness names an unknown target idempotent");
        if (p.generator.size() != bim_.dim()) throw ShapeError("witness generator has the wrong length");
        Vec<K> sandwiched = bim_.right_act(bim_.left_act(r.idempotent(i), p.generator), s.idempotent(p.target_idempotent));
        if (sandwiched != p.generator)
          throw ValidationError("witness generator for e" + std::to_string(i) + " is not in e_i B e_j");
        js.push_back(p.target_idempotent);
        gens.push_back(p.generator);
      }
      ProjectiveLayout<K> lay(target(), js);
      // theta_i columns: g_l . u for u in the echelon basis of e_{j_l} S
      std::vector<Vec<K>> cols;
      for (std::size_t l = 0; l < js.size(); ++l) {
        const auto& ideal = s.right_ideal(js[l]);
        for (const auto& u : ideal.basis_vectors()) cols.push_back(bim_.right_act(gens[l], u));
      }
      Matrix<K> theta = Matrix<K>::from_columns(bim_.dim(), cols);
      Subspace<K> eib = image(bim_.left_matrix(r.idempotent(i)));
      if (rank(theta) != lay.dim() || lay.dim() != eib.dim())
        throw ValidationError("witness for e" + std::to_string(i) + " B is not a bijection onto e_i B");
      left_inverse_.push_back(left_inverse(theta));
      targets_.push_back(std::move(js));
    }
  }

  // L with L theta = I for theta of full column rank, built from a nonsingular row subset.
  static Matrix<K> left_inverse(const Matrix<K>& theta) {
    const std::size_t n = theta.cols();
    if (n == 0) return Matrix<K>(0, theta.rows());
    auto e = rref(theta.transpose());
    std::vector<Vec<K>> rows;
    for (auto p : e.pivots) rows.push_back(theta.row_vec(p));
    Matrix<K> t = Matrix<K>::from_rows(n, rows);
    auto inv = solve(t, Matrix<K>::identity(n));
    if (!inv.solution) throw std::logic_error("row subset is singular");
    Matrix<K> l(n, theta.rows());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < e.pivots.size(); ++b) l(a, e.pivots[b]) = (*inv.solution)(a, b);
    return l;
  }

  Bimodule<K> bim_;
  ProjectivityWitness<K> witness_;
  bool witness_supplied_ = false;
  std::vector<std::vector<std::size_t>> targets_;
  std::vector<Matrix<K>> left_inverse_;
};

/**
 * [F(e_i R)] in the basis [e_j S], from the tops of the right S-modules e_i B.
 * Rows are target classes, columns source classes.
 */
template <FieldScalar K>
std::vector<std::vector<long>> k0_map(const BimoduleFunctor<K>& f) {
  const auto& s = f.target();
  if (!s->primitive_claimed()) throw ValidationError("k0_map needs the target idempotents declared primitive");
  auto rad = radical(s);
  const auto& b = f.bimodule();
  Module<K> bs = b.right_module();
  std::vector<std::vector<long>> m(s->num_idempotents(), std::vector<long>(f.source()->num_idempotents(), 0));
  for (std::size_t i = 0; i < f.source()->num_idempotents(); ++i) {
    auto sub = submodule(bs, image(b.left_matrix(f.source()->idempotent(i))));
    auto tops = top_multiplicities(sub.module, rad);
    for (std::size_t j = 0; j < tops.size(); ++j) m[j][i] = static_cast<long>(tops[j]);
  }
  return m;
}

}  // namespace kb
