#pragma once

/**
 * @file almost.hpp
 * @brief Almost modules for an idempotent ideal a: the Serre/adjoint check on
 * a^perp, the corner model Mod eRe of Mod(R, a), and the ideal of maps
 * killed by Hom(-, Sigma^n Cone(a (x) a -> R)).
 *
 * a^perp = { M : M a = 0 } (elements of R act as maps R -> R by left multiplication).
 */

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kb/algebra/bimodule.hpp"
#include "kb/functors/subcat.hpp"
#include "kb/ideals/hom_ideal.hpp"

namespace kb {

template <FieldScalar K>
using NamedModule = std::pair<std::string, Module<K>>;

template <FieldScalar K>
bool in_perp(const Module<K>& m, const TwoSidedIdeal<K>& a) {
  return annihilated_by_ideal(m, a.space);
}

struct AdjunctionRow {
  std::string module;  // M
  std::string sample;  // N in a^perp
  std::size_t hom_quotient = 0, hom_m_to_n = 0;   // dim Hom(M/Ma, N), dim Hom(M, N)
  std::size_t hom_to_ann = 0, hom_n_to_m = 0;     // dim Hom(N, ann_M a), dim Hom(N, M)
  bool holds() const { return hom_quotient == hom_m_to_n && hom_to_ann == hom_n_to_m; }
};

/// 0 -> a/a^2 -> R/a^2 -> R/a -> 0 with both ends in a^perp and the middle outside.
template <FieldScalar K>
struct SerreWitness {
  ShortExact<K> sequence;
  bool sub_in_perp = false, quotient_in_perp = false, middle_in_perp = true;
  bool verify(const TwoSidedIdeal<K>& a) const {
    return sequence.verify() && in_perp(sequence.sub, a) == sub_in_perp && in_perp(sequence.quotient, a) == quotient_in_perp &&
           in_perp(sequence.middle, a) == middle_in_perp && sub_in_perp && quotient_in_perp && !middle_in_perp;
  }
};

template <FieldScalar K>
struct SerreReport {
  bool idempotent = false;
  std::vector<AdjunctionRow> rows;  // only for idempotent a
  bool adjunctions_hold = true;
  std::optional<SerreWitness<K>> witness;  // only for non-idempotent a
};

/**
 * Idempotent a: checks dim Hom(M/Ma, N) = dim Hom(M, N) and dim Hom(N, ann_M a) = dim Hom(N, M)
 * for every fixture M and every N in a^perp drawn from the fixtures, their
 * quotients M/Ma and their annihilator submodules. Otherwise builds the witness.
 */
template <FieldScalar K>
SerreReport<K> serre_adjoint_report(const TwoSidedIdeal<K>& a, const std::vector<NamedModule<K>>& fixtures) {
  SerreReport<K> rep;
  const auto& r = a.algebra;
  rep.idempotent = is_idempotent(a);
  if (!rep.idempotent) {
    auto a2 = ideal_square(a);
    auto reg = Module<K>::regular(r);
    auto w = quotient_module(reg, a2.space);
    // a/a^2 inside R/a^2
    std::vector<Vec<K>> imgs;
    for (const auto& v : a.space.basis_vectors()) imgs.push_back(w.projection.apply(v));
    auto sub = Subspace<K>::span(w.module.dim(), imgs);
    SerreWitness<K> sw{short_exact_from(w.module, sub)};
    sw.sub_in_perp = in_perp(sw.sequence.sub, a);
    sw.quotient_in_perp = in_perp(sw.sequence.quotient, a);
    sw.middle_in_perp = in_perp(sw.sequence.middle, a);
    if (!sw.verify(a)) throw std::logic_error("serre_adjoint_report: witness failed verification");
    rep.witness = std::move(sw);
    return rep;
  }
  std::vector<NamedModule<K>> samples;
  for (const auto& [name, m] : fixtures) {
    if (m.algebra() != r) throw ShapeError("serre_adjoint_report: fixture module over another algebra");
    if (in_perp(m, a)) samples.emplace_back(name, m);
    samples.emplace_back(name + "/" + name + "a", quotient_module(m, product_submodule(m, a.space)).module);
    samples.emplace_back("ann_" + name + "(a)", submodule(m, annihilated_by(m, a.space)).module);
  }
  for (const auto& [mname, m] : fixtures) {
    auto q = quotient_module(m, product_submodule(m, a.space)).module;
    auto ann = submodule(m, annihilated_by(m, a.space)).module;
    for (const auto& [nname, n] : samples) {
      AdjunctionRow row{mname, nname, hom_dim(q, n), hom_dim(m, n), hom_dim(n, ann), hom_dim(n, m)};
      rep.adjunctions_hold = rep.adjunctions_hold && row.holds();
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

struct CornerRow {
  std::string module;
  std::size_t dim = 0, corner_dim = 0;
  bool in_perp = false;
};

template <FieldScalar K>
struct AlmostQuotientReport {
  CornerAlgebra<K> corner;
  TwoSidedIdeal<K> ideal;     // ReR
  std::vector<CornerRow> rows;
  std::size_t sequences_checked = 0;
  bool exact = true;           // M -> Me preserves every supplied short exact sequence
  bool perp_vanishes = true;   // M in a^perp implies Me = 0
};

/// M -> Me into right eRe-modules, the model of Mod(R, ReR).
template <FieldScalar K>
AlmostQuotientReport<K> almost_quotient(const AlgebraPtr<K>& r, const Vec<K>& e, const std::vector<NamedModule<K>>& fixtures,
                                        const std::vector<ShortExact<K>>& sequences = {}) {
  AlmostQuotientReport<K> rep{corner_algebra(r, e), generated_by(r, e), {}, 0, true, true};
  for (const auto& [name, m] : fixtures) {
    auto me = apply_corner(rep.corner, m);
    CornerRow row{name, m.dim(), me.dim(), in_perp(m, rep.ideal)};
    if (row.in_perp && row.corner_dim != 0) rep.perp_vanishes = false;
    rep.rows.push_back(std::move(row));
  }
  for (const auto& s : sequences) {
    if (!s.verify()) throw ValidationError("almost_quotient: supplied sequence is not short exact");
    ShortExact<K> img{apply_corner(rep.corner, s.sub), apply_corner(rep.corner, s.middle), apply_corner(rep.corner, s.quotient),
                      apply_corner_map(rep.corner, s.sub, s.middle, s.inclusion),
                      apply_corner_map(rep.corner, s.middle, s.quotient, s.projection)};
    ++rep.sequences_checked;
    rep.exact = rep.exact && img.verify();
  }
  return rep;
}

template <FieldScalar K>
struct AlmostDerivedReport {
  std::size_t dim_a = 0, dim_tensor = 0;
  bool a_projective = false;        // a as a right R-module
  bool tensor_projective = false;   // a (x)_R a as a right R-module
  bool tensor_flat = false;         // a (x)_R a projective as a left module, i.e. over R^op
  ProjComplex<K> tensor_complex;    // the projective a (x) a as a stalk
  GradedMap<K> mu;                  // a (x) a -> R
  ProjComplex<K> cone;              // C
  bool cone_contractible = false;
  int window_lo = 0, window_hi = 0; // shifts n with Sigma^n C tested
  HomIdeal<K> ideal;                // maps killed by every Hom(-, Sigma^n C)
  bool two_sided = false;
  bool idempotent = false;
  std::string window;
};

namespace detail {

// P -> R as a block map between stalks, from the images of the cover generators.
template <FieldScalar K>
GradedMap<K> block_map_to_regular(const ProjectiveLayout<K>& p, const std::vector<Vec<K>>& images) {
  const auto& r = p.algebra();
  std::vector<std::size_t> all(r->num_idempotents());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto src = ProjComplex<K>::stalk(r, p.summands(), 0);
  auto tgt = ProjComplex<K>::stalk(r, all, 0);
  BlockMatrix<K> m(r, all, p.summands());
  for (std::size_t k = 0; k < p.size(); ++k)
    for (std::size_t t = 0; t < all.size(); ++t) m.at(t, k) = r->mul(r->idempotent(t), images[k]);
  auto out = GradedMap<K>::zero(src, tgt, 0);
  if (!src.empty() && !tgt.empty()) out.set(0, std::move(m));
  return out;
}

}  // namespace detail

/**
 * Cone of a (x)_R a -> R and the ideal of maps in the window S annihilating
 * Sigma^n C for n in [window_lo, window_hi]. By default the range is every n
 * for which some Hom(X, Sigma^n C), X in S, can be nonzero by degree overlap.
 */
template <FieldScalar K>
AlmostDerivedReport<K> almost_derived_ideal(const TwoSidedIdeal<K>& a, const typename FiniteSubcat<K>::Ptr& s,
                                            std::optional<std::pair<int, int>> window = std::nullopt) {
  const auto& r = a.algebra;
  if (s->algebra() != r) throw ShapeError("almost_derived_ideal: window over another algebra");
  if (!is_idempotent(a)) throw ValidationError("almost_derived_ideal: ideal is not idempotent");
  AlmostDerivedReport<K> rep;
  rep.dim_a = a.dim();
  auto rad = radical(r);
  auto ba = Bimodule<K>::of_ideal(a);
  rep.a_projective = is_projective(ba.right_module(), rad);
  auto t = bimodule_tensor(ba, ba);
  rep.dim_tensor = t.dim();
  auto cover = projective_cover(t.module, rad);
  rep.tensor_projective = cover.is_iso();
  if (!rep.a_projective || !rep.tensor_projective)
    throw ValidationError("almost_derived_ideal: a or a (x)_R a is not projective as a right module");
  auto rop = opposite(*r);
  rep.tensor_flat = is_projective(t.bimodule->left_module_over(rop), radical(rop));

  // mu on the class of a_i (x) a_j is a_i a_j; generators are classes in T
  std::vector<Vec<K>> mult_cols;
  for (std::size_t k = 0; k < t.dim(); ++k) {
    const Vec<K> rep_k = t.quotient.representative(k);
    Vec<K> x = zero_vec<K>(r->dim());
    for (std::size_t f = 0; f < rep_k.size(); ++f) {
      if (rep_k[f].is_zero()) continue;
      auto prod = r->mul(a.space.basis_vector(f / t.dim_b), a.space.basis_vector(f % t.dim_b));
      for (std::size_t q = 0; q < x.size(); ++q) x[q] += rep_k[f] * prod[q];
    }
    mult_cols.push_back(std::move(x));
  }
  const Matrix<K> mult = Matrix<K>::from_columns(r->dim(), mult_cols);
  std::vector<Vec<K>> images;
  for (const auto& g : cover.generators) images.push_back(mult.apply(g));
  rep.mu = detail::block_map_to_regular(cover.layout, images);
  rep.tensor_complex = rep.mu.source();
  if (!is_chain_map(rep.mu)) throw std::logic_error("almost_derived_ideal: multiplication is not a module map");
  rep.cone = cone(rep.mu).cone;
  rep.cone_contractible = contraction(rep.cone).has_value();

  int lo = 0, hi = -1;
  if (window) {
    std::tie(lo, hi) = *window;
  } else if (!rep.cone.empty() && s->size() > 0) {
    int xlo = s->object(0).complex.lo(), xhi = s->object(0).complex.hi();
    for (std::size_t i = 0; i < s->size(); ++i) {
      const auto& x = s->object(i).complex;
      if (x.empty()) continue;
      xlo = std::min(xlo, x.lo());
      xhi = std::max(xhi, x.hi());
    }
    lo = rep.cone.lo() - xhi;
    hi = rep.cone.hi() - xlo;
  }
  rep.window_lo = lo;
  rep.window_hi = hi;

  rep.ideal = HomIdeal<K>::zero(s);
  std::vector<std::vector<HomSpace<K>>> to_c(s->size());  // to_c[i][n - lo] = Hom(X_i, Sigma^n C)
  for (std::size_t i = 0; i < s->size(); ++i)
    for (int n = lo; n <= hi; ++n) to_c[i].push_back(HomSpace<K>::compute(s->object(i).complex, rep.cone.shift(n)));
  for (std::size_t i = 0; i < s->size(); ++i)
    for (std::size_t j = 0; j < s->size(); ++j) {
      const auto& hij = s->hom(i, j);
      std::vector<Vec<K>> rows;  // one linear functional per (n, psi) and target coordinate
      std::vector<Vec<K>> cols(hij.dim());
      for (std::size_t ni = 0; ni < to_c[j].size(); ++ni) {
        const auto& hjc = to_c[j][ni];
        const auto& hic = to_c[i][ni];
        for (std::size_t b = 0; b < hjc.dim(); ++b)
          for (std::size_t c = 0; c < hij.dim(); ++c) {
            auto v = hic.class_coords(compose(hjc.basis(b), hij.basis(c)));
            cols[c].insert(cols[c].end(), v.begin(), v.end());
          }
      }
      const std::size_t height = cols.empty() ? 0 : cols[0].size();
      rep.ideal.set(i, j, height == 0 ? Subspace<K>::whole(hij.dim()) : kernel(Matrix<K>::from_columns(height, cols)));
    }
  rep.two_sided = is_two_sided(rep.ideal);
  rep.idempotent = rep.two_sided && is_idempotent(rep.ideal);
  rep.window = s->description() + ", n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  return rep;
}

/// A homotopy equivalence X -> Y among the hom-space basis elements and their sum, if one is there.
template <FieldScalar K>
std::optional<GradedMap<K>> find_equivalence(const ProjComplex<K>& x, const ProjComplex<K>& y) {
  auto h = HomSpace<K>::compute(x, y);
  std::vector<GradedMap<K>> candidates = h.basis();
  if (h.dim() > 1) {
    auto sum = GradedMap<K>::zero(x, y, 0);
    for (const auto& b : candidates) sum = sum + b;
    candidates.push_back(sum);
  }
  if (h.dim() == 0 && contraction(x) && contraction(y)) return GradedMap<K>::zero(x, y, 0);
  for (const auto& c : candidates)
    if (equivalence_certificate(c)) return c;
  return std::nullopt;
}

}  // namespace kb
