#pragma once

/**
 * @file resolution.hpp
 * @brief Minimal projective resolutions, Tor, and the homological epimorphism test.
 *
 * maps[0] is the augmentation P_0 -> M; maps[i] for i >= 1 is d_i : P_i -> P_{i-1},
 * all as k-linear matrices in ProjectiveLayout coordinates.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kb/algebra/bimodule.hpp"
#include "kb/homcat/complex.hpp"

namespace kb {

template <FieldScalar K>
struct ResolutionPrefix {
  Module<K> module;
  std::vector<ProjectiveLayout<K>> terms;  // P_0 .. P_n
  std::vector<Matrix<K>> maps;             // augmentation, d_1 .. d_n
  std::vector<std::vector<Vec<K>>> generators;  // generators[i][k]: image in P_{i-1} (or M) of block k of P_i
  bool terminated = false;                 // the kernel of the last map is zero

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }

  /// d_i as a block matrix of algebra elements, i >= 1.
  BlockMatrix<K> block_differential(std::size_t i) const {
    const auto& src = terms.at(i);
    const auto& tgt = terms.at(i - 1);
    BlockMatrix<K> b(src.algebra(), tgt.summands(), src.summands());
    for (std::size_t k = 0; k < src.size(); ++k)
      for (std::size_t t = 0; t < tgt.size(); ++t) b.at(t, k) = tgt.element(generators[i][k], t);
    return b;
  }

  /// P_n -> ... -> P_0 in degrees -n .. 0.
  ProjComplex<K> complex() const {
    const auto& r = module.algebra();
    if (terms.empty() || module.dim() == 0) return ProjComplex<K>::zero(r);
    const int n = static_cast<int>(length());
    std::vector<std::vector<std::size_t>> ts;
    std::vector<BlockMatrix<K>> ds;
    for (int k = n; k >= 0; --k) ts.push_back(terms[static_cast<std::size_t>(k)].summands());
    for (int k = n; k >= 1; --k) ds.push_back(block_differential(static_cast<std::size_t>(k)));
    return ProjComplex<K>::make(r, -n, std::move(ts), std::move(ds));
  }
};

/// Resolution up to P_{n_max}; stops early once a kernel vanishes.
template <FieldScalar K>
ResolutionPrefix<K> proj_resolution(const Module<K>& m, std::size_t n_max = 20) {
  const auto& r = m.algebra();
  auto rad = radical(r);
  ResolutionPrefix<K> res;
  res.module = m;
  if (m.dim() == 0) {
    res.terms.emplace_back(r, std::vector<std::size_t>{});
    res.maps.push_back(Matrix<K>(0, 0));
    res.generators.emplace_back();
    res.terminated = true;
    return res;
  }
  // current: the module being covered, with its inclusion into the previous term
  Module<K> current = m;
  Matrix<K> inclusion = Matrix<K>::identity(m.dim());
  for (std::size_t i = 0; i <= n_max; ++i) {
    auto cover = projective_cover(current, rad);
    res.terms.push_back(cover.layout);
    res.maps.push_back(inclusion * cover.map);
    std::vector<Vec<K>> gens;
    for (const auto& g : cover.generators) gens.push_back(inclusion.apply(g));
    res.generators.push_back(std::move(gens));
    Subspace<K> ker = kernel(cover.map);
    if (ker.is_zero()) {
      res.terminated = true;
      return res;
    }
    if (i == n_max) break;
    auto sub = submodule(cover.layout.module(), ker);
    current = sub.module;
    inclusion = sub.inclusion;
  }
  return res;
}

template <FieldScalar K>
struct ResolutionCheck {
  bool exact = true;
  bool minimal = true;
  std::optional<std::size_t> failing_step;
};

/// Exactness by rank counting and minimality (im d_i inside P_{i-1} rad), re-derived from the stored matrices.
template <FieldScalar K>
ResolutionCheck<K> check_resolution(const ResolutionPrefix<K>& res) {
  ResolutionCheck<K> c;
  auto rad = radical(res.module.algebra());
  const std::size_t n = res.maps.size();
  if (rank(res.maps[0]) != res.module.dim()) {
    c.exact = false;
    c.failing_step = 0;
    return c;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t dim_p = res.terms[i].dim();
    const std::size_t ker = dim_p - rank(res.maps[i]);
    const std::size_t img = i + 1 < n ? rank(res.maps[i + 1]) : 0;
    const bool last = i + 1 == n;
    if ((!last || res.terminated) && ker != img) {
      c.exact = false;
      c.failing_step = i;
      return c;
    }
    if (i + 1 < n && !(res.maps[i] * res.maps[i + 1]).is_zero()) {
      c.exact = false;
      c.failing_step = i;
      return c;
    }
    if (i >= 1) {
      Subspace<K> prad = product_submodule(res.terms[i - 1].module(), rad.space);
      for (std::size_t col = 0; col < res.maps[i].cols(); ++col)
        if (!prad.contains(res.maps[i].col_vec(col))) {
          c.minimal = false;
          c.failing_step = i;
          return c;
        }
    }
  }
  return c;
}

namespace detail {

// e_j N inside N for each idempotent, as echelon bases.
template <FieldScalar K>
std::vector<Subspace<K>> corner_pieces(const Bimodule<K>& n) {
  std::vector<Subspace<K>> out;
  const auto& r = *n.left_algebra();
  for (std::size_t j = 0; j < r.num_idempotents(); ++j) out.push_back(image(n.left_matrix(r.idempotent(j))));
  return out;
}

// d (x) N : P_i (x)_R N -> P_{i-1} (x)_R N with e_j R (x)_R N = e_j N.
template <FieldScalar K>
Matrix<K> tensor_differential(const ResolutionPrefix<K>& res, std::size_t i, const Bimodule<K>& n,
                              const std::vector<Subspace<K>>& pieces) {
  const auto& src = res.terms.at(i);
  const auto& tgt = res.terms.at(i - 1);
  std::vector<std::size_t> toff{0};
  for (auto s : tgt.summands()) toff.push_back(toff.back() + pieces[s].dim());
  std::vector<Vec<K>> cols;
  for (std::size_t k = 0; k < src.size(); ++k) {
    const auto& piece = pieces[src.summands()[k]];
    for (const auto& v : piece.basis_vectors()) {
      Vec<K> col = zero_vec<K>(toff.back());
      for (std::size_t t = 0; t < tgt.size(); ++t) {
        Vec<K> x = tgt.element(res.generators[i][k], t);
        if (is_zero_vec<K>(x)) continue;
        Vec<K> c = pieces[tgt.summands()[t]].coords_unchecked(n.left_act(x, v));
        for (std::size_t a = 0; a < c.size(); ++a) col[toff[t] + a] = c[a];
      }
      cols.push_back(std::move(col));
    }
  }
  return Matrix<K>::from_columns(toff.back(), cols);
}

template <FieldScalar K>
std::size_t tensor_term_dim(const ProjectiveLayout<K>& p, const std::vector<Subspace<K>>& pieces) {
  std::size_t d = 0;
  for (auto s : p.summands()) d += pieces[s].dim();
  return d;
}

}  // namespace detail

/**
 * dim Tor_i^R(M, N) for i = 0..i_max, where N is the left R-structure of an
 * (R, S)-bimodule. Resolves M to length i_max + 1.
 */
template <FieldScalar K>
std::vector<std::size_t> tor(const Module<K>& m, const Bimodule<K>& n, std::size_t i_max) {
  if (m.algebra() != n.left_algebra()) throw ShapeError("tor: the modules live over different algebras");
  auto res = proj_resolution(m, i_max + 1);
  auto pieces = detail::corner_pieces(n);
  std::vector<std::size_t> ranks(res.terms.size() + 1, 0);  // ranks[i] = rank(d_i (x) N), i >= 1
  for (std::size_t i = 1; i < res.terms.size(); ++i) ranks[i] = rank(detail::tensor_differential(res, i, n, pieces));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= i_max; ++i) {
    if (i >= res.terms.size()) {
      out.push_back(0);
      continue;
    }
    std::size_t d = detail::tensor_term_dim(res.terms[i], pieces);
    out.push_back(d - ranks[i] - ranks[i + 1]);
  }
  return out;
}

enum class HepiStatus { Certified, Refuted, Inconclusive };

inline std::string to_string(HepiStatus s) {
  switch (s) {
    case HepiStatus::Certified: return "certified";
    case HepiStatus::Refuted: return "refuted";
    case HepiStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct HepiVerdict {
  std::size_t dim_s = 0;
  std::size_t dim_tensor = 0;  // dim S (x)_R S
  std::size_t mult_rank = 0;   // rank of S (x)_R S -> S
  bool mult_iso = false;
  std::vector<std::size_t> tor;  // dim Tor_i^R(S, S), i = 1..
  bool terminated = false;
  std::size_t resolution_length = 0;
  std::size_t n_max = 0;
  HepiStatus status = HepiStatus::Inconclusive;
  std::string witness;  // first failing datum for refuted, the budget for inconclusive
};

/// Decides S (x)_R S = S and Tor_i^R(S, S) = 0 for f : R -> S, up to a resolution of length n_max.
template <FieldScalar K>
HepiVerdict check_homological_epi(const RingMap<K>& f, std::size_t n_max = 20) {
  const auto& s = f.target();
  HepiVerdict v;
  v.n_max = n_max;
  v.dim_s = s->dim();
  Module<K> s_r = restrict_along(Module<K>::regular(s), f);
  Bimodule<K> s_rs = Bimodule<K>::induction(f);
  auto t = module_tensor(s_r, s_rs);
  v.dim_tensor = t.dim();
  std::vector<Vec<K>> cols;
  for (std::size_t k = 0; k < t.dim(); ++k) {
    auto [i, j] = t.representative(k);
    cols.push_back(s->product(i, j));
  }
  v.mult_rank = rank(Matrix<K>::from_columns(s->dim(), cols));
  v.mult_iso = v.dim_tensor == v.dim_s && v.mult_rank == v.dim_s;

  auto res = proj_resolution(s_r, n_max + 1);
  v.terminated = res.terminated && res.length() <= n_max;
  v.resolution_length = res.length();
  const std::size_t upto = v.terminated ? res.length() : n_max;
  auto dims = tor(s_r, s_rs, upto);
  v.tor.assign(dims.begin() + 1, dims.end());

  if (!v.mult_iso) {
    v.status = HepiStatus::Refuted;
    v.witness = v.dim_tensor != v.dim_s
                    ? "dim S (x)_R S = " + std::to_string(v.dim_tensor) + " != dim S = " + std::to_string(v.dim_s)
                    : "multiplication S (x)_R S -> S has rank " + std::to_string(v.mult_rank) + " < " + std::to_string(v.dim_s);
    return v;
  }
  for (std::size_t i = 0; i < v.tor.size(); ++i)
    if (v.tor[i] != 0) {
      v.status = HepiStatus::Refuted;
      v.witness = "dim Tor_" + std::to_string(i + 1) + "(S, S) = " + std::to_string(v.tor[i]);
      return v;
    }
  if (!v.terminated) {
    v.status = HepiStatus::Inconclusive;
    v.witness = "resolution not terminated within " + std::to_string(n_max) + " steps";
    return v;
  }
  v.status = HepiStatus::Certified;
  return v;
}

}  // namespace kb
