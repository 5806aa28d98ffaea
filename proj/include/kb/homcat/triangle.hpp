#pragma once

/**
 * @file triangle.hpp
 * @brief Mapping cones, homotopy equivalences and exact-triangle recognition.
 *
 * Cone(f)^m = Y^m (+) X^{m+1} with d = [[d_Y, f], [0, -d_X]], inclusion
 * iota : Y -> Cone(f) and projection pi : Cone(f) -> Sigma X.
 *
 * A candidate triangle X -a-> Y -b-> Z -g-> Sigma X is exact iff there is a
 * homotopy equivalence rho : Cone(a) -> Z with rho iota ~ b and g rho ~ pi.
 * When the triangle is exact every rho satisfying the two homotopy relations
 * is an equivalence, so a single solution of the linear system decides.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kb/homcat/hom.hpp"

namespace kb {

template <FieldScalar K>
struct ConeData {
  ProjComplex<K> cone;
  GradedMap<K> iota;  // Y -> Cone
  GradedMap<K> pi;    // Cone -> Sigma X
};

template <FieldScalar K>
ConeData<K> cone(const GradedMap<K>& f) {
  if (f.degree() != 0) throw ShapeError("cone of a map of nonzero degree");
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& r = x.algebra();
  if (x.empty() && y.empty()) {
    auto z = ProjComplex<K>::zero(r);
    return {z, GradedMap<K>::zero(y, z, 0), GradedMap<K>::zero(z, x.shift(1), 0)};
  }
  int lo = y.empty() ? x.lo() - 1 : (x.empty() ? y.lo() : std::min(y.lo(), x.lo() - 1));
  int hi = y.empty() ? x.hi() - 1 : (x.empty() ? y.hi() : std::max(y.hi(), x.hi() - 1));
  std::vector<std::vector<std::size_t>> terms;
  std::vector<BlockMatrix<K>> diffs;
  for (int m = lo; m <= hi; ++m) {
    auto t = y.term(m);
    t.insert(t.end(), x.term(m + 1).begin(), x.term(m + 1).end());
    terms.push_back(std::move(t));
  }
  for (int m = lo; m < hi; ++m) {
    auto dy = y.d(m), fm = f.component(m + 1), dx = -x.d(m + 1);
    diffs.push_back(BlockMatrix<K>::assemble(r, {y.term(m + 1), x.term(m + 2)}, {y.term(m), x.term(m + 1)},
                                             {{&dy, &fm}, {nullptr, &dx}}));
  }
  auto c = ProjComplex<K>::make(r, lo, std::move(terms), std::move(diffs));
  auto sx = x.shift(1);
  auto iota = GradedMap<K>::zero(y, c, 0);
  for (int m = y.lo(); m <= y.hi(); ++m) {
    auto id = BlockMatrix<K>::identity(r, y.term(m));
    iota.set(m, BlockMatrix<K>::assemble(r, {y.term(m), x.term(m + 1)}, {y.term(m)}, {{&id}, {nullptr}}));
  }
  auto pi = GradedMap<K>::zero(c, sx, 0);
  for (int m = c.lo(); m <= c.hi(); ++m) {
    auto id = BlockMatrix<K>::identity(r, x.term(m + 1));
    pi.set(m, BlockMatrix<K>::assemble(r, {x.term(m + 1)}, {y.term(m), x.term(m + 1)}, {{nullptr, &id}}));
  }
  return {std::move(c), std::move(iota), std::move(pi)};
}

/// Contraction of Cone(f) when f is a homotopy equivalence.
template <FieldScalar K>
std::optional<GradedMap<K>> equivalence_certificate(const GradedMap<K>& f) {
  return contraction(cone(f).cone);
}

template <FieldScalar K>
bool is_homotopy_equivalence(const GradedMap<K>& f) {
  return equivalence_certificate(f).has_value();
}

/**
 * Map Cone(f1) -> Cone(f2) from a : A1 -> A2, b : B1 -> B2 and k : A1 -> B2 of
 * degree -1 with D(k) = b f1 - f2 a; in degree m it is [[b, k], [0, a]].
 */
template <FieldScalar K>
GradedMap<K> cone_map(const GradedMap<K>& f1, const GradedMap<K>& f2, const GradedMap<K>& a, const GradedMap<K>& b,
                      const GradedMap<K>& k) {
  if (!(a.source() == f1.source()) || !(a.target() == f2.source()) || !(b.source() == f1.target()) ||
      !(b.target() == f2.target()) || !(k.source() == f1.source()) || !(k.target() == f2.target()) || k.degree() != -1)
    throw ShapeError("cone_map: maps do not form a square");
  if (!verify_homotopy(compose(b, f1) - compose(f2, a), k)) throw ValidationError("cone_map: square does not commute via k");
  auto c1 = cone(f1), c2 = cone(f2);
  const auto& r = f1.source().algebra();
  const auto &a1 = f1.source(), &b1 = f1.target(), &a2 = f2.source(), &b2 = f2.target();
  auto out = GradedMap<K>::zero(c1.cone, c2.cone, 0);
  for (int m = c1.cone.lo(); m <= c1.cone.hi(); ++m) {
    auto bm = b.component(m), km = k.component(m + 1), am = a.component(m + 1);
    out.set(m, BlockMatrix<K>::assemble(r, {b2.term(m), a2.term(m + 1)}, {b1.term(m), a1.term(m + 1)},
                                        {{&bm, &km}, {nullptr, &am}}));
  }
  return out;
}

/// g : Y -> X with g e ~ id_X, when e : X -> Y is a homotopy equivalence.
template <FieldScalar K>
std::optional<GradedMap<K>> homotopy_inverse(const GradedMap<K>& e) {
  const auto& x = e.source();
  const auto& y = e.target();
  auto hyx = HomSpace<K>::compute(y, x);
  auto hxx = HomSpace<K>::compute(x, x);
  std::vector<Vec<K>> cols;
  for (std::size_t b = 0; b < hyx.dim(); ++b) cols.push_back(hxx.class_coords(compose(hyx.basis(b), e)));
  auto sol = solve_vec(Matrix<K>::from_columns(hxx.dim(), cols), hxx.class_coords(GradedMap<K>::identity(x)));
  if (!sol) return std::nullopt;
  auto g = hyx.from_class(*sol);
  if (!HomSpace<K>::compute(y, y).is_null(compose(e, g) - GradedMap<K>::identity(y))) return std::nullopt;
  return g;
}

template <FieldScalar K>
struct Triangle {
  GradedMap<K> alpha;  // X -> Y
  GradedMap<K> beta;   // Y -> Z
  GradedMap<K> gamma;  // Z -> Sigma X

  void check() const {
    if (alpha.degree() != 0 || beta.degree() != 0 || gamma.degree() != 0) throw ShapeError("triangle maps must have degree 0");
    if (!(alpha.target() == beta.source()) || !(beta.target() == gamma.source()) ||
        !(gamma.target() == alpha.source().shift(1)))
      throw ShapeError("triangle maps are not composable as X -> Y -> Z -> Sigma X");
    for (const auto* m : {&alpha, &beta, &gamma})
      if (!is_chain_map(*m)) throw ValidationError("triangle map is not a chain map");
  }
};

template <FieldScalar K>
Triangle<K> canonical_triangle(const GradedMap<K>& f) {
  auto c = cone(f);
  return {f, std::move(c.iota), std::move(c.pi)};
}

/// (a, b, g) -> (b, g, -Sigma a).
template <FieldScalar K>
Triangle<K> rotate(const Triangle<K>& t) {
  return {t.beta, t.gamma, -shift(t.alpha, 1)};
}

enum class TriangleReason { None, Compositions, NoComparison, NotEquivalence };

inline std::string to_string(TriangleReason r) {
  switch (r) {
    case TriangleReason::None: return "none";
    case TriangleReason::Compositions: return "compositions";
    case TriangleReason::NoComparison: return "no_comparison_map";
    case TriangleReason::NotEquivalence: return "comparison_not_equivalence";
  }
  return "unknown";
}

template <FieldScalar K>
struct TriangleVerdict {
  bool exact = false;
  TriangleReason reason = TriangleReason::None;
  // Comparison data, present for exact and NotEquivalence verdicts.
  std::optional<GradedMap<K>> rho, h1, h2;
  std::optional<GradedMap<K>> cone_contraction;  // exact only
  int failing_composition = -1;                  // 0: b o a, 1: g o b
  std::optional<Vec<K>> separator;               // infeasibility witness for every negative verdict
};

namespace detail {

// Columns: rho slots, then h1 : Y -> Z slots, then h2 : Cone -> Sigma X slots.
template <FieldScalar K>
struct TriangleSystem {
  ConeData<K> c;
  MapLayout<K> lr, l1, l2;
  Matrix<K> a;
  Vec<K> b;
};

template <FieldScalar K>
TriangleSystem<K> triangle_system(const Triangle<K>& t) {
  TriangleSystem<K> s;
  s.c = cone(t.alpha);
  const auto& z = t.beta.target();
  const auto& y = t.alpha.target();
  const auto& sx = t.gamma.target();
  s.lr = MapLayout<K>(s.c.cone, z, 0);
  s.l1 = MapLayout<K>(y, z, -1);
  s.l2 = MapLayout<K>(s.c.cone, sx, -1);
  const std::size_t n1 = flat_size(s.c.cone, z, 1), n2 = flat_size(y, z, 0), n3 = flat_size(s.c.cone, sx, 0);
  std::vector<Vec<K>> cols;
  auto column = [&](const Vec<K>& e1, const Vec<K>& e2, const Vec<K>& e3) {
    Vec<K> col = e1;
    col.insert(col.end(), e2.begin(), e2.end());
    col.insert(col.end(), e3.begin(), e3.end());
    cols.push_back(std::move(col));
  };
  for (std::size_t k = 0; k < s.lr.size(); ++k) {
    auto rho = s.lr.unit(k);
    column(boundary(rho).flatten(), compose(rho, s.c.iota).flatten(), compose(t.gamma, rho).flatten());
  }
  for (std::size_t k = 0; k < s.l1.size(); ++k)
    column(zero_vec<K>(n1), (-boundary(s.l1.unit(k))).flatten(), zero_vec<K>(n3));
  for (std::size_t k = 0; k < s.l2.size(); ++k)
    column(zero_vec<K>(n1), zero_vec<K>(n2), (-boundary(s.l2.unit(k))).flatten());
  s.a = Matrix<K>::from_columns(n1 + n2 + n3, cols);
  s.b = zero_vec<K>(n1);
  auto fb = t.beta.flatten(), fp = s.c.pi.flatten();
  s.b.insert(s.b.end(), fb.begin(), fb.end());
  s.b.insert(s.b.end(), fp.begin(), fp.end());
  return s;
}

template <FieldScalar K>
bool comparison_holds(const Triangle<K>& t, const ConeData<K>& c, const GradedMap<K>& rho, const GradedMap<K>& h1,
                      const GradedMap<K>& h2) {
  if (!(rho.source() == c.cone) || !(rho.target() == t.beta.target()) || !is_chain_map(rho)) return false;
  return verify_homotopy(compose(rho, c.iota) - t.beta, h1) && verify_homotopy(compose(t.gamma, rho) - c.pi, h2);
}

}  // namespace detail

template <FieldScalar K>
TriangleVerdict<K> recognize_triangle(const Triangle<K>& t) {
  t.check();
  TriangleVerdict<K> v;
  const GradedMap<K> comps[2] = {compose(t.beta, t.alpha), compose(t.gamma, t.beta)};
  for (int i = 0; i < 2; ++i) {
    if (auto y = non_null_witness(comps[i])) {
      v.reason = TriangleReason::Compositions;
      v.failing_composition = i;
      v.separator = std::move(y);
      return v;
    }
  }
  auto sys = detail::triangle_system(t);
  auto sol = solve_vec(sys.a, sys.b);
  if (!sol) {
    v.reason = TriangleReason::NoComparison;
    v.separator = infeasibility_witness(sys.a, sys.b);
    return v;
  }
  auto part = [&](std::size_t from, std::size_t len) {
    return Vec<K>(sol->begin() + static_cast<std::ptrdiff_t>(from), sol->begin() + static_cast<std::ptrdiff_t>(from + len));
  };
  v.rho = sys.lr.map(part(0, sys.lr.size()));
  v.h1 = sys.l1.map(part(sys.lr.size(), sys.l1.size()));
  v.h2 = sys.l2.map(part(sys.lr.size() + sys.l1.size(), sys.l2.size()));
  auto rc = cone(*v.rho).cone;
  if (auto h = contraction(rc)) {
    v.exact = true;
    v.cone_contraction = std::move(h);
  } else {
    v.reason = TriangleReason::NotEquivalence;
    v.separator = non_null_witness(GradedMap<K>::identity(rc));
  }
  return v;
}

/// Re-checks a verdict using block arithmetic and the separating functionals only.
template <FieldScalar K>
bool verify_triangle_verdict(const Triangle<K>& t, const TriangleVerdict<K>& v) {
  if (v.exact) {
    if (!v.rho || !v.h1 || !v.h2 || !v.cone_contraction) return false;
    auto c = cone(t.alpha);
    return detail::comparison_holds(t, c, *v.rho, *v.h1, *v.h2) && verify_contraction(cone(*v.rho).cone, *v.cone_contraction);
  }
  if (!v.separator) return false;
  switch (v.reason) {
    case TriangleReason::Compositions: {
      if (v.failing_composition == 0) return verify_non_null(compose(t.beta, t.alpha), *v.separator);
      if (v.failing_composition == 1) return verify_non_null(compose(t.gamma, t.beta), *v.separator);
      return false;
    }
    case TriangleReason::NoComparison: {
      auto sys = detail::triangle_system(t);
      return check_infeasibility(sys.a, sys.b, *v.separator);
    }
    case TriangleReason::NotEquivalence: {
      if (!v.rho || !v.h1 || !v.h2) return false;
      auto c = cone(t.alpha);
      return detail::comparison_holds(t, c, *v.rho, *v.h1, *v.h2) &&
             verify_non_null(GradedMap<K>::identity(cone(*v.rho).cone), *v.separator);
    }
    case TriangleReason::None: return false;
  }
  return false;
}

}  // namespace kb
