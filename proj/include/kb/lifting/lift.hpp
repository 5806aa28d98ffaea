#pragma once

/**
 * @file lift.hpp
 * @brief Bounded search for fractions lifting maps and complexes along a bimodule functor.
 *
 * A lift of alpha : FX -> FY is a roof X <-pi- X' -alpha'-> Y with F(pi) a
 * homotopy equivalence and F(alpha') ~ alpha o F(pi). Candidates X' are
 * iterated cocones Sigma^{-1} Cone(psi : X_cur -> Sigma^n K^d), where K runs over
 * the generator set, d = dim Hom(X_cur, Sigma^n K) and psi is the tuple of the
 * hom-space basis. The cone of X' -> X_cur is then Sigma^n K^d, so F(pi) is an
 * equivalence whenever F kills the generators.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kb/functors/bimodule_functor.hpp"

namespace kb {

template <FieldScalar K>
struct SearchBudget {
  std::size_t depth = 3;
  std::vector<ProjComplex<K>> generators;
  std::optional<int> shift_window;  // restricts shifts to |n| <= w when set
};

struct LiftStep {
  std::size_t generator;
  int shift;
  std::size_t multiplicity;  // d in Sigma^n K^d
};

template <FieldScalar K>
struct LiftCertificate {
  ProjComplex<K> x_prime;
  GradedMap<K> pi;           // X' -> X
  GradedMap<K> alpha_prime;  // X' -> Y
  GradedMap<K> cone_contraction;  // of Cone(F pi)
  GradedMap<K> homotopy;     // FX' -> FY of degree -1, D(h) = F alpha' - alpha F pi
  std::vector<LiftStep> path;

  std::size_t depth() const { return path.size(); }
};

template <FieldScalar K>
struct LiftResult {
  std::optional<LiftCertificate<K>> certificate;
  std::size_t nodes = 0;          // candidates whose lifting equation was solved
  std::size_t depth_searched = 0;
  bool degenerate = false;        // empty generator set: only the direct preimage was tried
  bool found() const { return certificate.has_value(); }
};

/// Independent re-check of a certificate using block arithmetic only.
template <FieldScalar K>
bool verify_lift_certificate(const BimoduleFunctor<K>& f, const ProjComplex<K>& x, const ProjComplex<K>& y,
                             const GradedMap<K>& alpha, const LiftCertificate<K>& c) {
  if (!(c.pi.source() == c.x_prime) || !(c.pi.target() == x) || !(c.alpha_prime.source() == c.x_prime) ||
      !(c.alpha_prime.target() == y))
    return false;
  if (!is_chain_map(c.pi) || !is_chain_map(c.alpha_prime) || !is_chain_map(alpha)) return false;
  auto fpi = f.apply(c.pi);
  if (!(alpha.source() == fpi.target())) return false;
  if (!verify_contraction(cone(fpi).cone, c.cone_contraction)) return false;
  return verify_homotopy(f.apply(c.alpha_prime) - compose(alpha, fpi), c.homotopy);
}

namespace detail {

template <FieldScalar K>
struct LiftNode {
  ProjComplex<K> x;
  GradedMap<K> pi;
  std::vector<LiftStep> path;
};

// Shifts n with Hom(X, Sigma^n K) possibly nonzero: the degree ranges must overlap.
template <FieldScalar K>
std::vector<int> candidate_shifts(const ProjComplex<K>& x, const ProjComplex<K>& k, const std::optional<int>& window) {
  std::vector<int> out;
  if (x.empty() || k.empty()) return out;
  for (int n = k.lo() - x.hi(); n <= k.hi() - x.lo(); ++n)
    if (!window || (n >= -*window && n <= *window)) out.push_back(n);
  return out;
}

// alpha' and the homotopy at one node, when alpha o F(pi) lies in the image of F on Hom(X', Y).
template <FieldScalar K>
std::optional<LiftCertificate<K>> solve_node(const BimoduleFunctor<K>& f, const LiftNode<K>& node, const ProjComplex<K>& y,
                                             const GradedMap<K>& alpha) {
  auto fpi = f.apply(node.pi);
  auto contr = contraction(cone(fpi).cone);
  if (!contr) return std::nullopt;
  const GradedMap<K> target = compose(alpha, fpi);
  auto src = HomSpace<K>::compute(node.x, y);
  auto dst = HomSpace<K>::compute(f.apply(node.x), f.apply(y));
  std::vector<Vec<K>> cols;
  for (std::size_t b = 0; b < src.dim(); ++b) cols.push_back(dst.class_coords(f.apply(src.basis(b))));
  auto sol = solve_vec(Matrix<K>::from_columns(dst.dim(), cols), dst.class_coords(target));
  if (!sol) return std::nullopt;
  auto ap = src.from_class(*sol);
  auto h = dst.null_homotopy(f.apply(ap) - target);
  if (!h) throw std::logic_error("class equation solved but no homotopy found");
  return LiftCertificate<K>{node.x, node.pi, std::move(ap), std::move(*contr), std::move(*h), node.path};
}

// Sigma^{-1} Cone(psi) -> X for the universal map psi : X -> (Sigma^n K)^d.
template <FieldScalar K>
std::optional<LiftNode<K>> extend(const LiftNode<K>& node, const ProjComplex<K>& target, std::size_t gen, int n,
                                  const GradedMap<K>& to_root) {
  auto hom = HomSpace<K>::compute(node.x, target);
  const std::size_t d = hom.dim();
  if (d == 0) return std::nullopt;
  ProjComplex<K> sum = target;
  for (std::size_t b = 1; b < d; ++b) sum = direct_sum(sum, target);
  // copy b of the target sits at row offset b * |target^m|
  auto psi = GradedMap<K>::zero(node.x, sum, 0);
  for (int m = node.x.lo(); m <= node.x.hi(); ++m) {
    const auto& tm = target.term(m);
    BlockMatrix<K> blk(node.x.algebra(), sum.term(m), node.x.term(m));
    for (std::size_t b = 0; b < d; ++b) {
      auto comp = hom.basis(b).component(m);
      for (std::size_t i = 0; i < tm.size(); ++i)
        for (std::size_t j = 0; j < comp.num_cols(); ++j) blk.at(b * tm.size() + i, j) = comp(i, j);
    }
    psi.set(m, std::move(blk));
  }
  auto c = cone(psi);
  auto x2 = c.cone.shift(-1);
  auto step = shift(c.pi, -1);  // Sigma^{-1} Cone -> X
  auto path = node.path;
  path.push_back({gen, n, d});
  return LiftNode<K>{x2, compose(to_root, step), std::move(path)};
}

}  // namespace detail

/**
 * Breadth-first over iterated cocones in (depth, generator, shift) order.
 * not_found only means the budget was exhausted.
 */
template <FieldScalar K>
LiftResult<K> lift_chain_map(const BimoduleFunctor<K>& f, const ProjComplex<K>& x, const ProjComplex<K>& y,
                             const GradedMap<K>& alpha, const SearchBudget<K>& budget) {
  if (!(alpha.source() == f.apply(x)) || !(alpha.target() == f.apply(y)) || !is_chain_map(alpha))
    throw ValidationError("lift_chain_map: alpha is not a chain map F(X) -> F(Y)");
  for (const auto& g : budget.generators)
    if (g.algebra() != x.algebra()) throw ShapeError("lift_chain_map: generator over the wrong algebra");
  LiftResult<K> res;
  res.degenerate = budget.generators.empty();
  std::vector<detail::LiftNode<K>> level = {{x, GradedMap<K>::identity(x), {}}};
  for (std::size_t depth = 0;; ++depth) {
    res.depth_searched = depth;
    for (const auto& node : level) {
      ++res.nodes;
      if (auto cert = detail::solve_node(f, node, y, alpha)) {
        res.certificate = std::move(cert);
        return res;
      }
    }
    if (depth == budget.depth || res.degenerate) return res;
    std::vector<detail::LiftNode<K>> next;
    for (const auto& node : level) {
      std::vector<ProjComplex<K>> seen;
      for (std::size_t g = 0; g < budget.generators.size(); ++g)
        for (int n : detail::candidate_shifts(node.x, budget.generators[g], budget.shift_window)) {
          auto target = budget.generators[g].shift(n);
          if (std::find(seen.begin(), seen.end(), target) != seen.end()) continue;
          seen.push_back(target);
          if (auto child = detail::extend(node, target, g, n, node.pi)) next.push_back(std::move(*child));
        }
    }
    if (next.empty()) return res;
    level = std::move(next);
  }
}

template <FieldScalar K>
struct LiftComplexResult {
  std::optional<ProjComplex<K>> x;
  std::optional<GradedMap<K>> equivalence;   // F(X) -> Y
  std::optional<GradedMap<K>> cone_contraction;  // of Cone(equivalence)
  std::optional<std::size_t> failing_stage;  // degree whose connecting map did not lift
  std::vector<LiftResult<K>> stages;         // one per connecting map, from the top degree down
  bool found() const { return x.has_value(); }
};

/// Independent check that `equivalence` is a homotopy equivalence F(X) -> Y.
template <FieldScalar K>
bool verify_lift_complex(const BimoduleFunctor<K>& f, const ProjComplex<K>& y, const LiftComplexResult<K>& r) {
  if (!r.x || !r.equivalence || !r.cone_contraction) return false;
  if (!(r.equivalence->source() == f.apply(*r.x)) || !(r.equivalence->target() == y) || !is_chain_map(*r.equivalence))
    return false;
  return verify_contraction(cone(*r.equivalence).cone, *r.cone_contraction);
}

namespace detail {

template <FieldScalar K>
ProjComplex<K> upper_truncation(const ProjComplex<K>& y, int from) {
  std::vector<std::vector<std::size_t>> terms;
  std::vector<BlockMatrix<K>> diffs;
  for (int n = from; n <= y.hi(); ++n) terms.push_back(y.term(n));
  for (int n = from; n < y.hi(); ++n) diffs.push_back(y.d(n));
  return ProjComplex<K>::make(y.algebra(), from, std::move(terms), std::move(diffs));
}

template <FieldScalar K>
struct Lifted {
  ProjComplex<K> x;
  GradedMap<K> phi;  // F(X) -> Y', a homotopy equivalence
};

}  // namespace detail

/**
 * Lifts Y over the target algebra, given source idempotent lists pre[n - lo]
 * with F(pre) = Y^n, by induction on length: Y = Cone(delta : Sigma^{-1} Y^lo -> Y_{>lo}).
 */
template <FieldScalar K>
LiftComplexResult<K> lift_complex(const BimoduleFunctor<K>& f, const ProjComplex<K>& y,
                                  const std::vector<std::vector<std::size_t>>& pre, const SearchBudget<K>& budget) {
  if (y.algebra() != f.target()) throw ShapeError("lift_complex: Y is not over the target algebra");
  LiftComplexResult<K> out;
  const auto& r = f.source();
  if (y.empty()) {
    auto z = ProjComplex<K>::zero(r);
    out.x = z;
    out.equivalence = GradedMap<K>::identity(f.apply(z));
    out.cone_contraction = contraction(cone(*out.equivalence).cone);
    return out;
  }
  if (pre.size() != y.length()) throw ShapeError("lift_complex: one preimage term per degree of Y is required");
  for (int n = y.lo(); n <= y.hi(); ++n)
    if (f.image_term(pre[static_cast<std::size_t>(n - y.lo())]) != y.term(n))
      throw ValidationError("lift_complex: declared preimage does not map onto Y^" + std::to_string(n));

  // base: the top degree as a stalk
  auto x = ProjComplex<K>::stalk(r, pre.back(), y.hi());
  auto phi = GradedMap<K>::identity(f.apply(x));
  for (int lo = y.hi() - 1; lo >= y.lo(); --lo) {
    auto yp = detail::upper_truncation(y, lo + 1);  // Y', lifted by (x, phi)
    auto ycur = detail::upper_truncation(y, lo);
    auto a = ProjComplex<K>::stalk(r, pre[static_cast<std::size_t>(lo - y.lo())], lo + 1);
    auto fa = f.apply(a);
    auto delta = GradedMap<K>::zero(fa, yp, 0);
    if (!fa.empty()) delta.set(lo + 1, y.d(lo));
    auto psi = homotopy_inverse(phi);
    if (!psi) throw std::logic_error("lift_complex: stage map is not an equivalence");
    auto alpha = compose(*psi, delta);
    auto lr = lift_chain_map(f, a, x, alpha, budget);
    out.stages.push_back(lr);
    if (!lr.found()) {
      out.failing_stage = lo;
      return out;
    }
    const auto& cert = *lr.certificate;
    auto xn = cone(cert.alpha_prime).cone;
    auto f1 = f.apply(cert.alpha_prime);
    auto fpi = f.apply(cert.pi);
    auto k = null_homotopy(compose(phi, f1) - compose(delta, fpi));
    if (!k) throw std::logic_error("lift_complex: square does not commute up to homotopy");
    auto cm = cone_map(f1, delta, fpi, phi, *k);
    if (!(cone(delta).cone == ycur) || !(cone(f1).cone == f.apply(xn)))
      throw std::logic_error("lift_complex: cone bookkeeping mismatch");
    x = xn;
    phi = cm;
  }
  out.x = x;
  out.equivalence = phi;
  out.cone_contraction = contraction(cone(phi).cone);
  if (!out.cone_contraction) throw std::logic_error("lift_complex: assembled map is not an equivalence");
  return out;
}

}  // namespace kb
