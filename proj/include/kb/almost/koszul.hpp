#pragma once

/**
 * @file koszul.hpp
 * @brief Contraction certificates for complexes of free modules over a Laurent
 * polynomial ring. Only checks d h + h d = id; nothing is solved.
 */

#include <optional>
#include <string>
#include <vector>

#include "kb/linalg/laurent.hpp"
#include "kb/linalg/matrix.hpp"

namespace kb {

/// Free complex in degrees lo .. lo + ranks.size() - 1 with d^n : C^n -> C^{n+1} and h^n : C^n -> C^{n-1}.
struct ContractionFixture {
  std::size_t variables = 0;
  int lo = 0;
  std::vector<std::size_t> ranks;
  std::vector<Matrix<Laurent>> d;  // d[k] is d^{lo+k}, ranks.size() - 1 of them
  std::vector<Matrix<Laurent>> h;  // h[k] is h^{lo+k}, ranks.size() of them

  int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }
};

struct ContractionVerdict {
  bool ok = false;
  std::optional<int> failing_degree;
  std::string reason;
};

namespace detail {

inline void check_fixture_shape(const ContractionFixture& f) {
  const std::size_t n = f.ranks.size();
  if (f.d.size() + 1 != n && !(n == 0 && f.d.empty())) throw ShapeError("contraction fixture: need one differential between consecutive terms");
  if (f.h.size() != n) throw ShapeError("contraction fixture: need one homotopy component per term");
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (f.d[k].rows() != f.ranks[k + 1] || f.d[k].cols() != f.ranks[k]) throw ShapeError("contraction fixture: differential has the wrong shape");
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t below = k == 0 ? 0 : f.ranks[k - 1];
    if (f.h[k].rows() != below || f.h[k].cols() != f.ranks[k]) throw ShapeError("contraction fixture: homotopy has the wrong shape");
  }
  auto check_vars = [&](const Matrix<Laurent>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& [e, c] : m(i, j).terms())
          if (e.size() > f.variables) throw ShapeError("contraction fixture: entry uses an undeclared variable");
  };
  for (const auto& m : f.d) check_vars(m);
  for (const auto& m : f.h) check_vars(m);
  for (std::size_t k = 0; k + 2 < n; ++k)
    if (!(f.d[k + 1] * f.d[k]).is_zero()) throw ValidationError("contraction fixture: d o d != 0 at degree " + std::to_string(f.lo + static_cast<int>(k)));
}

}  // namespace detail

/// d^{n-1} h^n + h^{n+1} d^n = id on every C^n, computed entrywise in Laurent arithmetic.
inline ContractionVerdict verify_contraction(const ContractionFixture& f) {
  detail::check_fixture_shape(f);
  const std::size_t n = f.ranks.size();
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<Laurent> s(f.ranks[k], f.ranks[k]);
    if (k > 0) s = s + f.d[k - 1] * f.h[k];
    if (k + 1 < n) s = s + f.h[k + 1] * f.d[k];
    if (s != Matrix<Laurent>::identity(f.ranks[k]))
      return {false, f.lo + static_cast<int>(k), "d h + h d differs from the identity in degree " + std::to_string(f.lo + static_cast<int>(k))};
  }
  return {true, std::nullopt, ""};
}

/// The Koszul complex of (x, y) over Q[x, y, x^-1] with the contraction through x^-1.
inline ContractionFixture koszul_xy_fixture() {
  const Laurent x = Laurent::monomial(0, 1), y = Laurent::monomial(1, 1), xinv = Laurent::monomial(0, -1);
  ContractionFixture f;
  f.variables = 2;
  f.lo = -2;
  f.ranks = {1, 2, 1};
  f.d = {Matrix<Laurent>(2, 1, {x, y}), Matrix<Laurent>(1, 2, {y, -x})};
  f.h = {Matrix<Laurent>(0, 1), Matrix<Laurent>(1, 2, {xinv, Laurent(0)}), Matrix<Laurent>(2, 1, {Laurent(0), -xinv})};
  return f;
}

}  // namespace kb
