#pragma once

/**
 * @file telescope.hpp
 * @brief Compares Ann F with the ideal generated by the identities of Ker F on a window.
 */

#include <string>
#include <vector>

#include "kb/functors/annihilator.hpp"

namespace kb {

template <FieldScalar K>
struct TelescopeReport {
  std::string window;
  HomIdeal<K> ann;                   // A
  std::vector<std::size_t> kernel;   // K
  HomIdeal<K> generated;             // T: maps factoring through K
  bool consistent = false;           // A == T
  bool ann_idempotent = false;
  SigmaReport<K> ann_sigma;
  std::optional<SaturationReport<K>> ann_saturation;  // when triangles are supplied
  bool contains_generated = false;   // T <= A, which always holds
};

template <FieldScalar K>
TelescopeReport<K> telescope_report(const BimoduleFunctor<K>& f, const typename FiniteSubcat<K>::Ptr& s,
                                    const std::vector<Triangle<K>>& triangles = {}) {
  TelescopeReport<K> r;
  r.window = s->description();
  r.ann = ann_on_subcat(f, s);
  r.kernel = ker_on_subcat(f, s);
  r.generated = factor_through_ideal<K>(s, r.kernel);
  r.consistent = r.ann == r.generated;
  r.contains_generated = r.generated.is_subset_of(r.ann);
  r.ann_idempotent = is_idempotent(r.ann);
  r.ann_sigma = sigma_stable(r.ann);
  if (!triangles.empty()) r.ann_saturation = saturation_check(r.ann, triangles);
  return r;
}

}  // namespace kb
