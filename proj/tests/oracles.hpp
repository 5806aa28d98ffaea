#pragma once

// Independent oracles: the unnormalized bar complex for Tor, used only by tests.

#include <vector>

#include "kb/algebra/bimodule.hpp"

namespace kbt {

/**
 * dim Tor_i^R(M, N) for i = 0..i_max from the bar complex
 * C_n = M (x)_k R^{(x)n} (x)_k N with the alternating sum of the face maps.
 * Exponential in n; the unit is not split off, so no complement is chosen.
 */
template <class K>
std::vector<std::size_t> bar_tor(const kb::Module<K>& m, const kb::Bimodule<K>& n, std::size_t i_max) {
  const auto& r = *m.algebra();
  const std::size_t dm = m.dim(), dr = r.dim(), dn = n.dim();
  auto size = [&](std::size_t k) {
    std::size_t s = dm * dn;
    for (std::size_t t = 0; t < k; ++t) s *= dr;
    return s;
  };
  // index of m_a (x) b_{i_1} .. b_{i_k} (x) n_c: ((a * dr + i_1) * dr + ...) * dn + c
  auto encode = [&](std::size_t a, const std::vector<std::size_t>& is, std::size_t c) {
    std::size_t x = a;
    for (auto i : is) x = x * dr + i;
    return x * dn + c;
  };
  auto differential = [&](std::size_t k) {  // C_k -> C_{k-1}
    Matrix<K> d(size(k - 1), size(k));
    std::vector<std::size_t> is(k);
    for (std::size_t col = 0; col < size(k); ++col) {
      std::size_t x = col;
      const std::size_t c = x % dn;
      x /= dn;
      for (std::size_t t = k; t-- > 0;) {
        is[t] = x % dr;
        x /= dr;
      }
      const std::size_t a = x;
      // face 0: m_a b_{i_1}
      const auto& act = m.action(is[0]);
      std::vector<std::size_t> rest(is.begin() + 1, is.end());
      for (std::size_t a2 = 0; a2 < dm; ++a2)
        if (!act(a2, a).is_zero()) d(encode(a2, rest, c), col) += act(a2, a);
      // inner faces: b_{i_t} b_{i_{t+1}}
      for (std::size_t t = 0; t + 1 < k; ++t) {
        const auto& prod = r.product(is[t], is[t + 1]);
        const K sign = (t + 1) % 2 ? K(-1) : K(1);
        for (std::size_t l = 0; l < dr; ++l) {
          if (prod[l].is_zero()) continue;
          std::vector<std::size_t> js;
          for (std::size_t u = 0; u < k; ++u) {
            if (u == t + 1) continue;
            js.push_back(u == t ? l : is[u]);
          }
          d(encode(a, js, c), col) += sign * prod[l];
        }
      }
      // last face: b_{i_k} n_c
      const auto& lact = n.left_action()[is[k - 1]];
      const K sign = k % 2 ? K(-1) : K(1);
      std::vector<std::size_t> front(is.begin(), is.end() - 1);
      for (std::size_t c2 = 0; c2 < dn; ++c2)
        if (!lact(c2, c).is_zero()) d(encode(a, front, c2), col) += sign * lact(c2, c);
    }
    return d;
  };
  std::vector<std::size_t> ranks(i_max + 2, 0);
  for (std::size_t k = 1; k <= i_max + 1; ++k) ranks[k] = kb::rank(differential(k));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= i_max; ++i) out.push_back(size(i) - ranks[i] - ranks[i + 1]);
  return out;
}

}  // namespace kbt
