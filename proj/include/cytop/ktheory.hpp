#pragma once

// Topological K-groups of a Calabi-Yau threefold from its integral homology.

#include <array>
#include <cstddef>

#include "cytop/errors.hpp"
#include "cytop/exact_linalg.hpp"
#include "cytop/invariants.hpp"

namespace cytop {

struct KGroups {
  AbelianGroup k0;
  AbelianGroup k1;
};

/// Universal coefficients: H^k = Free(H_k) + Tor(H_{k-1}).
inline std::array<AbelianGroup, 7> cohomology(const IntegralHomology& h) {
  if (!h.complete()) throw Error(ErrorKind::IncompleteHomology, "homology summary lacks H_3");
  std::array<AbelianGroup, 7> out;
  for (std::size_t k = 0; k < 7; ++k) {
    out[k] = h.h[k]->free_part();
    if (k > 0) out[k] = direct_sum(out[k], h.h[k - 1]->torsion());
  }
  return out;
}

/// K^0 = H^0 + H^2 + H^4 + H^6 and K^1 = H^1 + H^3 + H^5 as abstract groups;
/// the H^6 summand enters K^0 as the index-two subgroup 2 H^6, which is
/// again infinite cyclic.
inline KGroups k_groups(const IntegralHomology& h) {
  const auto c = cohomology(h);
  KGroups k;
  k.k0 = direct_sum(direct_sum(c[0], c[2]), direct_sum(c[4], c[6]));
  k.k1 = direct_sum(direct_sum(c[1], c[3]), c[5]);
  return k;
}

/// Whether (0, c2, c3) can be realized as the Chern classes of a complex
/// vector bundle: with c1 = 0, Sq^2 vanishes on H^4 and the condition
/// reduces to c3 being even.
inline bool chern_triple_admissible(const IntegralHomology& h, bool c1_is_zero, long long c3) {
  if (!c1_is_zero)
    throw Error(ErrorKind::Unsupported, "only the c1 = 0 case is implemented; general Sq^2 needs cup products");
  if (!h.h[6]) throw Error(ErrorKind::IncompleteHomology, "homology summary lacks H_6");
  return c3 % 2 == 0;
}

}  // namespace cytop
