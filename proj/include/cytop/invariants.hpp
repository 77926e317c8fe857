#pragma once

// Hodge numbers and integral homology of the resolved Calabi-Yau threefold.

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cytop/errors.hpp"
#include "cytop/exact_linalg.hpp"
#include "cytop/polytope.hpp"
#include "cytop/strata.hpp"

namespace cytop {

struct HodgeSummary {
  long long h11 = 0;
  long long h21 = 0;
  long long h11_toric = 0;  // points of the polytope minus 5 minus facet interiors
  long long h21_poly = 0;   // same on the polar side
  long long corr_11 = 0;    // sum over two-faces of l*(f) l*(f dual)
  long long corr_21 = 0;    // sum over edges of l*(e) l*(e dual)
  long long euler = 0;
};

namespace detail {

inline long long face_interior_sum(const FaceLattice& faces, std::size_t d) {
  long long s = 0;
  for (const auto& f : faces.faces(d)) s += static_cast<long long>(f.interior_count);
  return s;
}

// Sum over faces of dimension d of l*(face) * l*(dual face).
inline long long correction_term(const ReflexivePair& pair, std::size_t d) {
  long long s = 0;
  for (std::size_t i = 0; i < pair.faces().count(d); ++i) {
    const FaceId id{d, i};
    s += static_cast<long long>(pair.faces().face(id).interior_count) *
         static_cast<long long>(pair.dual_face(id).interior_count);
  }
  return s;
}

inline void require_dim4(std::size_t dim) {
  if (dim != 4) throw Error(ErrorKind::WrongDimension, "expected a 4-dimensional polytope, got " + std::to_string(dim));
}

}  // namespace detail

/// Total lattice point count of a full-dimensional polytope with its origin
/// as the only interior point, assembled from relative interiors of faces.
inline long long lattice_point_total(const Polytope& p, const FaceLattice& faces) {
  long long total = 1 + static_cast<long long>(p.vertices().size());
  for (std::size_t d = 1; d < p.dim(); ++d) total += detail::face_interior_sum(faces, d);
  return total;
}

inline HodgeSummary hodge_numbers(const ReflexivePair& pair) {
  detail::require_dim4(pair.dim());
  HodgeSummary h;
  h.h11_toric = lattice_point_total(pair.polytope(), pair.faces()) - 5 - detail::face_interior_sum(pair.faces(), 3);
  h.h21_poly =
      lattice_point_total(pair.polar_polytope(), pair.polar_faces()) - 5 - detail::face_interior_sum(pair.polar_faces(), 3);
  h.corr_11 = detail::correction_term(pair, 2);
  h.corr_21 = detail::correction_term(pair, 1);
  h.h11 = h.h11_toric + h.corr_11;
  h.h21 = h.h21_poly + h.corr_21;
  h.euler = 2 * (h.h11 - h.h21);
  return h;
}

inline HodgeSummary hodge_numbers(const Polytope& p) {
  detail::require_dim4(p.dim());
  return hodge_numbers(ReflexivePair(p));
}

/// #V + sum_e l*(e) + sum_f l*(f) * (points of Y over f) - n.
inline long long rank_h2(const ReflexivePair& pair, const GeometryConfig& cfg) {
  long long r = static_cast<long long>(pair.polytope().vertices().size());
  r += detail::face_interior_sum(pair.faces(), 1);
  for (std::size_t i = 0; i < pair.faces().count(2); ++i) {
    const FaceId f{2, i};
    r += static_cast<long long>(pair.faces().face(f).interior_count) * two_face_point_count(pair, cfg, f);
  }
  return r - static_cast<long long>(pair.dim());
}

/// N modulo the span of the lattice points on the 2-skeleton.
inline AbelianGroup h1_group(const Polytope& p) {
  const std::size_t n = p.dim();
  std::vector<LatticeVector> gens;
  if (n <= 2) {
    gens = lattice_points(p);
  } else {
    FaceLattice faces(p);
    std::set<LatticeVector> seen;
    for (const auto& f : faces.faces(2))
      for (const auto& x : f.lattice_points)
        if (seen.insert(x).second) gens.push_back(x);
  }
  return cokernel(IntMatrix::from_columns(n, gens));
}

/// Coordinates of a wedge b in the basis e_i ^ e_j, i < j.
inline std::vector<long long> wedge(const LatticeVector& a, const LatticeVector& b) {
  std::vector<long long> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) out.push_back(a[i] * b[j] - a[j] * b[i]);
  return out;
}

namespace detail {

// Same construction in any dimension; the formula only uses wedge^2 N.
inline IntMatrix wedge_generators(const Polytope& p) {
  const std::size_t n = p.dim();
  FaceLattice faces(p);
  std::vector<std::vector<long long>> cols;

  std::set<LatticeVector> skeleton;
  for (const auto& e : faces.faces(1))
    for (const auto& x : e.lattice_points) skeleton.insert(x);
  for (const auto& x : skeleton)
    for (std::size_t k = 0; k < n; ++k) {
      LatticeVector b(n, 0);
      b[k] = 1;
      cols.push_back(wedge(b, x));
    }
  for (const auto& f : faces.faces(2)) {
    if (f.interior_count == 0) continue;
    const auto basis = saturated_basis(face_vertices(p, f), n);
    for (const auto& x : f.lattice_points) {
      if (p.saturated_facets(x) != f.facets) continue;
      for (const auto& w : basis) cols.push_back(wedge(w, x));
    }
  }
  return IntMatrix::from_columns(n * (n - 1) / 2, cols);
}

}  // namespace detail

/// Generators of the image in wedge^2 N whose cokernel carries Tor H_2:
/// b ^ l for points l on the 1-skeleton and b in a basis of N, and w ^ l for
/// points l inside a two-face f and w in a basis of N cap span(f).
inline IntMatrix tor_h2_generators(const Polytope& p) {
  detail::require_dim4(p.dim());
  return detail::wedge_generators(p);
}

/// The cokernel of the generator matrix, free part included.
inline AbelianGroup tor_h2_presentation(const Polytope& p) { return cokernel(tor_h2_generators(p)); }

inline AbelianGroup tor_h2(const Polytope& p) { return tor_h2_presentation(p).torsion(); }

/// Rank of the kernel of H_3 of the resolution onto H_3 of Y: each edge with
/// interior points contributes l*(e) copies of H_1 of its curve.
inline long long ker_rho_h3_rank(const ReflexivePair& pair, const GeometryConfig& cfg) {
  long long r = 0;
  for (std::size_t i = 0; i < pair.faces().count(1); ++i) {
    const FaceId e{1, i};
    const auto l = static_cast<long long>(pair.faces().face(e).interior_count);
    if (l > 0) r += l * edge_curve_h1_rank(pair, cfg, e);
  }
  return r;
}

/// H_0 .. H_6; H_3 is absent in complete-intersection mode.
struct IntegralHomology {
  std::array<std::optional<AbelianGroup>, 7> h;
  bool complete() const {
    for (const auto& g : h)
      if (!g) return false;
    return true;
  }
};

inline IntegralHomology homology_summary(const ReflexivePair& pair, const GeometryConfig& cfg) {
  const AbelianGroup h1 = h1_group(pair.polytope());
  // Complete intersections live in higher dimension; the torsion formula
  // carries over unchanged.
  const AbelianGroup t2 = cokernel(detail::wedge_generators(pair.polytope())).torsion();
  const auto r2 = static_cast<std::size_t>(rank_h2(pair, cfg));
  IntegralHomology out;
  out.h[0] = AbelianGroup::free(1);
  out.h[1] = h1;
  out.h[2] = direct_sum(AbelianGroup::free(r2), t2);
  if (cfg.is_hypersurface()) {
    const auto h = hodge_numbers(pair);
    out.h[3] = direct_sum(AbelianGroup::free(static_cast<std::size_t>(2 + 2 * h.h21)), t2);
  }
  out.h[4] = direct_sum(AbelianGroup::free(r2), h1.torsion());
  out.h[5] = AbelianGroup::free(h1.rank());
  out.h[6] = AbelianGroup::free(1);
  return out;
}

/// Z^n with the A_n Cartan form; its discriminant group is cyclic of order n + 1.
struct ARootLattice {
  std::size_t n = 0;

  IntMatrix gram() const {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, i) = 2;
      if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return g;
  }

  BigInt det() const { return determinant(gram()); }
  AbelianGroup discriminant_group() const { return cokernel(gram()); }
};

}  // namespace cytop
