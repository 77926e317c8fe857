#pragma once

// NEF partitions of the vertex set of a reflexive polytope.
//
// For a partition V = V_1 u ... u V_k the support function phi_i is the
// piecewise linear function on the fan over the faces of the polytope that
// takes the value -1 on vertices in V_i and 0 on the others. On the cone
// over a facet f it is given by a linear form m_{i,f}; the partition is NEF
// when every m_{i,f} is integral and every phi_i is concave. Part i is ample
// when phi_i is strictly concave, i.e. its domains of linearity are exactly
// the facet cones.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cytop/errors.hpp"
#include "cytop/polytope.hpp"

namespace cytop {

class NefPartition {
 public:
  std::size_t part_count() const noexcept { return parts_.size(); }
  const std::vector<std::vector<std::size_t>>& parts() const noexcept { return parts_; }

  /// Part containing the vertex with the given index.
  std::size_t part_of_vertex(std::size_t v) const { return part_of_vertex_.at(v); }

  /// The linear form m_{i,f} of part i on the cone over facet f.
  const LatticeVector& m(std::size_t part, std::size_t facet) const { return m_table_.at(part).at(facet); }

  /// Distinct linear forms of part i; their hull is nabla_i.
  const std::vector<LatticeVector>& nabla_points(std::size_t part) const { return nabla_points_.at(part); }

  RelativePolytope nabla(std::size_t part) const { return RelativePolytope(nabla_points_.at(part)); }

  bool is_ample(std::size_t part) const {
    if (part >= ample_.size()) throw Error(ErrorKind::NotAPartition, "part index out of range");
    return ample_[part];
  }

  bool all_ample() const {
    for (bool a : ample_)
      if (!a) return false;
    return true;
  }

  /// phi_i(x) = min over the forms of part i of <m, x>.
  long long phi(std::size_t part, const LatticeVector& x) const {
    const auto& pts = nabla_points_.at(part);
    long long best = dot(pts.front(), x);
    for (const auto& m : pts) best = std::min(best, dot(m, x));
    return best;
  }

 private:
  friend NefPartition validate_nef_partition(const Polytope&, const std::vector<std::vector<std::size_t>>&);

  std::vector<std::vector<std::size_t>> parts_;
  std::vector<std::size_t> part_of_vertex_;
  std::vector<std::vector<LatticeVector>> m_table_;
  std::vector<std::vector<LatticeVector>> nabla_points_;
  std::vector<bool> ample_;
};

namespace detail {

using Rational = boost::multiprecision::cpp_rational;

// Solves rows * m = rhs over Q for the square nonsingular system.
inline std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw Error(ErrorKind::NotFullDimensional, "singular facet system");
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace detail

/// Validates a partition of the vertices of a reflexive polytope against
/// the NEF conditions. Error messages name the violated condition:
/// (1) phi_i linear on each facet cone, (3) concavity, (4) integrality.
inline NefPartition validate_nef_partition(const Polytope& p, const std::vector<std::vector<std::size_t>>& parts) {
  if (!p.is_reflexive()) throw Error(ErrorKind::NotReflexive, "NEF partitions require a reflexive polytope");
  const std::size_t nv = p.vertices().size();
  const std::size_t n = p.dim();
  NefPartition np;
  np.parts_ = parts;
  np.part_of_vertex_.assign(nv, parts.size());
  if (parts.empty()) throw Error(ErrorKind::NotAPartition, "no parts given");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw Error(ErrorKind::NotAPartition, "part " + std::to_string(i) + " is empty");
    for (auto v : parts[i]) {
      if (v >= nv) throw Error(ErrorKind::NotAPartition, "vertex index " + std::to_string(v) + " out of range");
      if (np.part_of_vertex_[v] != parts.size())
        throw Error(ErrorKind::NotAPartition, "vertex " + std::to_string(v) + " appears in two parts");
      np.part_of_vertex_[v] = i;
    }
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (np.part_of_vertex_[v] == parts.size())
      throw Error(ErrorKind::NotAPartition, "vertex " + std::to_string(v) + " is not covered");
  for (auto& part : np.parts_) std::sort(part.begin(), part.end());

  auto prescribed = [&](std::size_t part, std::size_t v) -> long long { return np.part_of_vertex_[v] == part ? -1 : 0; };

  const auto& facets = p.facets();
  np.m_table_.assign(parts.size(), std::vector<LatticeVector>(facets.size()));
  for (std::size_t f = 0; f < facets.size(); ++f) {
    std::vector<std::size_t> on_facet;
    for (std::size_t v = 0; v < nv; ++v)
      if (p.vertex_facets(v).test(f)) on_facet.push_back(v);
    // A linearly independent subset of n vertices; the facet hyperplane
    // misses the origin, so its vertices span the whole space.
    std::vector<std::size_t> basis;
    std::vector<LatticeVector> chosen;
    for (auto v : on_facet) {
      chosen.push_back(p.vertices()[v]);
      if (linear_rank(chosen, n) == chosen.size())
        basis.push_back(v);
      else
        chosen.pop_back();
      if (basis.size() == n) break;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::vector<std::vector<detail::Rational>> a;
      std::vector<detail::Rational> b;
      for (auto v : basis) {
        std::vector<detail::Rational> row;
        for (auto x : p.vertices()[v]) row.emplace_back(x);
        a.push_back(std::move(row));
        b.emplace_back(prescribed(i, v));
      }
      const auto sol = detail::solve_rational(std::move(a), std::move(b));
      for (auto v : on_facet) {
        detail::Rational s = 0;
        for (std::size_t c = 0; c < n; ++c) s += sol[c] * p.vertices()[v][c];
        if (s != prescribed(i, v))
          throw Error(ErrorKind::NotLinearOnFacet, "condition (1) fails: phi_" + std::to_string(i) +
                                                      " is not linear on the cone over facet " + std::to_string(f));
      }
      LatticeVector m(n);
      for (std::size_t c = 0; c < n; ++c) {
        if (denominator(sol[c]) != 1)
          throw Error(ErrorKind::NonIntegralSupport, "condition (4) fails: m_{" + std::to_string(i) + "," +
                                                         std::to_string(f) + "} is not integral");
        m[c] = to_int64(numerator(sol[c]));
      }
      np.m_table_[i][f] = std::move(m);
    }
  }

  // Concavity: on every vertex, each linear piece lies on or above the
  // prescribed value (the piece of the cone containing that vertex).
  np.ample_.assign(parts.size(), true);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t f = 0; f < facets.size(); ++f)
      for (std::size_t v = 0; v < nv; ++v) {
        const long long value = dot(np.m_table_[i][f], p.vertices()[v]);
        if (value < prescribed(i, v))
          throw Error(ErrorKind::NotConcave, "condition (3) fails: phi_" + std::to_string(i) +
                                                 " is not concave (facet " + std::to_string(f) + ", vertex " +
                                                 std::to_string(v) + ")");
        if (!p.vertex_facets(v).test(f) && value == prescribed(i, v)) np.ample_[i] = false;
      }

  np.nabla_points_.resize(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::set<LatticeVector> seen;
    for (const auto& m : np.m_table_[i])
      if (seen.insert(m).second) np.nabla_points_[i].push_back(m);
  }
  return np;
}

inline bool is_ample(const NefPartition& np, std::size_t part) { return np.is_ample(part); }

/// The part i(f) holding every vertex of a face with an interior lattice point.
inline std::size_t part_index(const NefPartition& np, const Face& f) {
  if (f.interior_count == 0) throw Error(ErrorKind::NoInteriorPoint, "face has no relative interior lattice point");
  const std::size_t part = np.part_of_vertex(f.vertex_indices.front());
  for (auto v : f.vertex_indices)
    if (np.part_of_vertex(v) != part)
      throw Error(ErrorKind::MixedVertices, "face with interior points has vertices in several parts");
  return part;
}

/// The face of nabla_i on which phi_i restricted to the face is attained:
/// it pairs to -1 with the face when i is the face's own part and to 0
/// otherwise.
inline RelativePolytope nef_dual_face(const NefPartition& np, const Polytope& p, const Face& f, std::size_t part) {
  if (part >= np.part_count()) throw Error(ErrorKind::NotAPartition, "part index out of range");
  LatticeVector centre(p.dim(), 0);
  for (auto v : f.vertex_indices) centre = centre + p.vertices()[v];
  const long long target = np.phi(part, centre);
  std::vector<LatticeVector> support;
  for (const auto& m : np.nabla_points(part))
    if (dot(m, centre) == target) support.push_back(m);
  return RelativePolytope(support);
}

}  // namespace cytop
