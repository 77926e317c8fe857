// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "cytop/cytop.hpp"
#include "oracles.hpp"

using namespace cytop;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
struct Check {
  bool ok = true;
  std::vector<std::string> notes;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (notes.size() < 3) notes.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary;
    for (const auto& n : notes) d += "; " + n;
    return {ok, d};
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

std::vector<Polytope> corpus_and_polars() {
  std::vector<Polytope> out;
  for (const auto& e : corpus::entries()) {
    out.push_back(Polytope::from_points(e.points));
    out.push_back(polar(out.back()));
  }
  return out;
}

GeometryConfig trivial_partition(const ReflexivePair& pair) {
  std::vector<std::size_t> all(pair.polytope().vertices().size());
  std::iota(all.begin(), all.end(), 0);
  return GeometryConfig::complete_intersection(pair, validate_nef_partition(pair.polytope(), {all}));
}

// Brute-force face labelling of the lattice points of a 4-simplex: each
// point of the bounding box gets barycentric coordinates by Cramer's rule,
// and its carrier face is the set of vertices with nonzero weight.
std::map<std::set<std::size_t>, long long> simplex_strata(const std::vector<LatticeVector>& v) {
  const std::size_t n = 4;
  IntMatrix a(n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i < n; ++i) a(i, j) = v[j][i];
    a(n, j) = 1;
  }
  const BigInt det = oracle::cofactor_det(a);
  LatticeVector lo = v[0], hi = v[0];
  for (const auto& x : v)
    for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(lo[i], x[i]), hi[i] = std::max(hi[i], x[i]);
  std::map<std::set<std::size_t>, long long> counts;
  LatticeVector x = lo;
  while (true) {
    std::set<std::size_t> support;
    bool inside = true;
    for (std::size_t j = 0; j <= n && inside; ++j) {
      IntMatrix b = a;
      for (std::size_t i = 0; i < n; ++i) b(i, j) = x[i];
      b(n, j) = 1;
      const BigInt w = oracle::cofactor_det(b) * (det < 0 ? -1 : 1);
      if (w < 0) inside = false;
      if (w > 0) support.insert(j);
    }
    if (inside) ++counts[support];
    std::size_t k = 0;
    while (k < n && x[k] == hi[k]) x[k] = lo[k], ++k;
    if (k == n) break;
    ++x[k];
  }
  return counts;
}

// Vertex u_j of the polar simplex: <u_j, v_i> = -1 for every i != j.
std::vector<LatticeVector> polar_simplex(const std::vector<LatticeVector>& v) {
  std::vector<LatticeVector> out;
  for (std::size_t j = 0; j < 5; ++j) {
    IntMatrix m(4, 4);
    for (std::size_t r = 0, i = 0; i < 5; ++i) {
      if (i == j) continue;
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = v[i][c];
      ++r;
    }
    const BigInt d = oracle::cofactor_det(m);
    LatticeVector u(4);
    for (std::size_t c = 0; c < 4; ++c) {
      IntMatrix b = m;
      for (std::size_t r = 0; r < 4; ++r) b(r, c) = -1;
      const BigInt num = oracle::cofactor_det(b);
      if (num % d != 0) return {};
      u[c] = static_cast<long long>(num / d);
    }
    out.push_back(u);
  }
  return out;
}

struct SimplexTerms {
  long long points = 0, facet_interior = 0, corr = 0;
};

// Terms of the h11 formula for simplex s with polar t; vertex j of t is dual
// to the facet of s opposite vertex j, so the face of s on S is dual to the
// face of t on the complement of S.
SimplexTerms simplex_terms(const std::map<std::set<std::size_t>, long long>& s,
                           const std::map<std::set<std::size_t>, long long>& t) {
  SimplexTerms out;
  for (const auto& [support, count] : s) {
    out.points += count;
    if (support.size() == 4) out.facet_interior += count;
    if (support.size() == 3) {
      std::set<std::size_t> dual;
      for (std::size_t j = 0; j < 5; ++j)
        if (!support.count(j)) dual.insert(j);
      const auto it = t.find(dual);
      out.corr += count * (it == t.end() ? 0 : it->second);
    }
  }
  return out;
}

Outcome cube_census() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = analyze_report(corpus::cube4());
  const double dt = seconds_since(t0);
  const auto& f = r["faces"];
  c.expect(f["vertices"] == 16 && f["edges"] == 32 && f["two_faces"] == 24 && f["facets"] == 8,
           "census " + f["f_vector"].dump());
  c.expect(dt < 1.0, "too slow");
  return c.outcome("f-vector " + f["f_vector"].dump() + " in " + fmt_seconds(dt));
}

Outcome quintic_pair() {
  Check c;
  const auto& p4 = corpus::entries().front();
  const auto dual = polar_simplex(p4.points);
  c.expect(dual.size() == 5, "polar simplex is not integral");
  if (!c.ok) return c.outcome("");
  const auto s = simplex_strata(p4.points), t = simplex_strata(dual);
  const auto a = simplex_terms(s, t), b = simplex_terms(t, s);

  double worst = 0;
  for (bool use_polar : {false, true}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = Polytope::from_points(use_polar ? dual : p4.points);
    const auto h = hodge_numbers(p);
    worst = std::max(worst, seconds_since(t0));
    const auto& x = use_polar ? b : a;
    const auto& y = use_polar ? a : b;
    const std::string tag = use_polar ? "polar " : "";
    c.expect(h.h11_toric == x.points - 5 - x.facet_interior, tag + "h11 toric term");
    c.expect(h.corr_11 == x.corr, tag + "h11 correction");
    c.expect(h.h21_poly == y.points - 5 - y.facet_interior, tag + "h21 polynomial term");
    c.expect(h.corr_21 == y.corr, tag + "h21 correction");
    c.expect(h.h11 == (use_polar ? 101 : 1) && h.h21 == (use_polar ? 1 : 101), tag + "hodge pair");
  }
  // The frozen hull-based oracle agrees with the barycentric one.
  c.expect(a.points == p4.expected.points && b.points == p4.expected.polar_points, "frozen point counts");
  c.expect(b.facet_interior == p4.expected.polar_facet_interior, "frozen facet counts");
  c.expect(worst < 1.0, "too slow");
  std::ostringstream s_out;
  s_out << "(1,101) / (101,1); oracle l=" << a.points << "/" << b.points << " facet l*=" << a.facet_interior << "/"
        << b.facet_interior << "; slowest " << fmt_seconds(worst);
  return c.outcome(s_out.str());
}

Outcome mirror_swap() {
  Check c;
  std::size_t n = 0;
  for (const auto& e : corpus::entries()) {
    const auto p = Polytope::from_points(e.points);
    const auto h = hodge_numbers(p), hp = hodge_numbers(polar(p));
    c.expect(h.h11 == hp.h21 && h.h21 == hp.h11, e.name);
    c.expect(h.h11 == e.expected.h11 && h.h21 == e.expected.h21, e.name + " vs oracle");
    ++n;
  }
  c.expect(n >= 10, "corpus too small");
  return c.outcome(std::to_string(n) + " polytopes");
}

Outcome rank_h2_identity() {
  Check c;
  std::size_t n = 0;
  for (const auto& p : corpus_and_polars()) {
    ReflexivePair pair(p);
    const auto h = hodge_numbers(pair);
    const long long r = rank_h2(pair, GeometryConfig::hypersurface(pair));
    c.expect(r == h.h11, "rank_h2 " + std::to_string(r) + " vs h11 " + std::to_string(h.h11));
    c.expect(lattice_point_total(p, pair.faces()) == static_cast<long long>(lattice_points(p).size()),
             "lattice point decomposition");
    ++n;
  }
  return c.outcome(std::to_string(n) + " polytopes (corpus and polars)");
}

Outcome shelling_suite() {
  Check c;
  const std::vector<std::vector<Point2>> polygons = {
      {{0, 0}, {1, 0}, {0, 1}},
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      {{-1, -1}, {1, 0}, {0, 1}},
      {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}},
      {{0, 0}, {5, 0}, {0, 5}},
      {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}},
      {{0, 0}, {3, 0}, {3, 2}, {0, 2}},
      {{0, 0}, {4, 1}, {1, 3}},
      {{-1, -1}, {2, -1}, {-1, 2}},
      {{0, 0}, {6, 0}, {4, 3}, {0, 4}},
      {{0, 0}, {4, 0}, {6, 2}, {2, 5}, {-1, 3}},
      {{0, 0}, {3, 1}, {4, 4}, {1, 3}},
  };
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t triangulations = 0;
  std::uint64_t seed = 2024;
  for (const auto& corners : polygons) {
    // Independent counts: box scan for all points, gcd for edge points.
    const auto pts = oracle::polygon_points(corners);
    long long edge_interior = 0;
    for (std::size_t i = 0; i < corners.size(); ++i) {
      const auto& p = corners[i];
      const auto& q = corners[(i + 1) % corners.size()];
      edge_interior += std::gcd(std::abs(q[0] - p[0]), std::abs(q[1] - p[1])) - 1;
    }
    const long long v = static_cast<long long>(corners.size());
    const long long interior = static_cast<long long>(pts.size()) - edge_interior - v;
    const long long b_expected = interior + edge_interior + v - 3;

    auto t = maximal_triangulation(pts);
    for (int k = 0; k <= 10; ++k) {
      if (k > 0) {
        t = random_flip(t, seed++);
        ++triangulations;
      }
      const auto trace = shelling(t);
      const auto betti = model_homology(t);
      const long long a = static_cast<long long>(trace.count(MoveType::A));
      const long long b = static_cast<long long>(trace.count(MoveType::B));
      const long long cc = static_cast<long long>(trace.count(MoveType::C));
      c.expect(t.is_unimodular(), "not unimodular");
      c.expect(a == interior && b == b_expected && cc == 1,
               "trace (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(cc) + ")");
      c.expect(static_cast<long long>(betti[2]) == b_expected, "b2");
    }
  }
  const double dt = seconds_since(t0);
  c.expect(polygons.size() >= 10 && triangulations >= 100, "too few cases");
  c.expect(dt < 10.0, "too slow");
  return c.outcome(std::to_string(triangulations) + " flipped triangulations of " + std::to_string(polygons.size()) +
                   " polygons in " + fmt_seconds(dt));
}

Outcome snf_suite() {
  Check c;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::size_t square_full_rank = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    const auto s = smith_normal_form(a);
    c.expect(s.u * a * s.v == s.d, "UAV != D");
    c.expect(s.d.is_diagonal(), "D not diagonal");
    c.expect(abs(oracle::cofactor_det(s.u)) == 1 && abs(oracle::cofactor_det(s.v)) == 1, "not unimodular");
    const std::size_t k = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < k; ++i) {
      c.expect(s.d(i, i) >= 0, "negative diagonal");
      if (i + 1 < k) {
        const BigInt& x = s.d(i, i);
        const BigInt& y = s.d(i + 1, i + 1);
        c.expect(x == 0 ? y == 0 : y % x == 0, "divisibility chain");
      }
    }
    if (a.rows() == a.cols()) {
      const BigInt det = oracle::cofactor_det(a);
      if (det != 0) {
        BigInt prod = 1;
        for (std::size_t i = 0; i < k; ++i) prod *= s.d(i, i);
        c.expect(abs(det) == prod, "|det| != product");
        ++square_full_rank;
      }
    }
  }
  return c.outcome("1000 matrices, " + std::to_string(square_full_rank) + " square full-rank");
}

Outcome torsion_invariance() {
  Check c;
  std::mt19937_64 rng(7);
  std::size_t moves = 0;
  for (const auto& e : corpus::entries()) {
    const auto p = Polytope::from_points(e.points);
    const auto h1 = h1_group(p);
    const auto t2 = tor_h2(p);
    std::vector<BigInt> h1_oracle(e.expected.h1_torsion.begin(), e.expected.h1_torsion.end());
    std::vector<BigInt> t2_oracle(e.expected.tor_h2.begin(), e.expected.tor_h2.end());
    c.expect(h1 == AbelianGroup(0, h1_oracle) && t2 == AbelianGroup(0, t2_oracle), e.name + " vs oracle");
    for (int k = 0; k < 20; ++k) {
      const auto moved = Polytope::from_points(oracle::apply(oracle::random_unimodular(4, rng), e.points));
      c.expect(h1_group(moved) == h1, e.name + " H1 moved");
      c.expect(tor_h2(moved) == t2, e.name + " Tor H2 moved");
      ++moves;
    }
  }
  return c.outcome(std::to_string(moves) + " basis changes over " + std::to_string(corpus::entries().size()) +
                   " polytopes");
}

Outcome correction_identity() {
  Check c;
  std::size_t nonzero = 0;
  for (const auto& p : corpus_and_polars()) {
    ReflexivePair pair(p);
    const long long r = ker_rho_h3_rank(pair, GeometryConfig::hypersurface(pair));
    c.expect(r == 2 * hodge_numbers(pair).corr_21, "ker_rho != 2 corr_21");
    c.expect(r % 2 == 0, "odd");
    c.expect(ker_rho_h3_rank(pair, trivial_partition(pair)) % 2 == 0, "odd in CI mode");
    if (r != 0) ++nonzero;
  }
  const std::vector<LatticeVector> s5 = {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0},
                                         {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {-1, -1, -1, -1, -1}};
  ReflexivePair bicubic(Polytope::from_points(s5));
  const auto cfg =
      GeometryConfig::complete_intersection(bicubic, validate_nef_partition(bicubic.polytope(), {{0, 1, 5}, {2, 3, 4}}));
  c.expect(ker_rho_h3_rank(bicubic, cfg) % 2 == 0, "odd on the bicubic");
  return c.outcome(std::to_string(2 * corpus::entries().size()) + " polytopes, " + std::to_string(nonzero) +
                   " with nonzero kernel; bicubic CI even");
}

Outcome ci_reduction() {
  Check c;
  std::size_t compared = 0;
  for (const auto& p : corpus_and_polars()) {
    ReflexivePair pair(p);
    const auto hs = GeometryConfig::hypersurface(pair);
    const auto ci = trivial_partition(pair);
    const auto a = stratum_counts(pair, hs), b = stratum_counts(pair, ci);
    c.expect(a.edges.size() == b.edges.size() && a.two_faces.size() == b.two_faces.size(), "shape");
    for (std::size_t i = 0; i < std::min(a.edges.size(), b.edges.size()); ++i) {
      c.expect(a.edges[i].genus == b.edges[i].genus && a.edges[i].h1_rank == b.edges[i].h1_rank, "edge stratum");
      ++compared;
    }
    for (std::size_t i = 0; i < std::min(a.two_faces.size(), b.two_faces.size()); ++i) {
      c.expect(a.two_faces[i].points == b.two_faces[i].points, "two-face stratum");
      ++compared;
    }
    c.expect(rank_h2(pair, hs) == rank_h2(pair, ci), "rank_h2");
    c.expect(ker_rho_h3_rank(pair, hs) == ker_rho_h3_rank(pair, ci), "ker_rho_h3_rank");
    const auto ha = homology_summary(pair, hs), hb = homology_summary(pair, ci);
    for (std::size_t k : {0, 1, 2, 4, 5, 6}) c.expect(*ha.h[k] == *hb.h[k], "H" + std::to_string(k));
  }
  return c.outcome(std::to_string(compared) + " strata on " + std::to_string(2 * corpus::entries().size()) +
                   " polytopes");
}

Outcome ktheory_ranks() {
  Check c;
  std::size_t torsion_cases = 0;
  for (const auto& p : corpus_and_polars()) {
    ReflexivePair pair(p);
    const auto hodge = hodge_numbers(pair);
    const auto h = homology_summary(pair, GeometryConfig::hypersurface(pair));
    const auto k = k_groups(h);
    c.expect(static_cast<long long>(k.k0.rank()) == 2 + 2 * hodge.h11, "rank K0");
    c.expect(static_cast<long long>(k.k1.rank()) == 2 + 2 * hodge.h21, "rank K1");
    c.expect(k.k0.torsion() == direct_sum(h.h[1]->torsion(), h.h[2]->torsion()), "Tor K0");
    if (!k.k0.is_free()) ++torsion_cases;
  }
  c.expect(torsion_cases >= 2, "no torsion case exercised");
  return c.outcome(std::to_string(2 * corpus::entries().size()) + " polytopes, " + std::to_string(torsion_cases) +
                   " with torsion");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"4-cube face census", cube_census},
      {"quintic pair", quintic_pair},
      {"mirror swap", mirror_swap},
      {"rank_h2 = h11", rank_h2_identity},
      {"shelling suite", shelling_suite},
      {"Smith normal form", snf_suite},
      {"torsion invariance", torsion_invariance},
      {"ker_rho = 2 corr_21", correction_identity},
      {"trivial partition reduction", ci_reduction},
      {"K-theory ranks", ktheory_ranks},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
