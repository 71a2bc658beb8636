#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "mjtoric/errors.hpp"
#include "mjtoric/matrix.hpp"
#include "mjtoric/numeric.hpp"

namespace mjtoric {

/**
 * Exact rational polyhedra, V-side: convex hull of `points` plus the cone
 * spanned by `rays`. Rays are primitive integer vectors. A nonempty
 * polyhedron has at least one point.
 */
struct VRep {
  std::vector<QVec> points;
  std::vector<Vec> rays;
};

/// One inequality <m, normal> >= rhs with a primitive integer normal.
struct Facet {
  Vec normal;
  Rat rhs;
};

/// Irredundant facet description; rhs values are exact minima.
struct HRep {
  std::vector<Facet> facets;
};

namespace detail {

struct DDRay {
  Vec v;                           // primitive integer direction
  std::vector<std::size_t> zero;   // sorted indices of tight processed constraints
};

inline bool zero_subset(const std::vector<std::size_t>& a,
                        const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<std::size_t> zero_intersect(const std::vector<std::size_t>& a,
                                               const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace detail

/**
 * Extreme rays of the cone {y : <a, y> >= 0 for every a in halfspaces},
 * by the incremental double description method with the combinatorial
 * adjacency test. The halfspace normals must span the ambient space, so
 * the result is pointed; the ray list may be empty (cone {0}).
 */
inline std::vector<Vec> cone_dual_rays(const std::vector<Vec>& halfspaces_in,
                                       std::size_t dim) {
  // canonicalize: primitive, nonzero, deduplicated, sorted
  std::set<Vec> uniq;
  for (const Vec& a : halfspaces_in) {
    if (a.size() != dim) throw invalid_input("halfspace dimension mismatch");
    Vec p = primitive(a);
    if (!is_zero_vec(p)) uniq.insert(std::move(p));
  }
  std::vector<Vec> hs(uniq.begin(), uniq.end());

  // greedy independent subset for the simplicial start
  std::vector<Vec> basis;
  std::vector<std::size_t> basis_idx;
  for (std::size_t i = 0; i < hs.size() && basis.size() < dim; ++i) {
    basis.push_back(hs[i]);
    if (rank_of_rows(basis) == basis.size())
      basis_idx.push_back(i);
    else
      basis.pop_back();
  }
  if (basis.size() < dim)
    throw not_full_dimensional("halfspace normals do not span the ambient space");

  // process basis constraints first; zero sets hold processing positions,
  // which stay sorted because positions only grow
  std::vector<std::size_t> order = basis_idx;
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (std::find(basis_idx.begin(), basis_idx.end(), i) == basis_idx.end())
      order.push_back(i);

  // rays of the simplicial cone: signed adjugate columns of the basis matrix
  IntMatrix b = IntMatrix::from_rows(basis);
  Int bd = det(b);
  std::vector<detail::DDRay> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    Vec r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<std::size_t> rs, cs;
      for (std::size_t k = 0; k < dim; ++k)
        if (k != j) rs.push_back(k);
      for (std::size_t k = 0; k < dim; ++k)
        if (k != i) cs.push_back(k);
      Int cof = minor_det(b, rs, cs);
      if ((i + j) % 2 == 1) cof = -cof;
      r[i] = (bd < 0) ? Int(-cof) : cof;
    }
    detail::DDRay dr;
    dr.v = primitive(r);
    for (std::size_t k = 0; k < dim; ++k)
      if (k != j) dr.zero.push_back(k);
    rays.push_back(std::move(dr));
  }

  // incremental insertion of the remaining halfspaces
  for (std::size_t ci = dim; ci < order.size(); ++ci) {
    const Vec& a = hs[order[ci]];
    std::vector<Int> s(rays.size());
    bool any_minus = false;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s[k] = dot(a, rays[k].v);
      if (s[k] < 0) any_minus = true;
    }
    if (!any_minus) {
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (s[k] == 0) rays[k].zero.push_back(ci);
      continue;
    }
    std::vector<detail::DDRay> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (s[k] > 0) next.push_back(rays[k]);
      if (s[k] == 0) {
        next.push_back(rays[k]);
        next.back().zero.push_back(ci);
      }
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t m = 0; m < rays.size(); ++m) {
        if (s[m] >= 0) continue;
        // adjacency: no third ray is tight on every constraint common to both
        auto common = detail::zero_intersect(rays[p].zero, rays[m].zero);
        if (common.size() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size(); ++t) {
          if (t == p || t == m) continue;
          if (detail::zero_subset(common, rays[t].zero)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Vec w(dim);
        for (std::size_t i = 0; i < dim; ++i)
          w[i] = s[p] * rays[m].v[i] - s[m] * rays[p].v[i];
        detail::DDRay nr;
        nr.v = primitive(w);
        nr.zero = common;
        nr.zero.push_back(ci);  // ci exceeds every processed position: stays sorted
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  std::vector<Vec> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  return out;
}

/**
 * Ray generators of the dual cone {n : <g, n> >= 0 for all g}. The input
 * rays must span the ambient space.
 */
inline std::vector<Vec> dual_cone(const std::vector<Vec>& rays) {
  if (rays.empty()) throw not_full_dimensional("dual cone of an empty ray set");
  return cone_dual_rays(rays, rays[0].size());
}

/// Exact minimum of <., n> over the polyhedron; requires boundedness below.
inline Rat min_over(const VRep& v, const Vec& n) {
  if (v.points.empty()) throw empty_set("minimum over an empty polyhedron");
  for (const Vec& r : v.rays)
    if (dot(r, n) < 0)
      throw invalid_input("support function unbounded below along " + vec_to_string(n));
  Rat best = qdot(v.points[0], n);
  for (std::size_t i = 1; i < v.points.size(); ++i) {
    Rat c = qdot(v.points[i], n);
    if (c < best) best = c;
  }
  return best;
}

/**
 * Facet enumeration: lift points to height 1 and rays to height 0, compute
 * the facets of the homogenization cone by double description, drop the
 * height facet, and dehomogenize. rhs values are recomputed as exact minima
 * over the V-data.
 */
inline HRep vrep_to_hrep(const VRep& v) {
  if (v.points.empty()) throw empty_set("facet enumeration of an empty polyhedron");
  const std::size_t d = v.points[0].size();
  std::vector<Vec> gens;
  for (const QVec& p : v.points) {
    Int den = 1;
    for (const Rat& x : p) {
      Int g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      den = den * x.get_den() / g;  // lcm of denominators
    }
    Vec g(d + 1);
    g[0] = den;
    for (std::size_t i = 0; i < d; ++i) {
      Rat scaled = p[i] * Rat(den);
      g[i + 1] = scaled.get_num();
    }
    gens.push_back(std::move(g));
  }
  for (const Vec& r : v.rays) {
    Vec g(d + 1, Int(0));
    for (std::size_t i = 0; i < d; ++i) g[i + 1] = r[i];
    gens.push_back(std::move(g));
  }
  std::vector<Vec> duals = cone_dual_rays(gens, d + 1);

  HRep h;
  for (const Vec& f : duals) {
    Vec n(f.begin() + 1, f.end());
    if (is_zero_vec(n)) continue;  // height inequality
    Facet fc;
    fc.normal = primitive(n);
    fc.rhs = min_over(v, fc.normal);
    h.facets.push_back(std::move(fc));
  }
  std::sort(h.facets.begin(), h.facets.end(),
            [](const Facet& x, const Facet& y) { return x.normal < y.normal; });
  return h;
}

/**
 * Vertex/ray recovery from a facet description: extreme rays of the
 * homogenization cone, split by height.
 */
inline VRep hrep_to_vrep(const HRep& h, std::size_t dim) {
  std::vector<Vec> hs;
  Vec height(dim + 1, Int(0));
  height[0] = 1;
  hs.push_back(height);
  for (const Facet& f : h.facets) {
    Vec a(dim + 1);
    const Int& den = f.rhs.get_den();
    a[0] = -f.rhs.get_num();
    for (std::size_t i = 0; i < dim; ++i) a[i + 1] = den * f.normal[i];
    hs.push_back(std::move(a));
  }
  std::vector<Vec> rays = cone_dual_rays(hs, dim + 1);
  VRep v;
  for (const Vec& r : rays) {
    if (r[0] > 0) {
      QVec p(dim);
      for (std::size_t i = 0; i < dim; ++i) p[i] = make_rat(r[i + 1], r[0]);
      v.points.push_back(std::move(p));
    } else {
      v.rays.push_back(primitive(Vec(r.begin() + 1, r.end())));
    }
  }
  std::sort(v.points.begin(), v.points.end());
  std::sort(v.rays.begin(), v.rays.end());
  return v;
}

/**
 * A + lambda*B for lambda >= 0: pointwise sums of points, union of rays.
 * By convention lambda = 0 returns A unchanged.
 */
inline VRep minkowski_scale_sum(const VRep& a, const VRep& b, const Rat& lambda) {
  if (lambda < 0) throw negative_lambda("minkowski sum requires lambda >= 0");
  if (lambda == 0) return a;
  std::set<QVec> pts;
  for (const QVec& p : a.points)
    for (const QVec& q : b.points) {
      QVec s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + lambda * q[i];
      pts.insert(std::move(s));
    }
  std::set<Vec> rays;
  for (const Vec& r : a.rays) rays.insert(primitive(r));
  for (const Vec& r : b.rays) rays.insert(primitive(r));
  VRep out;
  out.points.assign(pts.begin(), pts.end());
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

/// Strict interiority: every inequality holds strictly.
inline bool strict_interior_contains(const HRep& h, const QVec& m) {
  for (const Facet& f : h.facets)
    if (!(qdot(m, f.normal) > f.rhs)) return false;
  return true;
}

inline bool strict_interior_contains(const HRep& h, const Vec& m) {
  return strict_interior_contains(h, to_qvec(m));
}

/// Non-strict membership against a facet description.
inline bool hrep_contains(const HRep& h, const QVec& m) {
  for (const Facet& f : h.facets)
    if (qdot(m, f.normal) < f.rhs) return false;
  return true;
}

/**
 * Newton polyhedron conv(exponents + S) as a V-representation: the exponent
 * set as points, the semigroup cone generators as recession rays.
 */
inline VRep newton_polyhedron(const std::vector<Vec>& exponents,
                              const std::vector<Vec>& cone_rays) {
  if (exponents.empty()) throw empty_set("newton polyhedron of an empty exponent set");
  std::set<Vec> uniq(exponents.begin(), exponents.end());
  VRep v;
  for (const Vec& e : uniq) v.points.push_back(to_qvec(e));
  std::set<Vec> rays;
  for (const Vec& r : cone_rays) {
    Vec p = primitive(r);
    if (!is_zero_vec(p)) rays.insert(std::move(p));
  }
  v.rays.assign(rays.begin(), rays.end());
  return v;
}

/**
 * Facet normals of A + B, each with the exact minimum over A and over B
 * separately. For every lambda > 0 the inequalities
 * <m, n> >= min_a(n) + lambda*min_b(n) describe A + lambda*B, and the set
 * contains every facet normal of A + lambda*B.
 */
struct CommonRay {
  Vec normal;
  Rat min_a;
  Rat min_b;
};

inline std::vector<CommonRay> common_normal_rays(const VRep& a, const VRep& b) {
  VRep sum = minkowski_scale_sum(a, b, Rat(1));
  HRep h = vrep_to_hrep(sum);
  std::vector<CommonRay> out;
  for (const Facet& f : h.facets)
    out.push_back({f.normal, min_over(a, f.normal), min_over(b, f.normal)});
  return out;
}

/// Exact polyhedron equality through mutual H-satisfaction of V-data.
inline bool polyhedra_equal(const VRep& a, const VRep& b) {
  HRep ha = vrep_to_hrep(a);
  HRep hb = vrep_to_hrep(b);
  auto inside = [](const VRep& v, const HRep& h) {
    for (const QVec& p : v.points)
      if (!hrep_contains(h, p)) return false;
    for (const Vec& r : v.rays)
      for (const Facet& f : h.facets)
        if (dot(r, f.normal) < 0) return false;
    return true;
  };
  return inside(a, hb) && inside(b, ha);
}

}  // namespace mjtoric
