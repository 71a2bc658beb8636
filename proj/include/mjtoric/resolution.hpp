#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mjtoric/errors.hpp"
#include "mjtoric/jacobian.hpp"
#include "mjtoric/matrix.hpp"
#include "mjtoric/mj.hpp"
#include "mjtoric/numeric.hpp"
#include "mjtoric/polyhedron.hpp"
#include "mjtoric/semigroup.hpp"

namespace mjtoric {

/// Per-ray support data of a resolution fan; all minima over finite
/// integer exponent sets, hence exact integers.
struct RayData {
  Vec n;          // primitive ray generator in the dual lattice
  Int ideal_min;  // min of <., n> over the ideal exponents
  Int log_min;    // min over the log-Jacobian set; mather discrepancy + 1
  Int jac_min;    // min over the Jacobian set
};

/**
 * A smooth simplicial fan supported on the dual cone, refining the normal
 * fans of every polyhedron the evaluation formula touches, with the per-ray
 * data needed to evaluate multiplier-ideal membership definitionally.
 */
struct ResolutionFan {
  AffineSemigroup semigroup;
  std::vector<RayData> rays;
  std::vector<std::vector<std::size_t>> cones;  // sorted ray-index lists
  // finite exponent sets retained for data recomputation and verification
  std::vector<Vec> ideal_points, log_points, jac_points, shift_points;
};

struct ResolutionOptions {
  std::size_t refinement_cap = 2000;  // stellar subdivisions before giving up
};

namespace detail {

inline Int int_min_over(const std::vector<Vec>& pts, const Vec& n) {
  Int best = dot(pts[0], n);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Int c = dot(pts[i], n);
    if (c < best) best = c;
  }
  return best;
}

struct FanBuilder {
  std::vector<Vec> rays;
  std::map<Vec, std::size_t> index;
  std::vector<std::vector<std::size_t>> cones;

  std::size_t add_ray(const Vec& v) {
    auto it = index.find(v);
    if (it != index.end()) return it->second;
    rays.push_back(v);
    index.emplace(v, rays.size() - 1);
    return rays.size() - 1;
  }

  void canonicalize_cones() {
    for (auto& c : cones) std::sort(c.begin(), c.end());
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  }
};

/// Facets of a full-dimensional cone, as sorted sublists of its ray indices.
inline std::vector<std::vector<std::size_t>> cone_facets(const FanBuilder& fb,
                                                         const std::vector<std::size_t>& cone) {
  const std::size_t d = fb.rays.empty() ? 0 : fb.rays[0].size();
  std::vector<Vec> gens;
  for (std::size_t i : cone) gens.push_back(fb.rays[i]);
  std::vector<std::vector<std::size_t>> facets;
  if (cone.size() == d) {  // simplicial: drop one ray each
    for (std::size_t j = 0; j < cone.size(); ++j) {
      std::vector<std::size_t> f;
      for (std::size_t k = 0; k < cone.size(); ++k)
        if (k != j) f.push_back(cone[k]);
      facets.push_back(std::move(f));
    }
    return facets;
  }
  for (const Vec& h : cone_dual_rays(gens, d)) {
    std::vector<std::size_t> f;
    for (std::size_t i : cone)
      if (dot(fb.rays[i], h) == 0) f.push_back(i);
    std::sort(f.begin(), f.end());
    facets.push_back(std::move(f));
  }
  return facets;
}

/// Stellar subdivision of the fan at one of its rays.
inline void stellar_at_ray(FanBuilder& fb, std::size_t rho) {
  std::vector<std::vector<std::size_t>> next;
  for (const auto& cone : fb.cones) {
    bool has = std::find(cone.begin(), cone.end(), rho) != cone.end();
    const std::size_t d = fb.rays[0].size();
    if (!has || cone.size() == d) {
      next.push_back(cone);
      continue;
    }
    for (auto& f : cone_facets(fb, cone)) {
      if (std::find(f.begin(), f.end(), rho) != f.end()) continue;
      f.push_back(rho);
      std::sort(f.begin(), f.end());
      next.push_back(std::move(f));
    }
  }
  fb.cones = std::move(next);
  fb.canonicalize_cones();
}

/// Barycentric coordinates of x in the simplicial cone with the given rays.
inline std::optional<QVec> simplicial_coordinates(const std::vector<Vec>& rays,
                                                  const Vec& x) {
  const std::size_t d = x.size();
  IntMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) m.at(i, j) = rays[j][i];
  Int dm = det(m);
  if (dm == 0) return std::nullopt;
  QVec t(d);
  for (std::size_t j = 0; j < d; ++j) {
    IntMatrix rep = m;
    for (std::size_t i = 0; i < d; ++i) rep.at(i, j) = x[i];
    t[j] = make_rat(det(rep), dm);
  }
  return t;
}

/// Stellar subdivision at a new ray through `v`; splits every simplicial
/// cone containing it.
inline void stellar_at_point(FanBuilder& fb, const Vec& v) {
  std::size_t idx = fb.add_ray(v);
  std::vector<std::vector<std::size_t>> next;
  for (const auto& cone : fb.cones) {
    if (cone.size() != v.size()) {  // only simplicial cones are split
      next.push_back(cone);
      continue;
    }
    std::vector<Vec> gens;
    for (std::size_t i : cone) gens.push_back(fb.rays[i]);
    auto t = simplicial_coordinates(gens, v);
    bool inside = t.has_value();
    if (inside)
      for (const Rat& ti : *t)
        if (ti < 0) {
          inside = false;
          break;
        }
    if (!inside) {
      next.push_back(cone);
      continue;
    }
    for (std::size_t j = 0; j < cone.size(); ++j) {
      if ((*t)[j] <= 0) continue;
      std::vector<std::size_t> c;
      for (std::size_t k = 0; k < cone.size(); ++k) c.push_back(k == j ? idx : cone[k]);
      std::sort(c.begin(), c.end());
      next.push_back(std::move(c));
    }
  }
  fb.cones = std::move(next);
  fb.canonicalize_cones();
}

inline Int cone_multiplicity(const FanBuilder& fb, const std::vector<std::size_t>& cone) {
  std::vector<Vec> gens;
  for (std::size_t i : cone) gens.push_back(fb.rays[i]);
  return abs(det(IntMatrix::from_rows(gens)));
}

/**
 * Smallest nonzero lattice point of the half-open fundamental parallelepiped
 * of a simplicial cone, minimizing the coordinate sum with lexicographic
 * tie-break. Exists precisely when the multiplicity exceeds one.
 */
inline std::optional<Vec> fundamental_point(const std::vector<Vec>& rays) {
  const std::size_t d = rays[0].size();
  Vec lo(d, Int(0)), hi(d, Int(0));
  for (std::size_t k = 0; k < d; ++k)
    for (const Vec& r : rays) {
      if (r[k] < 0) lo[k] += r[k];
      if (r[k] > 0) hi[k] += r[k];
    }
  std::optional<Vec> best;
  Rat best_sum;
  Vec x(d);
  auto consider = [&](const Vec& cand) {
    auto t = simplicial_coordinates(rays, cand);
    if (!t) return;
    Rat sum = 0;
    for (const Rat& ti : *t) {
      if (ti < 0 || ti >= 1) return;
      sum += ti;
    }
    if (sum == 0) return;  // the origin
    if (!best || sum < best_sum || (sum == best_sum && cand < *best)) {
      best = cand;
      best_sum = sum;
    }
  };
  // walk the integer box spanned by the parallelepiped
  std::vector<Int> cur(d);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == d) {
      for (std::size_t i = 0; i < d; ++i) x[i] = cur[i];
      consider(x);
      return;
    }
    for (Int v = lo[k]; v <= hi[k]; ++v) {
      cur[k] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace detail

/**
 * Builds a toric log resolution: seeds with the normal fan of the Minkowski
 * sum of the four relevant polyhedra (so every support function is linear
 * on each cone), triangulates by stellar subdivision at rays, then smooths
 * each simplicial cone by stellar subdivision at a minimal fundamental-
 * parallelepiped lattice point until every cone has multiplicity one.
 */
inline ResolutionFan build_resolution(const MJContext& ctx, ResolutionOptions opts = {}) {
  const AffineSemigroup& s = ctx.semigroup;
  const std::size_t d = s.dim();

  VRep newt_log = newton_polyhedron(ctx.jacobian.log_set, s.generators());
  VRep newt_jac = newton_polyhedron(ctx.jacobian.jac_set, s.generators());
  VRep sum = minkowski_scale_sum(ctx.newt_ideal, newt_jac, Rat(1));
  sum = minkowski_scale_sum(sum, newt_log, Rat(1));
  sum = minkowski_scale_sum(sum, ctx.newt_shift, Rat(1));

  HRep h = vrep_to_hrep(sum);
  VRep v = hrep_to_vrep(h, d);

  detail::FanBuilder fb;
  for (const Facet& f : h.facets) fb.add_ray(f.normal);
  for (const QVec& vert : v.points) {
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i < h.facets.size(); ++i)
      if (qdot(vert, h.facets[i].normal) == h.facets[i].rhs) cone.push_back(i);
    fb.cones.push_back(std::move(cone));
  }
  fb.canonicalize_cones();

  std::size_t steps = 0;
  auto charge = [&]() {
    if (++steps > opts.refinement_cap)
      throw refinement_budget_exceeded("fan refinement exceeded its subdivision budget");
  };

  // triangulate
  for (;;) {
    std::size_t target = fb.cones.size();
    for (std::size_t c = 0; c < fb.cones.size(); ++c)
      if (fb.cones[c].size() > d) {
        target = c;
        break;
      }
    if (target == fb.cones.size()) break;
    charge();
    std::size_t rho = fb.cones[target][0];
    for (std::size_t i : fb.cones[target])
      if (fb.rays[i] < fb.rays[rho]) rho = i;
    detail::stellar_at_ray(fb, rho);
  }

  // smooth
  for (;;) {
    std::size_t target = fb.cones.size();
    for (std::size_t c = 0; c < fb.cones.size(); ++c)
      if (detail::cone_multiplicity(fb, fb.cones[c]) != 1) {
        target = c;
        break;
      }
    if (target == fb.cones.size()) break;
    charge();
    std::vector<Vec> gens;
    for (std::size_t i : fb.cones[target]) gens.push_back(fb.rays[i]);
    auto pt = detail::fundamental_point(gens);
    if (!pt)
      throw invalid_input("non-unimodular cone without interior lattice point");
    detail::stellar_at_point(fb, primitive(*pt));
  }

  // canonical ray order
  std::vector<std::size_t> perm(fb.rays.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return fb.rays[a] < fb.rays[b]; });
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;

  ResolutionFan fan{s, {}, {}, ctx.ideal.exponents, ctx.jacobian.log_set,
                    ctx.jacobian.jac_set, ctx.jacobian.shift_set};
  for (std::size_t i : perm) {
    const Vec& n = fb.rays[i];
    fan.rays.push_back({n, detail::int_min_over(fan.ideal_points, n),
                        detail::int_min_over(fan.log_points, n),
                        detail::int_min_over(fan.jac_points, n)});
  }
  for (auto& cone : fb.cones) {
    std::vector<std::size_t> c;
    for (std::size_t i : cone) c.push_back(inv[i]);
    std::sort(c.begin(), c.end());
    fan.cones.push_back(std::move(c));
  }
  std::sort(fan.cones.begin(), fan.cones.end());
  return fan;
}

/**
 * Definitional membership: the global-section condition of the divisor
 * (mather discrepancy) - (jacobian divisor) - floor(lambda * ideal divisor),
 * checked ray by ray with an exact rational floor.
 */
inline bool oracle_membership(const ResolutionFan& fan, const Vec& m, const Rat& lambda) {
  if (lambda < 0) throw negative_lambda("membership requires lambda >= 0");
  if (!fan.semigroup.contains(m))
    throw not_in_semigroup("exponent " + vec_to_string(m) + " is not in the semigroup");
  for (const RayData& r : fan.rays) {
    Int rhs = 1 - r.log_min + r.jac_min + rat_floor(lambda * Rat(r.ideal_min));
    if (dot(m, r.n) < rhs) return false;
  }
  return true;
}

struct ResolutionReport {
  bool smooth = true;
  bool covers = true;
  bool principal = true;
  std::vector<std::string> failures;
  bool pass() const { return smooth && covers && principal; }
};

/**
 * Structural validation of a fan as a log resolution: unimodular simplicial
 * cones, support exactly the dual cone (every interior facet shared by two
 * cones, boundary facets on the dual cone's walls), and a unique minimizing
 * vertex per cone for each of the four polyhedra.
 */
inline ResolutionReport verify_resolution(const ResolutionFan& fan) {
  ResolutionReport rep;
  const std::size_t d = fan.semigroup.dim();

  detail::FanBuilder fb;
  for (const RayData& r : fan.rays) fb.add_ray(r.n);
  fb.cones = fan.cones;

  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    if (fan.cones[c].size() != d) {
      rep.smooth = false;
      rep.failures.push_back("cone #" + std::to_string(c) + " is not simplicial");
      continue;
    }
    Int mult = detail::cone_multiplicity(fb, fan.cones[c]);
    if (mult != 1) {
      rep.smooth = false;
      rep.failures.push_back("cone #" + std::to_string(c) + " has multiplicity " +
                             mult.get_str());
    }
  }

  for (const RayData& r : fan.rays)
    for (const Vec& g : fan.semigroup.generators())
      if (dot(g, r.n) < 0) {
        rep.covers = false;
        rep.failures.push_back("ray " + vec_to_string(r.n) + " leaves the dual cone");
      }
  std::map<std::vector<std::size_t>, std::size_t> facet_count;
  for (const auto& cone : fan.cones)
    for (const auto& f : detail::cone_facets(fb, cone)) ++facet_count[f];
  for (const auto& [facet, count] : facet_count) {
    bool boundary = false;
    for (const Vec& g : fan.semigroup.generators()) {
      bool on_wall = true;
      for (std::size_t i : facet)
        if (dot(g, fan.rays[i].n) != 0) {
          on_wall = false;
          break;
        }
      if (on_wall) {
        boundary = true;
        break;
      }
    }
    const std::size_t expected = boundary ? 1 : 2;
    if (count != expected) {
      rep.covers = false;
      rep.failures.push_back("facet shared by " + std::to_string(count) +
                             " cones, expected " + std::to_string(expected));
    }
  }

  const std::vector<std::pair<const std::vector<Vec>*, const char*>> sets = {
      {&fan.ideal_points, "ideal"},
      {&fan.jac_points, "jacobian"},
      {&fan.log_points, "log-jacobian"},
      {&fan.shift_points, "shift"}};
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    for (const auto& [pts, name] : sets) {
      if (pts->empty()) continue;
      std::vector<Int> mins;
      for (std::size_t i : fan.cones[c])
        mins.push_back(detail::int_min_over(*pts, fan.rays[i].n));
      bool found = false;
      for (const Vec& p : *pts) {
        bool all = true;
        for (std::size_t k = 0; k < fan.cones[c].size(); ++k)
          if (dot(p, fan.rays[fan.cones[c][k]].n) != mins[k]) {
            all = false;
            break;
          }
        if (all) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.principal = false;
        rep.failures.push_back(std::string("no common minimizer for the ") + name +
                               " polyhedron on cone #" + std::to_string(c));
      }
    }
  }
  return rep;
}

/**
 * Stellar subdivision of a built fan at a lattice point of its support;
 * per-ray data for the new ray is recomputed from the stored exponent sets.
 * Membership answers are invariant under this refinement.
 */
inline ResolutionFan stellar_subdivide(const ResolutionFan& fan, const Vec& point) {
  Vec v = primitive(point);
  if (is_zero_vec(v)) throw invalid_input("cannot subdivide at the origin");
  detail::FanBuilder fb;
  for (const RayData& r : fan.rays) fb.add_ray(r.n);
  fb.cones = fan.cones;
  detail::stellar_at_point(fb, v);
  ResolutionFan out{fan.semigroup, {}, fb.cones, fan.ideal_points, fan.log_points,
                    fan.jac_points, fan.shift_points};
  for (const Vec& n : fb.rays)
    out.rays.push_back({n, detail::int_min_over(out.ideal_points, n),
                        detail::int_min_over(out.log_points, n),
                        detail::int_min_over(out.jac_points, n)});
  return out;
}

}  // namespace mjtoric
