#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "mjtoric/errors.hpp"
#include "mjtoric/jacobian.hpp"
#include "mjtoric/numeric.hpp"
#include "mjtoric/polyhedron.hpp"
#include "mjtoric/semigroup.hpp"
#include "mjtoric/toric_ideal.hpp"

namespace mjtoric {

/**
 * One facet normal shared by the shift polyhedron Q and the ideal's Newton
 * polyhedron P, with the exact support minima of both. For every lambda >= 0
 * the inequalities <m, n> >= shift_min + lambda * ideal_min cut out Q + lambda*P,
 * and membership in the interior is strict inequality on all of them.
 */
struct NormalRayData {
  Vec normal;
  Rat shift_min;  // exact min over Q
  Rat ideal_min;  // exact min over P, >= 0 since P recedes along the full cone
};

/**
 * Precomputed state for multiplier-ideal queries on one (semigroup, ideal)
 * pair. Immutable after construction; every query is O(#rays) exact
 * rational arithmetic, for any lambda.
 */
struct MJContext {
  AffineSemigroup semigroup;
  JacobianData jacobian;
  MonomialSIdeal ideal;
  VRep newt_ideal;  // P = Newt(ideal)
  VRep newt_shift;  // Q = conv(shift_set + S)
  std::vector<NormalRayData> rays;
};

inline MJContext build_context(AffineSemigroup s, const std::vector<Vec>& ideal_exponents,
                               std::optional<std::vector<Vec>> user_basis = std::nullopt,
                               ToricOptions opts = {}) {
  if (ideal_exponents.empty())
    throw empty_set("the monomial ideal needs at least one exponent");
  MonomialSIdeal ideal = make_monomial_ideal(s, ideal_exponents);
  MarkovBasis mb = user_basis ? accept_user_basis(s, *user_basis) : markov_basis(s, opts);
  JacobianData jd = build_jacobian_data(s, std::move(mb));

  MJContext ctx{std::move(s), std::move(jd), std::move(ideal), {}, {}, {}};
  ctx.newt_ideal = newton_polyhedron(ctx.ideal.exponents, ctx.semigroup.generators());
  ctx.newt_shift = newton_polyhedron(ctx.jacobian.shift_set, ctx.semigroup.generators());
  for (const CommonRay& cr : common_normal_rays(ctx.newt_shift, ctx.newt_ideal)) {
    if (cr.min_b < 0)
      throw invalid_input("ideal support minimum negative on a common ray");
    ctx.rays.push_back({cr.normal, cr.min_a, cr.min_b});
  }
  return ctx;
}

/// Polyhedral interior test for arbitrary lattice points, any lambda >= 0.
inline bool in_interior(const MJContext& ctx, const Vec& m, const Rat& lambda) {
  if (lambda < 0) throw negative_lambda("membership requires lambda >= 0");
  for (const NormalRayData& r : ctx.rays) {
    Rat bound = r.shift_min + lambda * r.ideal_min;
    if (!(Rat(dot(m, r.normal)) > bound)) return false;
  }
  return true;
}

/**
 * Multiplier-ideal membership: the monomial with exponent m belongs to the
 * ideal at exponent lambda iff m is strictly interior to Q + lambda*P.
 * Queries are posed for monomials of the semigroup ring.
 */
inline bool mj_membership(const MJContext& ctx, const Vec& m, const Rat& lambda) {
  if (!ctx.semigroup.contains(m))
    throw not_in_semigroup("exponent " + vec_to_string(m) + " is not in the semigroup");
  return in_interior(ctx, m, lambda);
}

struct Threshold {
  bool is_infinite = false;
  Rat value;                  // meaningful when finite
  bool never_member = false;  // membership fails for every lambda >= 0
};

/**
 * Per-monomial threshold: the supremum of exponents lambda for which m is a
 * member. Closed form over the common rays; rays the ideal polyhedron does
 * not charge decide membership outright, the others each give a linear
 * bound on lambda.
 */
inline Threshold mj_threshold(const MJContext& ctx, const Vec& m) {
  if (!ctx.semigroup.contains(m))
    throw not_in_semigroup("exponent " + vec_to_string(m) + " is not in the semigroup");
  bool strict_at_zero_rays = true;
  std::optional<Rat> min_ratio;
  for (const NormalRayData& r : ctx.rays) {
    Rat value = Rat(dot(m, r.normal)) - r.shift_min;
    if (r.ideal_min == 0) {
      if (!(value > 0)) strict_at_zero_rays = false;
    } else {
      Rat ratio = value / r.ideal_min;
      if (!min_ratio || ratio < *min_ratio) min_ratio = ratio;
    }
  }
  Threshold t;
  if (!strict_at_zero_rays || (min_ratio && *min_ratio <= 0)) {
    t.value = 0;
    t.never_member = true;
    return t;
  }
  if (!min_ratio) {
    t.is_infinite = true;  // unit ideal: member for every lambda
    return t;
  }
  t.value = *min_ratio;
  return t;
}

/// All semigroup elements of degree at most `bound`, sorted by (degree, lex).
inline std::vector<Vec> enumerate_semigroup_points(const AffineSemigroup& s,
                                                   const Int& bound) {
  std::set<Vec> seen;
  std::vector<Vec> frontier;
  if (bound >= 0) {
    frontier.push_back(Vec(s.dim(), Int(0)));
    seen.insert(frontier.front());
  }
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const Vec& p : frontier) {
      for (const Vec& g : s.generators()) {
        Vec q = vadd(p, g);
        if (s.degree(q) > bound) continue;
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Vec> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [&](const Vec& x, const Vec& y) {
    Int dx = s.degree(x), dy = s.degree(y);
    if (dx != dy) return dx < dy;
    return x < y;
  });
  return out;
}

/**
 * Frobenius number of the numerical semigroup generated by `degrees`
 * (gcd 1), by shortest distances on residues modulo the smallest
 * generator. nullopt when the smallest generator is too large to tabulate.
 */
inline std::optional<Int> frobenius_number(std::vector<Int> degrees) {
  if (degrees.empty()) return std::nullopt;
  std::sort(degrees.begin(), degrees.end());
  if (degrees.front() <= 0) return std::nullopt;
  if (degrees.front() == 1) return Int(-1);
  if (degrees.front() > 1000000) return std::nullopt;
  const unsigned long a = degrees.front().get_ui();
  std::vector<std::optional<Int>> dist(a);
  dist[0] = Int(0);
  for (unsigned long round = 0; round < a; ++round) {
    bool changed = false;
    for (unsigned long res = 0; res < a; ++res) {
      if (!dist[res]) continue;
      for (const Int& d : degrees) {
        Int cand = *dist[res] + d;
        unsigned long nr = mpz_class(cand % Int(a)).get_ui();
        if (!dist[nr] || cand < *dist[nr]) {
          dist[nr] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  Int mx = 0;
  for (const auto& v : dist) {
    if (!v) return std::nullopt;  // gcd > 1: some residue unreachable
    if (*v > mx) mx = *v;
  }
  return Int(mx - Int(a));
}

enum class Completeness { Exact, Bounded };

namespace detail {

/// Degree-bound certificate: in rank one, every minimal generator of the
/// membership ideal has degree at most vertex + frobenius + max generator.
inline Completeness sweep_completeness(const MJContext& ctx, const Rat& lambda,
                                       const Int& bound) {
  if (ctx.semigroup.dim() != 1) return Completeness::Bounded;
  if (ctx.rays.size() != 1) return Completeness::Bounded;
  Rat vertex = ctx.rays[0].shift_min + lambda * ctx.rays[0].ideal_min;
  std::vector<Int> degrees;
  Int maxdeg = 0;
  for (const Vec& g : ctx.semigroup.generators()) {
    Int d = ctx.semigroup.degree(g);
    degrees.push_back(d);
    if (d > maxdeg) maxdeg = d;
  }
  auto frob = frobenius_number(degrees);
  if (!frob) return Completeness::Bounded;
  Rat needed = vertex + Rat(*frob) + Rat(maxdeg);
  return (Rat(bound) > needed) ? Completeness::Exact : Completeness::Bounded;
}

}  // namespace detail

struct GeneratorResult {
  std::vector<Vec> generators;
  Completeness completeness = Completeness::Bounded;
};

/**
 * Minimal monomial generators of the multiplier ideal at lambda, from a
 * degree-bounded sweep: members m whose predecessors m - g all fail
 * membership or fall outside the semigroup.
 */
inline GeneratorResult mj_generators(const MJContext& ctx, const Rat& lambda,
                                     const Int& degree_bound) {
  if (lambda < 0) throw negative_lambda("generator sweep requires lambda >= 0");
  if (degree_bound < 1) throw invalid_input("degree bound must be at least 1");
  std::vector<Vec> pts = enumerate_semigroup_points(ctx.semigroup, degree_bound);
  std::set<Vec> in_s(pts.begin(), pts.end());
  GeneratorResult res;
  for (const Vec& m : pts) {
    if (!in_interior(ctx, m, lambda)) continue;
    bool minimal = true;
    for (const Vec& g : ctx.semigroup.generators()) {
      Vec prev = vsub(m, g);
      if (in_s.count(prev) && in_interior(ctx, prev, lambda)) {
        minimal = false;
        break;
      }
    }
    if (minimal) res.generators.push_back(m);
  }
  res.completeness = detail::sweep_completeness(ctx, lambda, degree_bound);
  return res;
}

struct JumpingResult {
  std::vector<Rat> values;
  Completeness completeness = Completeness::Bounded;
};

/**
 * Candidate jumping exponents up to lambda_max: the distinct finite
 * per-monomial thresholds in (0, lambda_max] over the degree-bounded sweep.
 */
inline JumpingResult jumping_candidates(const MJContext& ctx, const Rat& lambda_max,
                                        const Int& degree_bound) {
  if (!(lambda_max > 0)) throw invalid_input("jumping sweep needs lambda_max > 0");
  if (degree_bound < 1) throw invalid_input("degree bound must be at least 1");
  std::set<Rat> vals;
  for (const Vec& m : enumerate_semigroup_points(ctx.semigroup, degree_bound)) {
    Threshold t = mj_threshold(ctx, m);
    if (t.is_infinite || t.never_member) continue;
    if (t.value > 0 && t.value <= lambda_max) vals.insert(t.value);
  }
  JumpingResult res;
  res.values.assign(vals.begin(), vals.end());
  res.completeness = detail::sweep_completeness(ctx, lambda_max, degree_bound);
  return res;
}

}  // namespace mjtoric
