#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "mjtoric/errors.hpp"
#include "mjtoric/matrix.hpp"
#include "mjtoric/numeric.hpp"
#include "mjtoric/polyhedron.hpp"

namespace mjtoric {

/**
 * An affine semigroup S in normalized coordinates: the generators span the
 * full lattice Z^d, the cone they generate is pointed, and a grading vector
 * w from the interior of the dual cone gives every generator degree >= 1.
 *
 * Instances are immutable after construction; all queries are pure.
 */
class AffineSemigroup {
 public:
  AffineSemigroup(std::vector<Vec> generators, Vec grading, std::vector<Vec> dual_rays,
                  std::size_t ambient_dim, std::vector<Vec> basis_rows)
      : generators_(std::move(generators)),
        grading_(std::move(grading)),
        dual_rays_(std::move(dual_rays)),
        ambient_dim_(ambient_dim),
        basis_rows_(std::move(basis_rows)) {}

  std::size_t dim() const { return grading_.size(); }  // d
  std::size_t num_generators() const { return generators_.size(); }  // r
  const std::vector<Vec>& generators() const { return generators_; }
  const Vec& grading() const { return grading_; }
  const std::vector<Vec>& dual_rays() const { return dual_rays_; }

  /// Lattice basis of the original ambient coordinates, one row per normalized
  /// coordinate; identity iff the input needed no re-coordinatization.
  const std::vector<Vec>& basis_rows() const { return basis_rows_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  bool normalization_nontrivial() const {
    if (ambient_dim_ != dim()) return true;
    for (std::size_t i = 0; i < basis_rows_.size(); ++i)
      for (std::size_t j = 0; j < basis_rows_[i].size(); ++j)
        if (basis_rows_[i][j] != ((i == j) ? 1 : 0)) return true;
    return false;
  }

  Int degree(const Vec& m) const { return dot(m, grading_); }

  /// Linear extension of the generator map: u in Z^r to sum u_i * g_i.
  Vec phi_gp(const Vec& u) const {
    if (u.size() != generators_.size())
      throw invalid_input("phi_gp argument length differs from generator count");
    Vec m(dim(), Int(0));
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != 0) m = vadd(m, vscale(u[i], generators_[i]));
    return m;
  }

  Vec phi_one() const { return phi_gp(Vec(num_generators(), Int(1))); }

  bool in_cone(const Vec& m) const {
    for (const Vec& n : dual_rays_)
      if (dot(m, n) < 0) return false;
    return true;
  }

  /**
   * Semigroup membership: is m a nonnegative integer combination of the
   * generators? Decided by depth-first search over generator multiplicities,
   * bounded by degree and pruned whenever the residual leaves the cone.
   */
  bool contains(const Vec& m) const {
    if (m.size() != dim()) throw invalid_input("membership query has wrong dimension");
    if (!in_cone(m)) return false;
    return search(m, 0);
  }

 private:
  bool search(const Vec& rem, std::size_t i) const {
    if (is_zero_vec(rem)) return true;
    if (i == generators_.size()) return false;
    if (!in_cone(rem)) return false;
    Int cap = degree(rem) / degree(generators_[i]);
    Vec cur = rem;
    for (Int k = 0; k <= cap; ++k) {
      if (search(cur, i + 1)) return true;
      cur = vsub(cur, generators_[i]);
    }
    return false;
  }

  std::vector<Vec> generators_;
  Vec grading_;
  std::vector<Vec> dual_rays_;
  std::size_t ambient_dim_;
  std::vector<Vec> basis_rows_;
};

/**
 * Builds an AffineSemigroup from raw generators in any ambient lattice:
 * computes the lattice they span, re-expresses them in a basis of it
 * (so the quotient lattice becomes Z^d), verifies the cone is pointed,
 * and selects the grading as the sum of the dual cone's ray generators.
 */
inline AffineSemigroup normalize_coordinates(const std::vector<Vec>& raw_generators) {
  if (raw_generators.empty())
    throw empty_generators("semigroup needs at least one generator");
  const std::size_t ambient = raw_generators[0].size();
  if (ambient == 0) throw empty_generators("generators have dimension zero");
  for (const Vec& g : raw_generators) {
    if (g.size() != ambient)
      throw invalid_input("generators differ in length");
    if (is_zero_vec(g))
      throw invalid_input("zero vector is not allowed as a semigroup generator");
  }

  IntMatrix h = hnf(IntMatrix::from_rows(raw_generators)).h;
  std::vector<Vec> basis_rows;
  for (std::size_t i = 0; i < h.rows; ++i) {
    Vec r = h.row(i);
    if (!is_zero_vec(r)) basis_rows.push_back(std::move(r));
  }
  const std::size_t d = basis_rows.size();

  std::vector<Vec> gens;
  gens.reserve(raw_generators.size());
  for (const Vec& g : raw_generators) gens.push_back(solve_in_row_basis(basis_rows, g));

  std::vector<Vec> duals = cone_dual_rays(gens, d);
  if (rank_of_rows(duals) < d)
    throw non_pointed_cone("semigroup cone contains a line (has units)");

  Vec w(d, Int(0));
  for (const Vec& n : duals) w = vadd(w, n);
  for (const Vec& g : gens)
    if (dot(g, w) < 1)
      throw non_pointed_cone("grading fails to be positive on a generator");

  return AffineSemigroup(std::move(gens), std::move(w), std::move(duals), ambient,
                         std::move(basis_rows));
}

/**
 * A monomial S-ideal given by a finite exponent set, deduplicated and
 * lexicographically sorted. Non-fractional ideals check every exponent
 * for semigroup membership.
 */
struct MonomialSIdeal {
  std::vector<Vec> exponents;
  bool fractional = false;
};

inline MonomialSIdeal make_monomial_ideal(const AffineSemigroup& s,
                                          const std::vector<Vec>& exponents,
                                          bool fractional = false) {
  std::set<Vec> uniq;
  for (const Vec& e : exponents) {
    if (e.size() != s.dim())
      throw invalid_input("ideal exponent has wrong dimension");
    if (!fractional && !s.contains(e))
      throw exponent_not_in_semigroup("ideal exponent " + vec_to_string(e) +
                                      " lies outside the semigroup");
    uniq.insert(e);
  }
  MonomialSIdeal ideal;
  ideal.exponents.assign(uniq.begin(), uniq.end());
  ideal.fractional = fractional;
  return ideal;
}

/// m lies in the ideal iff m - g is in S for some ideal exponent g.
inline bool ideal_contains(const AffineSemigroup& s, const MonomialSIdeal& ideal,
                           const Vec& m) {
  for (const Vec& g : ideal.exponents)
    if (s.contains(vsub(m, g))) return true;
  return false;
}

}  // namespace mjtoric
