#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <vector>

#include "mjtoric/errors.hpp"
#include "mjtoric/matrix.hpp"
#include "mjtoric/numeric.hpp"
#include "mjtoric/polyhedron.hpp"
#include "mjtoric/semigroup.hpp"
#include "mjtoric/toric_ideal.hpp"

namespace mjtoric {

namespace detail {

/// Advances a k-subset of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  if (k == 0) return false;
  std::size_t i = k;
  while (i-- > 0) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Exact rational determinant by Gaussian elimination.
inline Rat qdet(std::vector<QVec> m) {
  const std::size_t n = m.size();
  if (n == 0) return Rat(1);
  Rat result = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return Rat(0);
    if (p != k) {
      std::swap(m[p], m[k]);
      result = -result;
    }
    result *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat factor = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return result;
}

}  // namespace detail

/**
 * Generators of the logarithmic Jacobian ideal: sums of d generators whose
 * d x d determinant is nonzero, over all d-subsets of the generator list.
 */
inline std::vector<Vec> log_jacobian(const AffineSemigroup& s) {
  const std::size_t d = s.dim();
  const std::size_t r = s.num_generators();
  std::set<Vec> out;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  do {
    std::vector<Vec> chosen;
    for (std::size_t i : idx) chosen.push_back(s.generators()[i]);
    if (det(IntMatrix::from_rows(chosen)) == 0) continue;
    Vec sum(d, Int(0));
    for (const Vec& g : chosen) sum = vadd(sum, g);
    out.insert(std::move(sum));
  } while (detail::next_combination(idx, r));
  return {out.begin(), out.end()};
}

/**
 * The shift exponents relating the Jacobian ideal to the logarithmic one:
 * over all rank-c subsets {u_{j1},...,u_{jc}} of the binomial basis, the
 * image of u_{j1}+ + ... + u_{jc}+ - (1,...,1). For c = 0 the unique empty
 * subset contributes -phi_gp(1,...,1).
 */
inline std::vector<Vec> jacobian_shift(const AffineSemigroup& s, const MarkovBasis& mb) {
  const std::size_t c = mb.lattice_rank();
  const std::size_t r = s.num_generators();
  if (c == 0) return {vneg(s.phi_one())};
  if (mb.binomials.size() < c)
    throw insufficient_basis("binomial basis has fewer elements than the lattice rank");
  std::set<Vec> out;
  std::vector<std::size_t> idx(c);
  for (std::size_t i = 0; i < c; ++i) idx[i] = i;
  do {
    std::vector<Vec> us;
    for (std::size_t i : idx) us.push_back(mb.binomials[i].u);
    if (rank_of_rows(us) != c) continue;  // wedge vanishes
    Vec sum(r, Int(0));
    for (std::size_t i : idx) sum = vadd(sum, mb.binomials[i].plus());
    out.insert(s.phi_gp(vsub(sum, Vec(r, Int(1)))));
  } while (detail::next_combination(idx, mb.binomials.size()));
  if (out.empty())
    throw insufficient_basis("no rank-c subset: the basis cannot generate the lattice ideal");
  return {out.begin(), out.end()};
}

/**
 * Jacobian ideal generators: all pairwise sums of the log-Jacobian set and
 * the shift set. Every element must land in S; a violation indicts the
 * supplied binomial basis.
 */
inline std::vector<Vec> combine_jacobian(const AffineSemigroup& s,
                                         const std::vector<Vec>& log_set,
                                         const std::vector<Vec>& shift_set) {
  std::set<Vec> out;
  for (const Vec& a : log_set)
    for (const Vec& b : shift_set) out.insert(vadd(a, b));
  for (const Vec& m : out)
    if (!s.contains(m))
      throw element_outside_semigroup("jacobian generator " + vec_to_string(m) +
                                      " lies outside the semigroup");
  return {out.begin(), out.end()};
}

struct JacobianData {
  MarkovBasis markov;
  std::vector<Vec> log_set;    // logarithmic Jacobian generators
  std::vector<Vec> shift_set;  // Jacobian = log Jacobian shifted by these
  std::vector<Vec> jac_set;    // Jacobian ideal generators
  Vec phi_one;                 // image of the all-ones vector
};

inline JacobianData build_jacobian_data(const AffineSemigroup& s, MarkovBasis markov) {
  JacobianData jd;
  jd.log_set = log_jacobian(s);
  jd.shift_set = jacobian_shift(s, markov);
  jd.jac_set = combine_jacobian(s, jd.log_set, jd.shift_set);
  jd.phi_one = s.phi_one();
  jd.markov = std::move(markov);
  return jd;
}

/**
 * Spot-checks the minor congruence between the derivative matrix of the
 * basis binomials and the exponent matrix: both sides are evaluated at
 * random points of the monomial parametrization x_i = t^{phi(e_i)}, where
 * every element of the lattice ideal vanishes identically. Exact rational
 * comparison; any disagreement is definitive.
 */
inline bool check_minor_congruence(const AffineSemigroup& s, const JacobianData& jd,
                                   const std::vector<std::size_t>& k_rows,
                                   const std::vector<std::size_t>& l_cols,
                                   std::size_t trials, std::uint64_t seed) {
  const std::size_t c = jd.markov.lattice_rank();
  const std::size_t r = s.num_generators();
  const std::size_t n = jd.markov.binomials.size();
  if (k_rows.size() != c || l_cols.size() != c)
    throw invalid_input("minor congruence index sets must have the lattice rank size");
  for (std::size_t k : k_rows)
    if (k >= r) throw index_out_of_range("variable index out of range");
  for (std::size_t l : l_cols)
    if (l >= n) throw index_out_of_range("binomial index out of range");
  if (c == 0) return true;  // both sides are the empty minor

  IntMatrix u_mat(r, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < r; ++i) u_mat.at(i, j) = jd.markov.binomials[j].u[i];
  Int u_minor = minor_det(u_mat, k_rows, l_cols);

  Vec k_gen_sum(s.dim(), Int(0));
  for (std::size_t k : k_rows) k_gen_sum = vadd(k_gen_sum, s.generators()[k]);
  Vec l_plus_sum(r, Int(0));
  for (std::size_t l : l_cols) l_plus_sum = vadd(l_plus_sum, jd.markov.binomials[l].plus());
  Vec rhs_exp = s.phi_gp(l_plus_sum);

  std::mt19937_64 eng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Vec t(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) t[i] = rand_range(eng, 2, 7);
    std::vector<QVec> jac_eval(c, QVec(c, Rat(0)));
    for (std::size_t i = 0; i < c; ++i) {
      const Vec& g_k = s.generators()[k_rows[i]];
      for (std::size_t j = 0; j < c; ++j) {
        const Binomial& f = jd.markov.binomials[l_cols[j]];
        Vec up = f.plus(), um = f.minus();
        Rat entry = 0;
        if (up[k_rows[i]] != 0)
          entry += Rat(up[k_rows[i]]) * eval_power(t, vsub(s.phi_gp(up), g_k));
        if (um[k_rows[i]] != 0)
          entry -= Rat(um[k_rows[i]]) * eval_power(t, vsub(s.phi_gp(um), g_k));
        jac_eval[i][j] = entry;
      }
    }
    Rat lhs = eval_power(t, k_gen_sum) * detail::qdet(std::move(jac_eval));
    Rat rhs = eval_power(t, rhs_exp) * Rat(u_minor);
    if (lhs != rhs) return false;
  }
  return true;
}

/**
 * Checks that shifting the Jacobian ideal by phi(1,...,1) equals the
 * product of the log Jacobian with the shift-set ideal, as honest monomial
 * S-ideals, by mutual containment of generator sets.
 */
inline bool check_lemma_identity(const AffineSemigroup& s, const JacobianData& jd) {
  std::set<Vec> lhs_set, rhs_set;
  for (const Vec& j : jd.jac_set) lhs_set.insert(vadd(jd.phi_one, j));
  for (const Vec& a : jd.log_set)
    for (const Vec& b : jd.shift_set) rhs_set.insert(vadd(vadd(a, b), jd.phi_one));
  MonomialSIdeal lhs = make_monomial_ideal(s, {lhs_set.begin(), lhs_set.end()});
  MonomialSIdeal rhs = make_monomial_ideal(s, {rhs_set.begin(), rhs_set.end()});
  for (const Vec& m : lhs.exponents)
    if (!ideal_contains(s, rhs, m)) return false;
  for (const Vec& m : rhs.exponents)
    if (!ideal_contains(s, lhs, m)) return false;
  return true;
}

/**
 * Checks the intrinsic description of the shift polyhedron: the convex hull
 * of shift_set + S must equal {m : m + Newt(log) is contained in Newt(jac)},
 * the latter read off from facet data.
 */
inline bool check_intrinsic_q(const AffineSemigroup& s, const JacobianData& jd) {
  VRep q = newton_polyhedron(jd.shift_set, s.generators());
  VRep newt_log = newton_polyhedron(jd.log_set, s.generators());
  VRep newt_jac = newton_polyhedron(jd.jac_set, s.generators());
  HRep jac_facets = vrep_to_hrep(newt_jac);
  HRep intrinsic;
  for (const Facet& f : jac_facets.facets) {
    Rat shifted = f.rhs - min_over(newt_log, f.normal);
    intrinsic.facets.push_back({f.normal, shifted});
  }
  // q inside intrinsic
  for (const QVec& p : q.points)
    if (!hrep_contains(intrinsic, p)) return false;
  for (const Vec& r : q.rays)
    for (const Facet& f : intrinsic.facets)
      if (dot(r, f.normal) < 0) return false;
  // intrinsic inside q
  VRep intr_v = hrep_to_vrep(intrinsic, s.dim());
  HRep q_facets = vrep_to_hrep(q);
  for (const QVec& p : intr_v.points)
    if (!hrep_contains(q_facets, p)) return false;
  for (const Vec& r : intr_v.rays)
    for (const Facet& f : q_facets.facets)
      if (dot(r, f.normal) < 0) return false;
  return true;
}

}  // namespace mjtoric
