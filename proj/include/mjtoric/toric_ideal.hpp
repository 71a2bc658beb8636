#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mjtoric/errors.hpp"
#include "mjtoric/matrix.hpp"
#include "mjtoric/numeric.hpp"
#include "mjtoric/semigroup.hpp"

namespace mjtoric {

/**
 * A binomial x^{u+} - x^{u-} of the lattice ideal, stored as the exponent
 * vector u = u+ - u-. The positive and negative parts have disjoint support;
 * u is sign-canonical (first nonzero entry positive).
 */
struct Binomial {
  Vec u;
  Vec plus() const { return positive_part(u); }
  Vec minus() const { return negative_part(u); }
  bool operator==(const Binomial& o) const { return u == o.u; }
};

struct MarkovBasis {
  std::vector<Binomial> binomials;
  std::vector<Vec> lattice_basis;     // kernel lattice basis the ideal came from
  bool verified_generating = false;   // false for caller-supplied sets
  std::size_t lattice_rank() const { return lattice_basis.size(); }
};

struct ToricOptions {
  std::size_t spair_cap = 100000;  // processed S-pairs before giving up
};

namespace detail {

/// Binomial x^a - x^b held as a monomial pair; a is leading once oriented.
struct BinPair {
  Vec a, b;
};

/**
 * Graded reverse lexicographic order with a positive variable grading and a
 * designated cheapest variable placed last. With this order, a Groebner
 * basis of a homogeneous binomial ideal yields the saturation with respect
 * to the last variable by dividing out its powers.
 */
struct MonomialOrder {
  std::vector<Int> vardeg;
  std::size_t last;

  Int wdeg(const Vec& m) const {
    Int s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * vardeg[i];
    return s;
  }

  // +1 if x > y, -1 if x < y, 0 if equal
  int cmp(const Vec& x, const Vec& y) const {
    Int dx = wdeg(x), dy = wdeg(y);
    if (dx != dy) return (dx > dy) ? 1 : -1;
    // reverse lex scan from the cheapest position back; the monomial with
    // the smaller entry at the first difference is the larger one
    if (x[last] != y[last]) return (x[last] < y[last]) ? 1 : -1;
    for (std::size_t q = x.size(); q-- > 0;) {
      if (q == last) continue;
      if (x[q] != y[q]) return (x[q] < y[q]) ? 1 : -1;
    }
    return 0;
  }
};

inline bool divides(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool disjoint_support(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

/// Orients so a is leading; returns false for the zero binomial.
inline bool orient(BinPair& f, const MonomialOrder& ord) {
  int c = ord.cmp(f.a, f.b);
  if (c == 0) return false;
  if (c < 0) std::swap(f.a, f.b);
  return true;
}

/// Full normal form against an oriented basis; nullopt means reduced to zero.
inline std::optional<BinPair> normal_form(BinPair f, const std::vector<BinPair>& basis,
                                          const MonomialOrder& ord) {
  if (!orient(f, ord)) return std::nullopt;
  for (;;) {
    bool reduced = false;
    for (const BinPair& g : basis) {
      if (!divides(g.a, f.a)) continue;
      f.a = vadd(vsub(f.a, g.a), g.b);
      if (!orient(f, ord)) return std::nullopt;
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
  for (;;) {
    bool reduced = false;
    for (const BinPair& g : basis) {
      if (!divides(g.a, f.b)) continue;
      f.b = vadd(vsub(f.b, g.a), g.b);
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
  return f;
}

/**
 * Buchberger's algorithm for binomial ideals; every intermediate object is
 * a binomial, so the state is a list of monomial pairs. Returns the reduced
 * Groebner basis for the given order. Throws once the processed S-pair
 * count exceeds the cap.
 */
inline std::vector<BinPair> buchberger(const std::vector<BinPair>& input,
                                       const MonomialOrder& ord, std::size_t cap) {
  std::vector<BinPair> g;
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto push = [&](BinPair f) {
    for (std::size_t i = 0; i < g.size(); ++i) queue.emplace_back(i, g.size());
    g.push_back(std::move(f));
  };
  for (const BinPair& f : input) {
    auto nf = normal_form(f, g, ord);
    if (nf) push(std::move(*nf));
  }
  std::size_t processed = 0;
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    if (++processed > cap)
      throw limit_exceeded("S-pair budget exhausted in Groebner basis computation");
    if (disjoint_support(g[i].a, g[j].a)) continue;  // coprime-lead criterion
    Vec gamma(g[i].a.size());
    for (std::size_t k = 0; k < gamma.size(); ++k)
      gamma[k] = std::max(g[i].a[k], g[j].a[k]);
    BinPair s{vadd(vsub(gamma, g[j].a), g[j].b), vadd(vsub(gamma, g[i].a), g[i].b)};
    auto nf = normal_form(std::move(s), g, ord);
    if (nf) push(std::move(*nf));
  }
  // reduced basis: minimal heads, then fully reduced tails
  std::sort(g.begin(), g.end(),
            [&](const BinPair& x, const BinPair& y) { return ord.cmp(x.a, y.a) < 0; });
  std::vector<BinPair> minimal;
  for (const BinPair& f : g) {
    bool drop = false;
    for (const BinPair& h : minimal)
      if (divides(h.a, f.a)) {
        drop = true;
        break;
      }
    if (!drop) minimal.push_back(f);
  }
  std::vector<BinPair> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<BinPair> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    auto nf = normal_form(minimal[i], others, ord);
    if (nf) out.push_back(std::move(*nf));
  }
  std::sort(out.begin(), out.end(),
            [&](const BinPair& x, const BinPair& y) { return ord.cmp(x.a, y.a) < 0; });
  return out;
}

/// Divides every basis element by the largest power of variable i it carries.
inline void divide_variable(std::vector<BinPair>& basis, std::size_t i) {
  for (BinPair& f : basis) {
    Int m = std::min(f.a[i], f.b[i]);
    if (m > 0) {
      f.a[i] -= m;
      f.b[i] -= m;
    }
  }
}

/// Exact ideal membership of a binomial via normal form against a basis.
inline bool binomial_in_ideal(const Vec& u, const std::vector<Vec>& others,
                              const MonomialOrder& ord, std::size_t cap) {
  std::vector<BinPair> gens;
  for (const Vec& v : others) gens.push_back({positive_part(v), negative_part(v)});
  std::vector<BinPair> gb = buchberger(gens, ord, cap);
  return !normal_form({positive_part(u), negative_part(u)}, gb, ord).has_value();
}

}  // namespace detail

/// d x r matrix whose columns are the semigroup generators.
inline IntMatrix generator_matrix(const AffineSemigroup& s) {
  IntMatrix a(s.dim(), s.num_generators());
  for (std::size_t j = 0; j < s.num_generators(); ++j)
    for (std::size_t i = 0; i < s.dim(); ++i) a.at(i, j) = s.generators()[j][i];
  return a;
}

namespace detail {

inline std::vector<Int> variable_degrees(const AffineSemigroup& s) {
  std::vector<Int> deg;
  deg.reserve(s.num_generators());
  for (const Vec& g : s.generators()) deg.push_back(s.degree(g));
  return deg;
}

/// Canonical sort key: degree of the positive part's image, then the vector.
inline void canonical_sort(const AffineSemigroup& s, std::vector<Vec>& us) {
  std::sort(us.begin(), us.end(), [&](const Vec& x, const Vec& y) {
    Int dx = s.degree(s.phi_gp(positive_part(x)));
    Int dy = s.degree(s.phi_gp(positive_part(y)));
    if (dx != dy) return dx < dy;
    return x < y;
  });
}

}  // namespace detail

/**
 * A binomial generating set of the lattice ideal of S. Starting from a
 * lattice basis of ker(phi_gp), the basis ideal is saturated with respect
 * to each variable in turn: a Groebner basis is computed for a graded
 * reverse lexicographic order with that variable last, then its powers are
 * divided out. A final greedy pass removes generators that lie in the
 * ideal of the others, so the returned set is minimal.
 */
inline MarkovBasis markov_basis(const AffineSemigroup& s, ToricOptions opts = {}) {
  const std::size_t r = s.num_generators();
  std::vector<Vec> kernel = integer_kernel(generator_matrix(s));
  MarkovBasis result;
  result.lattice_basis = kernel;
  result.verified_generating = true;
  if (kernel.empty()) return result;

  std::vector<Int> vardeg = detail::variable_degrees(s);
  std::vector<detail::BinPair> basis;
  for (const Vec& u : kernel)
    basis.push_back({positive_part(u), negative_part(u)});
  for (std::size_t i = 0; i < r; ++i) {
    detail::MonomialOrder ord{vardeg, i};
    basis = detail::buchberger(basis, ord, opts.spair_cap);
    detail::divide_variable(basis, i);
  }

  std::set<Vec> uniq;
  for (const detail::BinPair& f : basis) {
    Vec u = sign_canonical(vsub(f.a, f.b));
    if (!is_zero_vec(u)) uniq.insert(std::move(u));
  }
  std::vector<Vec> us(uniq.begin(), uniq.end());
  detail::canonical_sort(s, us);

  // Greedy minimalization, largest first; survivors stay irredundant.
  detail::MonomialOrder canon{vardeg, r - 1};
  for (std::size_t idx = us.size(); idx-- > 0;) {
    if (us.size() == 1) break;
    std::vector<Vec> others;
    for (std::size_t k = 0; k < us.size(); ++k)
      if (k != idx) others.push_back(us[k]);
    if (detail::binomial_in_ideal(us[idx], others, canon, opts.spair_cap))
      us.erase(us.begin() + static_cast<std::ptrdiff_t>(idx));
  }

  for (Vec& u : us) result.binomials.push_back({std::move(u)});
  return result;
}

/**
 * Wraps a caller-supplied generating set after checking each vector lies in
 * the kernel lattice. Whether the set generates the full lattice ideal is
 * not verified; the provenance flag records that.
 */
inline MarkovBasis accept_user_basis(const AffineSemigroup& s,
                                     const std::vector<Vec>& vectors) {
  std::set<Vec> uniq;
  for (const Vec& v : vectors) {
    if (v.size() != s.num_generators())
      throw invalid_input("basis vector length differs from generator count");
    if (is_zero_vec(v)) throw invalid_input("zero vector in binomial basis");
    if (!is_zero_vec(s.phi_gp(v)))
      throw not_in_kernel("vector " + vec_to_string(v) +
                          " is not in the kernel of phi_gp");
    uniq.insert(sign_canonical(v));
  }
  std::vector<Vec> us(uniq.begin(), uniq.end());
  detail::canonical_sort(s, us);
  MarkovBasis result;
  result.lattice_basis = integer_kernel(generator_matrix(s));
  result.verified_generating = false;
  for (Vec& u : us) result.binomials.push_back({std::move(u)});
  return result;
}

}  // namespace mjtoric
