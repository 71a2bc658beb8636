#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mjtoric/errors.hpp"

namespace mjtoric {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals
// stored in lowest terms with positive denominator (GMP canonical form).
using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;   // lattice vector
using QVec = std::vector<Rat>;  // rational vector

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw invalid_input("rational with zero denominator");
  Rat q(num);
  q /= Rat(den);
  return q;
}

inline Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p" or "p/q" with arbitrary-precision parts.
inline Rat parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw invalid_input("cannot parse rational: '" + s + "'");
  }
}

// ---- lattice / rational vector helpers ----

inline bool is_zero_vec(const Vec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

inline Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat qdot(const QVec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

inline Vec vadd(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec vsub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec vneg(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec vscale(const Int& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline QVec to_qvec(const Vec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

/// gcd of the absolute values of the entries (0 for the zero vector).
inline Int content(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Divides by the content; the zero vector is left unchanged.
inline Vec primitive(Vec v) {
  Int g = content(v);
  if (g > 1)
    for (Int& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

/// Componentwise positive part max(v, 0).
inline Vec positive_part(const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = (v[i] > 0) ? v[i] : Int(0);
  return r;
}

/// Componentwise negative part max(-v, 0).
inline Vec negative_part(const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = (v[i] < 0) ? Int(-v[i]) : Int(0);
  return r;
}

/// Flips sign so the first nonzero entry is positive; zero stays zero.
inline Vec sign_canonical(Vec v) {
  for (const Int& x : v) {
    if (x > 0) return v;
    if (x < 0) return vneg(v);
  }
  return v;
}

inline std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

/// t^e for a rational base point coordinate t > 0 and integer exponent e.
inline Rat pow_rat(const Int& t, const Int& e) {
  Int p;
  Int ae = abs(e);
  mpz_pow_ui(p.get_mpz_t(), t.get_mpz_t(), ae.get_ui());
  if (e >= 0) return Rat(p);
  return make_rat(1, p);
}

/// prod_k t_k^{v_k}, exact.
inline Rat eval_power(const Vec& t, const Vec& v) {
  Rat r = 1;
  for (std::size_t k = 0; k < t.size(); ++k) r *= pow_rat(t[k], v[k]);
  return r;
}

/// Deterministic draw in [lo, hi]; mt19937_64 output is fully specified.
inline long rand_range(std::mt19937_64& eng, long lo, long hi) {
  return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace mjtoric
