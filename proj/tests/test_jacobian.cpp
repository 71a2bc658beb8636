#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "mjtoric/jacobian.hpp"

using namespace mjtoric;

namespace {

AffineSemigroup cusp() { return normalize_coordinates({{Int(2)}, {Int(3)}}); }
AffineSemigroup plane() {
  return normalize_coordinates({{Int(1), Int(0)}, {Int(0), Int(1)}});
}
AffineSemigroup quadric() {
  return normalize_coordinates({{Int(1), Int(0)}, {Int(1), Int(1)}, {Int(1), Int(2)}});
}
AffineSemigroup ns345() {
  return normalize_coordinates({{Int(3)}, {Int(4)}, {Int(5)}});
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    bool advanced = false;
    while (i-- > 0) {
      if (idx[i] < n - k + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

void check_all_minor_congruences(const AffineSemigroup& s, const JacobianData& jd) {
  const std::size_t c = jd.markov.lattice_rank();
  const std::size_t r = s.num_generators();
  const std::size_t n = jd.markov.binomials.size();
  for (const auto& k : subsets(r, c))
    for (const auto& l : subsets(n, c))
      CHECK(check_minor_congruence(s, jd, k, l, 10, 0xC0FFEE));
}

}  // namespace

TEST_CASE("log jacobian examples") {
  CHECK(log_jacobian(plane()) == std::vector<Vec>{{Int(1), Int(1)}});
  CHECK(log_jacobian(cusp()) == std::vector<Vec>{{Int(2)}, {Int(3)}});
  CHECK(log_jacobian(quadric()) ==
        std::vector<Vec>{{Int(2), Int(1)}, {Int(2), Int(2)}, {Int(2), Int(3)}});
}

TEST_CASE("shift set examples") {
  AffineSemigroup p = plane();
  CHECK(jacobian_shift(p, markov_basis(p)) == std::vector<Vec>{{Int(-1), Int(-1)}});

  AffineSemigroup s = cusp();
  CHECK(jacobian_shift(s, markov_basis(s)) == std::vector<Vec>{{Int(1)}});

  AffineSemigroup q = quadric();
  CHECK(jacobian_shift(q, markov_basis(q)) == std::vector<Vec>{{Int(-1), Int(-1)}});

  AffineSemigroup t = ns345();
  CHECK(jacobian_shift(t, markov_basis(t)) ==
        std::vector<Vec>{{Int(5)}, {Int(6)}, {Int(7)}});
}

TEST_CASE("jacobian generator examples") {
  AffineSemigroup p = plane();
  JacobianData jp = build_jacobian_data(p, markov_basis(p));
  CHECK(jp.jac_set == std::vector<Vec>{{Int(0), Int(0)}});  // unit ideal: smooth

  AffineSemigroup s = cusp();
  JacobianData js = build_jacobian_data(s, markov_basis(s));
  CHECK(js.jac_set == std::vector<Vec>{{Int(3)}, {Int(4)}});

  AffineSemigroup q = quadric();
  JacobianData jq = build_jacobian_data(q, markov_basis(q));
  CHECK(jq.jac_set ==
        std::vector<Vec>{{Int(1), Int(0)}, {Int(1), Int(1)}, {Int(1), Int(2)}});

  AffineSemigroup t = ns345();
  JacobianData jt = build_jacobian_data(t, markov_basis(t));
  CHECK(jt.jac_set ==
        std::vector<Vec>{{Int(8)}, {Int(9)}, {Int(10)}, {Int(11)}, {Int(12)}});
}

TEST_CASE("jacobian generators must land in the semigroup") {
  AffineSemigroup s = cusp();
  CHECK_THROWS_AS(combine_jacobian(s, {{Int(2)}, {Int(3)}}, {{Int(-1)}}),
                  element_outside_semigroup);
}

TEST_CASE("shift set needs a basis of full lattice rank") {
  AffineSemigroup t = ns345();
  CHECK_THROWS_AS(jacobian_shift(t, accept_user_basis(t, {{Int(1), Int(-2), Int(1)}})),
                  insufficient_basis);
  // two proportional vectors: enough elements, but every pair is rank one
  MarkovBasis degenerate =
      accept_user_basis(t, {{Int(1), Int(-2), Int(1)}, {Int(2), Int(-4), Int(2)}});
  CHECK_THROWS_AS(jacobian_shift(t, degenerate), insufficient_basis);
}

TEST_CASE("minor congruence spot checks on the cusp") {
  AffineSemigroup s = cusp();
  JacobianData jd = build_jacobian_data(s, markov_basis(s));
  // x * d/dx (x^3 - y^2) = 3x^3 vs x^{(3,0)} * 3, and
  // y * d/dy (x^3 - y^2) = -2y^2 vs y^2 * (-2)
  CHECK(check_minor_congruence(s, jd, {0}, {0}, 10, 1));
  CHECK(check_minor_congruence(s, jd, {1}, {0}, 10, 2));
}

TEST_CASE("minor congruence holds for every index pair") {
  for (AffineSemigroup s : {cusp(), quadric(), ns345(),
                            normalize_coordinates({{Int(2)}, {Int(5)}})}) {
    JacobianData jd = build_jacobian_data(s, markov_basis(s));
    check_all_minor_congruences(s, jd);
  }
}

TEST_CASE("minor congruence is trivial for free semigroups") {
  AffineSemigroup p = plane();
  JacobianData jd = build_jacobian_data(p, markov_basis(p));
  CHECK(check_minor_congruence(p, jd, {}, {}, 5, 3));
  CHECK_THROWS_AS(check_minor_congruence(p, jd, {0}, {0}, 5, 3), invalid_input);
}

TEST_CASE("lemma identity on the test varieties") {
  for (AffineSemigroup s : {plane(), cusp(), quadric(), ns345()}) {
    JacobianData jd = build_jacobian_data(s, markov_basis(s));
    CHECK(check_lemma_identity(s, jd));
  }
}

TEST_CASE("intrinsic description of the shift polyhedron") {
  for (AffineSemigroup s : {plane(), cusp(), quadric(), ns345()}) {
    JacobianData jd = build_jacobian_data(s, markov_basis(s));
    CHECK(check_intrinsic_q(s, jd));
  }
}

TEST_CASE("newton polyhedra ignore redundant semigroup generators") {
  AffineSemigroup s = cusp();
  JacobianData jd = build_jacobian_data(s, markov_basis(s));
  AffineSemigroup s2 = normalize_coordinates({{Int(2)}, {Int(3)}, {Int(5)}});
  JacobianData jd2 = build_jacobian_data(s2, markov_basis(s2));
  CHECK(polyhedra_equal(newton_polyhedron(jd.log_set, s.generators()),
                        newton_polyhedron(jd2.log_set, s2.generators())));
  CHECK(polyhedra_equal(newton_polyhedron(jd.shift_set, s.generators()),
                        newton_polyhedron(jd2.shift_set, s2.generators())));

  AffineSemigroup q = quadric();
  JacobianData jq = build_jacobian_data(q, markov_basis(q));
  AffineSemigroup q2 = normalize_coordinates(
      {{Int(1), Int(0)}, {Int(1), Int(1)}, {Int(1), Int(2)}, {Int(2), Int(1)}});
  JacobianData jq2 = build_jacobian_data(q2, markov_basis(q2));
  CHECK(polyhedra_equal(newton_polyhedron(jq.log_set, q.generators()),
                        newton_polyhedron(jq2.log_set, q2.generators())));
  CHECK(polyhedra_equal(newton_polyhedron(jq.shift_set, q.generators()),
                        newton_polyhedron(jq2.shift_set, q2.generators())));
}

TEST_CASE("the shift polyhedron ignores redundant binomials") {
  AffineSemigroup s = cusp();
  MarkovBasis base = markov_basis(s);
  std::vector<Vec> extended = {base.binomials[0].u,
                               sign_canonical(vscale(Int(2), base.binomials[0].u))};
  MarkovBasis fat = accept_user_basis(s, extended);
  VRep q1 = newton_polyhedron(jacobian_shift(s, base), s.generators());
  VRep q2 = newton_polyhedron(jacobian_shift(s, fat), s.generators());
  CHECK(polyhedra_equal(q1, q2));

  AffineSemigroup t = ns345();
  MarkovBasis tb = markov_basis(t);
  std::vector<Vec> textended;
  for (const Binomial& b : tb.binomials) textended.push_back(b.u);
  textended.push_back(sign_canonical(vadd(tb.binomials[0].u, tb.binomials[1].u)));
  MarkovBasis tfat = accept_user_basis(t, textended);
  CHECK(polyhedra_equal(newton_polyhedron(jacobian_shift(t, tb), t.generators()),
                        newton_polyhedron(jacobian_shift(t, tfat), t.generators())));
}
