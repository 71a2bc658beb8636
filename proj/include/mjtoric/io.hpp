#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mjtoric/errors.hpp"
#include "mjtoric/numeric.hpp"

namespace mjtoric {

using json = nlohmann::ordered_json;

/**
 * A problem description: the semigroup, the monomial ideal, and optional
 * defaults for queries. All vectors live in the declared ambient lattice.
 */
struct ProblemFile {
  std::size_t ambient_rank = 0;
  std::vector<Vec> semigroup_generators;
  std::vector<Vec> ideal_generators;
  std::optional<std::vector<Vec>> markov_basis;
  std::optional<Rat> lambda;
  std::optional<Int> degree_bound;
  std::optional<std::uint64_t> seed;
};

namespace detail {

inline Int json_to_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw invalid_input(where + ": expected an integer");
}

inline Vec json_to_vec(const json& j, std::size_t expected, const std::string& where) {
  if (!j.is_array())
    throw invalid_input(where + ": expected an array of integers");
  Vec v;
  for (const auto& e : j) v.push_back(json_to_int(e, where));
  if (v.size() != expected)
    throw invalid_input(where + ": vector has length " + std::to_string(v.size()) +
                        ", expected " + std::to_string(expected));
  return v;
}

inline std::vector<Vec> json_to_vecs(const json& j, std::size_t expected,
                                     const std::string& where) {
  if (!j.is_array()) throw invalid_input(where + ": expected an array of vectors");
  std::vector<Vec> out;
  for (const auto& e : j) out.push_back(json_to_vec(e, expected, where));
  return out;
}

}  // namespace detail

/// Exact integers serialize as JSON numbers while they fit, decimal strings beyond.
inline json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

inline json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

inline json vecs_to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const Vec& v : vs) a.push_back(vec_to_json(v));
  return a;
}

inline ProblemFile parse_problem(const json& j) {
  ProblemFile p;
  if (!j.is_object()) throw invalid_input("problem file must be a JSON object");
  if (!j.contains("ambient_rank"))
    throw invalid_input("problem file is missing 'ambient_rank'");
  Int rank = detail::json_to_int(j.at("ambient_rank"), "ambient_rank");
  if (rank < 1) throw invalid_input("ambient_rank must be at least 1");
  p.ambient_rank = rank.get_ui();
  if (!j.contains("semigroup_generators"))
    throw invalid_input("problem file is missing 'semigroup_generators'");
  p.semigroup_generators =
      detail::json_to_vecs(j.at("semigroup_generators"), p.ambient_rank,
                           "semigroup_generators");
  if (!j.contains("ideal_generators"))
    throw invalid_input("problem file is missing 'ideal_generators'");
  p.ideal_generators =
      detail::json_to_vecs(j.at("ideal_generators"), p.ambient_rank, "ideal_generators");
  if (j.contains("markov_basis"))
    p.markov_basis = detail::json_to_vecs(j.at("markov_basis"),
                                          p.semigroup_generators.size(), "markov_basis");
  if (j.contains("lambda")) {
    if (!j.at("lambda").is_string())
      throw invalid_input("lambda: expected a rational string \"p/q\"");
    Rat l = parse_rational(j.at("lambda").get<std::string>());
    if (l < 0) throw invalid_input("lambda must be nonnegative");
    p.lambda = l;
  }
  if (j.contains("degree_bound")) {
    Int b = detail::json_to_int(j.at("degree_bound"), "degree_bound");
    if (b < 1) throw invalid_input("degree_bound must be at least 1");
    p.degree_bound = b;
  }
  if (j.contains("seed"))
    p.seed = static_cast<std::uint64_t>(
        detail::json_to_int(j.at("seed"), "seed").get_ui());
  return p;
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw invalid_input("cannot parse JSON input: " + std::string(e.what()));
  }
  return parse_problem(j);
}

}  // namespace mjtoric
