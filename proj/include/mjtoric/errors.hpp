#pragma once

#include <stdexcept>
#include <string>

namespace mjtoric {

/** Invalid input or violated precondition (CLI exit code 1). */
class invalid_input : public std::runtime_error {
 public:
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

/** A configurable computational budget was exhausted (CLI exit code 2). */
class budget_exceeded : public std::runtime_error {
 public:
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

class index_out_of_range : public invalid_input {
 public:
  explicit index_out_of_range(const std::string& w) : invalid_input(w) {}
};
class empty_generators : public invalid_input {
 public:
  explicit empty_generators(const std::string& w) : invalid_input(w) {}
};
class non_pointed_cone : public invalid_input {
 public:
  explicit non_pointed_cone(const std::string& w) : invalid_input(w) {}
};
class not_in_kernel : public invalid_input {
 public:
  explicit not_in_kernel(const std::string& w) : invalid_input(w) {}
};
class insufficient_basis : public invalid_input {
 public:
  explicit insufficient_basis(const std::string& w) : invalid_input(w) {}
};
class element_outside_semigroup : public invalid_input {
 public:
  explicit element_outside_semigroup(const std::string& w) : invalid_input(w) {}
};
class not_full_dimensional : public invalid_input {
 public:
  explicit not_full_dimensional(const std::string& w) : invalid_input(w) {}
};
class negative_lambda : public invalid_input {
 public:
  explicit negative_lambda(const std::string& w) : invalid_input(w) {}
};
class empty_set : public invalid_input {
 public:
  explicit empty_set(const std::string& w) : invalid_input(w) {}
};
class exponent_not_in_semigroup : public invalid_input {
 public:
  explicit exponent_not_in_semigroup(const std::string& w) : invalid_input(w) {}
};
class not_in_semigroup : public invalid_input {
 public:
  explicit not_in_semigroup(const std::string& w) : invalid_input(w) {}
};
class limit_exceeded : public budget_exceeded {
 public:
  explicit limit_exceeded(const std::string& w) : budget_exceeded(w) {}
};
class refinement_budget_exceeded : public budget_exceeded {
 public:
  explicit refinement_budget_exceeded(const std::string& w) : budget_exceeded(w) {}
};

}  // namespace mjtoric
