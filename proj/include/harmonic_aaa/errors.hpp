#pragma once

#include <stdexcept>
#include <string>

namespace harmonic_aaa {

// Bad arguments: shapes, domains, geometry preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical kernel could not produce a trustworthy answer.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace harmonic_aaa
