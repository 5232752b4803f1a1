#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gml {

// Base class for all library errors; the CLI maps these to exit code 2.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad model files, undeclared worlds, ill-typed requests.
struct input_error : error {
  using error::error;
};

// Formula syntax error. `position` is a byte offset into the input text.
struct parse_error : error {
  std::size_t position;
  parse_error(const std::string& what, std::size_t pos)
      : error(what + " at offset " + std::to_string(pos)), position(pos) {}
};

// An enumeration would exceed the configured budget.
struct budget_error : error {
  using error::error;
};

// A grade outside the represented range of an explicit neighbourhood model.
struct grade_error : error {
  using error::error;
};

}  // namespace gml
