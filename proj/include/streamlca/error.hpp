#ifndef STREAMLCA_ERROR_HPP
#define STREAMLCA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace streamlca {

// Base for everything this library throws on bad input.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file content (bad syntax, unreadable file).
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Well-formed input violating a model invariant.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Lookup against a parameter set that lacks the requested key.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace streamlca

#endif
