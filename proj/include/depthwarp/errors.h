#pragma once

#include <stdexcept>
#include <string>

namespace depthwarp {

// Error taxonomy used across the library. The CLI maps these onto stable
// exit codes: parse/validation failures exit 2, numerical failures exit 3.

class InvalidInputError : public std::runtime_error {
 public:
  explicit InvalidInputError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class DegenerateGeometryError : public std::runtime_error {
 public:
  explicit DegenerateGeometryError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class SceneConfigError : public std::runtime_error {
 public:
  explicit SceneConfigError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Views do not overlap: a loss term ended up with zero valid pixels.
class NoOverlapError : public std::runtime_error {
 public:
  explicit NoOverlapError(const std::string& msg) : std::runtime_error(msg) {}
};

class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class DivergedError : public std::runtime_error {
 public:
  explicit DivergedError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace depthwarp
