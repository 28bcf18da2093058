#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unknot {

// Base of everything the library throws on bad input or failed preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Input violates a structural invariant (not a tree, index out of range, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Mesh is not an edge-manifold / orientable / connected surface where one is required.
class TopologyError : public Error {
 public:
  using Error::Error;
};

// Geometric precondition failed: intersecting loops, non-transversal slice,
// feature collision while building a model surface, ...
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace unknot
