#pragma once

#include <stdexcept>
#include <string>

namespace ptsub {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A lattice index violates 0 <= k <= i, 0 <= j <= i-k, 0 <= i <= N.
class ConstraintError : public Error {
public:
  using Error::Error;
};

/// A linear id or level lies outside its admissible range.
class RangeError : public Error {
public:
  using Error::Error;
};

/// The element order does not admit the requested operation (e.g. N = 0).
class OrderError : public Error {
public:
  using Error::Error;
};

/// User-provided data (fields, meshes) is inconsistent with the mesh.
class InputError : public Error {
public:
  using Error::Error;
};

/// Physical embedding is degenerate.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// Malformed document. `what()` names the location of the problem.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Invalid permutation table or similar configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace ptsub
