#pragma once

#include <stdexcept>
#include <string>

namespace msn {

// Error categories used across the library. The CLI maps SchemaError,
// InvariantError and ResourceError to distinct exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

struct StructureError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct InvariantError : Error {
  using Error::Error;
};

struct ResourceError : Error {
  using Error::Error;
};

}  // namespace msn
