#pragma once

#include <stdexcept>
#include <string>

namespace cevian {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegenerateSimplex : public Error {
public:
  using Error::Error;
};

class NotInterior : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
public:
  using Error::Error;
};

class NonPositiveDepth : public Error {
public:
  using Error::Error;
};

class OutOfDomain : public Error {
public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
public:
  using Error::Error;
};

class SamplingFailure : public Error {
public:
  using Error::Error;
};

namespace detail {

inline void require_dimension(long n, long min_n, const char* what) {
  if (n < min_n)
    throw UnsupportedDimension(std::string(what) + ": dimension " +
                               std::to_string(n) + " < " +
                               std::to_string(min_n));
}

} // namespace detail
} // namespace cevian
