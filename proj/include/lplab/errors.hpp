#pragma once

#include <stdexcept>
#include <string>

namespace lplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: coincident points, out-of-range exponents, bad grids.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The function is not in L^p, so the requested norm or limit does not exist.
class NotInLpError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

// Fit residuals do not shrink toward the limit.
class NotAsymptoticError : public Error {
 public:
  using Error::Error;
};

// A requested band or kernel cannot be represented on the grid.
class UnderResolvedError : public Error {
 public:
  using Error::Error;
};

// Diagonal singularity of a Gagliardo integrand is not integrable under the
// declared smoothness.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lplab
