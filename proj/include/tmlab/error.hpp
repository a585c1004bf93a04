#pragma once

#include <stdexcept>
#include <string>

namespace tmlab {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// exponent of the Moser integrand left the representable range
struct OverflowError : std::runtime_error {
  OverflowError(const std::string& what, double t_lo, double t_hi)
      : std::runtime_error(what), t_lo(t_lo), t_hi(t_hi) {}
  double t_lo, t_hi;
};

// inflated profile would leave the unit disc
struct SupportOverflow : std::runtime_error {
  SupportOverflow(const std::string& what, double radius)
      : std::runtime_error(what), radius(radius) {}
  double radius;
};

struct ExtractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tmlab
