#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace geomod {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kTwoPiI{0.0, 2.0 * kPi};

// Hard floor on Im z for path waypoints and q-expansion evaluation.
inline constexpr double kDefaultYMin = 0.005;

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a stored q-expansion cannot certify the requested tolerance.
struct InsufficientPrecisionError : std::runtime_error {
  explicit InsufficientPrecisionError(const std::string& msg, std::size_t required)
      : std::runtime_error(msg), required_n(required) {}
  std::size_t required_n;
};

}  // namespace geomod
