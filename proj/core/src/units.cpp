#include "mavsim/units.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mavsim/errors.hpp"

namespace mavsim {

namespace {
constexpr double kScale = 1e6;
constexpr double kTol = 1e-6;
}  // namespace

Rational rational_from_decimal(double value, std::string_view field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(field) + ": must be a positive finite number");
  }
  const double scaled = value * kScale;
  const auto num = static_cast<std::int64_t>(std::llround(scaled));
  if (std::abs(scaled - static_cast<double>(num)) > kTol) {
    throw ConfigError(std::string(field) +
                      ": value has more than 6 decimal places, cannot represent exactly");
  }
  const std::int64_t den = static_cast<std::int64_t>(kScale);
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

int to_cells(double value, double cell_length, std::string_view field) {
  if (!(cell_length > 0.0)) {
    throw ConfigError("cell_length: must be positive");
  }
  const double cells = value / cell_length;
  const auto rounded = static_cast<std::int64_t>(std::llround(cells));
  if (std::abs(cells - static_cast<double>(rounded)) > kTol) {
    throw ConfigError(std::string(field) + ": " + std::to_string(value) +
                      " does not convert to a whole number of cells (cell_length=" +
                      std::to_string(cell_length) + ")");
  }
  return static_cast<int>(rounded);
}

double from_cells(int cells, double cell_length) {
  return static_cast<double>(cells) * cell_length;
}

}  // namespace mavsim
