#pragma once

#include <cstdint>
#include <string_view>

namespace mavsim {

// Exact rational, used for the safe time gap T so that branch tests like
// v <= d_anti / T run on integers instead of floats.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // floor(x * num / den) for x >= 0
  std::int64_t floor_mul(std::int64_t x) const { return x * num / den; }
};

// Converts a decimal value (up to 6 fractional digits) to an exact reduced
// rational. Throws ConfigError if the value is not such a decimal.
Rational rational_from_decimal(double value, std::string_view field);

// Converts a physical quantity to integer cell units (cell_length metres per
// cell, 1 s per step). Rejects values that do not land on an exact integer.
// `field` names the quantity in the error message.
int to_cells(double value, double cell_length, std::string_view field);

// Inverse of to_cells.
double from_cells(int cells, double cell_length);

}  // namespace mavsim
