#include "mavsim/params.hpp"

#include <cmath>
#include <string>

#include "mavsim/errors.hpp"

namespace mavsim {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void require_prob(double p, const char* field) {
  require(p >= 0.0 && p <= 1.0, std::string(field) + ": must lie in [0,1]");
}

}  // namespace

void SimParams::validate() {
  require(cell_length_m > 0.0, "cell_length_m: must be positive");
  require(veh_length > 0, "veh_length: must be positive");
  require(mav_length > 0, "mav_length: must be positive");
  require(v_max > 0, "v_max: must be positive");
  require(v_max_mav > 0, "v_max_mav: must be positive");
  require(v_max > v_max_mav, "v_max: must exceed v_max_mav (docking needs speed headroom)");
  require(a > 0, "a: must be positive");
  require(b_max > 0, "b_max: must be positive");
  require(b_defense > 0, "b_defense: must be positive");
  // g_safety must dominate every randomization deceleration the anticipation
  // term has to absorb: b_rand is either a or b_defense.
  require(g_safety >= b_defense, "g_safety: must be >= b_defense");
  require(g_safety >= a, "g_safety: must be >= a");
  require(v_c >= 0, "v_c: must be non-negative");
  require(T > 0.0, "T: must be positive");
  t_gap = rational_from_decimal(T, "T");

  require_prob(p_a, "p_a");
  require_prob(p_b, "p_b");
  require_prob(p_c, "p_c");
  require_prob(p_lc, "p_lc");
  require_prob(p_d, "p_d");
  require_prob(p_mav, "p_mav");

  require(a_dock > 0, "a_dock: must be positive");
  require(d_intra >= 0, "d_intra: must be non-negative");
  require(l_max >= 2, "l_max: must be at least 2");

  require(road_length > 0, "road_length: must be positive");
  require(lanes == 2, "lanes: this model is two-lane only");

  require(density >= 0.0, "density: must be non-negative");
  const double n_per_lane = density * road_km();
  const int longest = veh_length > mav_length ? veh_length : mav_length;
  require(n_per_lane * longest <= static_cast<double>(road_length) + 1e-9,
          "density: " + std::to_string(density) +
              " veh/km/lane cannot be placed on the road without overlap");

  require(t_total > 0, "t_total: must be positive");
  require(t_dock_start >= 0, "t_dock_start: must be non-negative");
  require(t_measure_start >= 0 && t_measure_start < t_total,
          "t_measure_start: must lie in [0, t_total)");
  require(detach_check_period > 0, "detach_check_period: must be positive");
  require(histogram_sample_period > 0, "histogram_sample_period: must be positive");
}

std::vector<double> SimParams::p_defense_table() const {
  std::vector<double> table(static_cast<std::size_t>(v_max) + 1);
  for (int v = 0; v <= v_max; ++v) {
    table[static_cast<std::size_t>(v)] =
        p_c + p_a / (1.0 + std::exp(alpha * static_cast<double>(v_c - v)));
  }
  return table;
}

}  // namespace mavsim
