#include "mavsim/tsm.hpp"

#include <algorithm>
#include <cmath>

namespace mavsim::tsm {

int anticipated_leader_speed(int d_l, int v_l, int a, int v_max) {
  return std::min({d_l, v_l + a, v_max});
}

int anticipated_gap(int d, int v_anti, int g_safety) {
  return d + std::max(v_anti - g_safety, 0);
}

int safe_speed(int v_l, int d, int b_max) {
  const double b = static_cast<double>(b_max);
  const double radicand = b * b + static_cast<double>(v_l) * v_l + 2.0 * b * d;
  return static_cast<int>(std::llround(-b + std::sqrt(radicand)));
}

int deterministic_speed(int v, int a, int v_eff_max, int d_anti, int v_safe) {
  return std::min({v + a, v_eff_max, d_anti, v_safe});
}

int randomization_deceleration(int v, int d_anti, const Rational& t_gap, int a,
                               int b_defense) {
  // Defensive state: v >= b_defense + floor(d_anti / T).
  const std::int64_t threshold =
      b_defense + t_gap.den * static_cast<std::int64_t>(d_anti) / t_gap.num;
  return (v < threshold) ? a : b_defense;
}

double randomization_probability(int v, int d_anti, const SimParams& params) {
  if (v == 0) return params.p_b;
  // v <= d_anti / T, compared exactly: v * T_num <= d_anti * T_den.
  if (static_cast<std::int64_t>(v) * params.t_gap.num <=
      static_cast<std::int64_t>(d_anti) * params.t_gap.den) {
    return params.p_c;
  }
  return params.p_c +
         params.p_a / (1.0 + std::exp(params.alpha * static_cast<double>(params.v_c - v)));
}

int apply_stochastic_deceleration(int v_det, int b_rand, double p, double random_draw) {
  return (random_draw < p) ? std::max(v_det - b_rand, 0) : v_det;
}

int advance_position(int x, int v_final, int road_length) {
  const int next = x + v_final;
  return next >= road_length ? next - road_length : next;
}

}  // namespace mavsim::tsm
