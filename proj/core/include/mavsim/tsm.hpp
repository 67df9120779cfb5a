#pragma once

#include "mavsim/params.hpp"
#include "mavsim/units.hpp"

namespace mavsim::tsm {

// One vehicle's speed decision for a step: the deterministic speed, the
// randomization deceleration and probability that applied, and the final
// post-stochastic speed.
struct SpeedDecision {
  int v_det = 0;
  int b_rand = 0;
  double p = 0.0;
  int v_final = 0;
};

// Expected velocity of the preceding vehicle at the next step:
// min(d_l, v_l + a, v_max).
int anticipated_leader_speed(int d_l, int v_l, int a, int v_max);

// Anticipated space gap: d + max(v_anti - g_safety, 0).
int anticipated_gap(int d, int v_anti, int g_safety);

// Gipps safe speed: round(-b_max + sqrt(b_max^2 + v_l^2 + 2*b_max*d)),
// nearest integer, half away from zero (the argument is never negative).
int safe_speed(int v_l, int d, int b_max);

// Deterministic speed update: min(v + a, v_eff_max, d_anti, v_safe).
// v_eff_max is the caller's operative limit (v_max for conventional
// vehicles, v_max_mav for MAVs outside docking).
int deterministic_speed(int v, int a, int v_eff_max, int d_anti, int v_safe);

// Randomization deceleration: a in the normal state, b_defense in the
// defensive state. The defensive state holds when v >= b_defense +
// floor(d_anti / T); T enters as an exact rational so the floor is exact.
int randomization_deceleration(int v, int d_anti, const Rational& t_gap, int a, int b_defense);

// Randomization probability: p_b at standstill, p_c while v <= d_anti/T
// (exact rational comparison), else the defensive logistic
// p_c + p_a / (1 + exp(alpha * (v_c - v))).
double randomization_probability(int v, int d_anti, const SimParams& params);

// Applies the stochastic deceleration: max(v_det - b_rand, 0) when
// random_draw < p, otherwise v_det unchanged.
int apply_stochastic_deceleration(int v_det, int b_rand, double p, double random_draw);

// Position update on the ring: (x + v_final) mod road_length.
int advance_position(int x, int v_final, int road_length);

}  // namespace mavsim::tsm
