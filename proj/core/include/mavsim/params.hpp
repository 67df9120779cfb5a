#pragma once

#include <cstdint>
#include <vector>

#include "mavsim/units.hpp"

namespace mavsim {

// All model constants in internal cell units (1 cell = cell_length_m metres,
// 1 step = 1 s). Speeds are cells/s, accelerations cells/s². Defaults are
// the published two-lane TSM and MAV operating parameters converted at
// cell_length_m = 0.5.
struct SimParams {
  double cell_length_m = 0.5;

  int veh_length = 10;   // conventional vehicle footprint, cells
  int mav_length = 7;    // MAV module footprint, cells

  int v_max = 66;        // global speed limit (33 m/s)
  int v_max_mav = 61;    // MAV operational limit outside docking (30.5 m/s)

  double T = 1.8;        // effective safe time gap, s
  int a = 2;             // acceleration rate (1 m/s²)
  int b_max = 6;         // max deceleration magnitude (3 m/s²)
  int b_defense = 2;     // defensive randomization deceleration (1 m/s²)

  double p_a = 0.85;
  double p_b = 0.52;
  double p_c = 0.1;

  int g_safety = 20;     // anticipation safety margin, cells
  int v_c = 30;          // logistic midpoint, cells/s
  double alpha = 10.0;   // logistic steepness, s/cell

  double p_lc = 0.2;     // lane-change execution probability

  int a_dock = 2;        // docking acceleration rate (1 m/s²)
  int d_intra = 0;       // intra-train spacing, cells
  double p_d = 0.2;      // per-check detachment probability
  int l_max = 5;         // max modules per train

  int road_length = 20000;  // cells (10 km)
  int lanes = 2;

  double p_mav = 0.0;    // penetration rate
  double density = 0.0;  // vehicles per km per lane

  int t_total = 12000;
  int t_dock_start = 5000;
  int t_measure_start = 10000;

  bool docking_enabled = true;  // scenario switch: collective vs independent-only

  std::uint64_t seed = 42;

  int detach_check_period = 1;       // steps between detachment checks
  int histogram_sample_period = 100; // steps between train-size samples

  // T as an exact rational (set by validate()); integer branch tests use it.
  Rational t_gap{9, 5};

  // Checks every structural constraint and fills derived fields.
  // Throws ConfigError naming the violated field.
  void validate();

  // p value of the defensive randomization branch, memoized over integer
  // speeds 0..v_max: p_c + p_a / (1 + exp(alpha * (v_c - v))).
  std::vector<double> p_defense_table() const;

  const char* scenario_name() const {
    return docking_enabled ? "collective" : "independent";
  }

  double road_km() const { return road_length * cell_length_m / 1000.0; }
};

}  // namespace mavsim
