#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mavsim/mav.hpp"
#include "mavsim/params.hpp"
#include "mavsim/road.hpp"

namespace mavsim::metrics {

// One summary point of a run: the fundamental-diagram sample.
// mean_flow == density * mean_speed * 3.6 by construction (q = k*v̄).
struct FundamentalPoint {
  std::string scenario;
  double p_mav = 0.0;
  double density = 0.0;  // realized veh/km/lane
  std::uint64_t seed = 0;
  double mean_flow = 0.0;   // veh/h/lane
  double mean_speed = 0.0;  // m/s
};

// Counts of coupled-train sizes; bin 1 holds uncoupled modules (independent
// or docking), bins 2..l_max hold trains.
struct TrainHistogram {
  std::vector<std::int64_t> counts;  // indexed by size; [0] unused
  std::int64_t samples = 0;

  explicit TrainHistogram(int l_max = 5)
      : counts(static_cast<std::size_t>(l_max) + 1, 0) {}
};

struct Composition {
  double frac_free = 0.0;        // independent + docking fraction of MAVs
  double frac_collective = 0.0;
  bool has_mavs = false;
};

// Per-step measurement record: flow, space-mean speed, MAV mode split.
struct StepSample {
  double flow = 0.0;
  double speed_mps = 0.0;
  double frac_free = 0.0;
  double frac_collective = 0.0;
};

// All per-step quantities in one sweep over the vehicle list.
StepSample sample_step(const RoadState& state, const SimParams& params);

// Space-mean speed over all vehicles, m/s. Zero for an empty road.
double mean_speed_mps(const RoadState& state, const SimParams& params);

// Generalized flow q = k * v̄ * 3.6 in veh/h/lane, with k the realized
// density (veh/km/lane over both lanes) and v̄ the space-mean speed in m/s.
double instantaneous_flow(const RoadState& state, const SimParams& params);

// Mode split of the MAV population. Fractions are zero (has_mavs false)
// when there are no MAVs.
Composition composition_ratios(const RoadState& state);

// Adds the current train sizes to the accumulator; uncoupled modules land
// in bin 1.
void sample_train_histogram(const mav::TrainRegistry& trains, const RoadState& state,
                            TrainHistogram& accumulator);

// Mean of the samples with step labels in [label_begin, label_end); the
// sample at index i carries label i+1.
double window_mean(const std::vector<double>& series, int label_begin, int label_end);

// Aggregates the measuring window [t_measure_start, t_total) into a
// fundamental-diagram point tagged with the run configuration.
FundamentalPoint summarize_run(const std::vector<double>& flow_series,
                               const std::vector<double>& speed_series,
                               const SimParams& params, double realized_density);

}  // namespace mavsim::metrics
