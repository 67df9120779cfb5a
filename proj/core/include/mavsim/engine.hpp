#pragma once

#include <cstdint>
#include <vector>

#include "mavsim/mav.hpp"
#include "mavsim/metrics.hpp"
#include "mavsim/params.hpp"
#include "mavsim/rng.hpp"
#include "mavsim/road.hpp"

namespace mavsim {

// Phases of a run, derived from the step counter alone.
enum class ScenarioPhase { WarmupIndependent, Operational, Measuring };
ScenarioPhase phase_of(int t, const SimParams& params);

// Places round(density * road_km) vehicles per lane, the configured MAV
// share of them (positions shuffled), gaps drawn by a random partition of
// the free cells. Speeds start at zero, MAVs independent. Consumes a fixed
// number of draws per lane: shuffle first, then the gap partition.
RoadState init_state(const SimParams& params, Rng& rng);

// One simulation: a road state, the train registry, and the seeded
// generator, advanced by the fixed per-step pipeline
//   mode maintenance -> lane changes (incl. detachment) -> speeds -> positions.
class Simulation {
 public:
  explicit Simulation(const SimParams& params);
  // Adopts a prepared state (tests); the registry starts empty.
  Simulation(const SimParams& params, RoadState road);

  void step();

  int time() const { return road_.time; }
  const SimParams& params() const { return params_; }
  RoadState& road() { return road_; }
  const RoadState& road() const { return road_; }
  mav::TrainRegistry& trains() { return trains_; }
  const mav::TrainRegistry& trains() const { return trains_; }
  Rng& rng() { return rng_; }

  double realized_density() const;

  // Full sweep of the run invariants: occupancy, train geometry, per-mode
  // speed bounds, conservation, mode/phase agreement, index consistency.
  // Throws InternalFault with a state dump line on violation.
  void check_invariants() const;

 private:
  void mode_maintenance_pass(bool docking_now);
  void lane_change_pass(bool docking_now);
  void speed_pass();
  int plan_speed_chain(const Vehicle& v, int v_eff_max) const;

  SimParams params_;
  Rng rng_;
  RoadState road_;
  mav::TrainRegistry trains_;
  std::vector<int> next_speed_;
  std::vector<int> stoch_b_rand_;
  std::vector<double> stoch_p_;
  std::vector<int> gaps_scratch_;
  std::vector<VehicleId> docking_scratch_;
  std::vector<std::uint8_t> speed_ready_;
  std::vector<RoadState::LaneProbe> probes_scratch_;
  std::vector<double> p_defense_;
  std::size_t initial_mavs_ = 0;
  std::size_t initial_conventional_ = 0;
};

// Everything a single run produces. Series are per step (length t_total,
// sample i recorded after step i+1); the summary covers the measuring
// window only. Identical params (seed included) give bit-identical output.
struct RunOutput {
  SimParams params;
  double realized_density = 0.0;
  std::vector<double> flow;             // veh/h/lane
  std::vector<double> speed_mps;        // space-mean, m/s
  std::vector<double> frac_free;        // (independent+docking)/MAV count
  std::vector<double> frac_collective;
  metrics::TrainHistogram histogram;
  metrics::FundamentalPoint summary;
  std::vector<Vehicle> final_vehicles;
  std::vector<std::vector<VehicleId>> final_trains;
};

// Runs t_total steps from a fresh init_state. With check_every_step the
// full invariant sweep runs after every step instead of sampled every 100.
RunOutput run(const SimParams& params, bool check_every_step = false);

}  // namespace mavsim
