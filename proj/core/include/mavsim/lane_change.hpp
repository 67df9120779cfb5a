#pragma once

#include <vector>

#include "mavsim/params.hpp"
#include "mavsim/rng.hpp"
#include "mavsim/road.hpp"

namespace mavsim::lane {

enum class Reason : std::uint8_t { GapIncentive, MavJoinIncentive, Detachment };

struct Decision {
  VehicleId vehicle_id = kNoVehicle;
  int from_lane = 0;
  int to_lane = 0;
  Reason reason = Reason::GapIncentive;
};

// Gap incentive: current-lane gap constrains the next-step speed while the
// target lane does not. True iff d_current < min(v + a, v_eff_max) and
// d_other > min(v + a, v_eff_max).
bool incentive_gap(int d_current, int d_other, int v, int a, int v_eff_max);

// Join incentive for independent MAVs: the current-lane leader is
// conventional and the target-lane leader is a MAV (module or train member).
bool incentive_mav_join(Kind current_leader_kind, Kind target_leader_kind);

// Rear safety on the target lane: d_back > v_max (the global limit).
bool safety_back(int d_back, int v_max);

// Evaluates every conventional vehicle and independent-mode MAV against the
// frozen pre-step state. A vehicle whose incentive and safety hold draws
// once and changes lanes with probability p_lc. Docking MAVs and collective
// members never appear here (detachment is collected by the train module).
// The MAV join incentive is active only while `docking_enabled_now` holds.
// Draws are consumed in vehicle-id-ascending order, one per vehicle whose
// incentive and safety both hold.
std::vector<Decision> collect_decisions(const RoadState& state, const SimParams& params,
                                        Rng& rng, bool docking_enabled_now);

// Same contract with a caller-provided cross-lane probe table (one shared
// sweep per step instead of one per collector).
std::vector<Decision> collect_decisions(const RoadState& state, const SimParams& params,
                                        Rng& rng, bool docking_enabled_now,
                                        const std::vector<RoadState::LaneProbe>& probes);

// Applies decisions simultaneously: only the lane field changes. Each move
// is validated against its new neighbors; an overlap faults the run.
void apply_decisions(RoadState& state, const std::vector<Decision>& decisions);

}  // namespace mavsim::lane
