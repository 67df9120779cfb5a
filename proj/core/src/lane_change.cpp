#include "mavsim/lane_change.hpp"

#include <algorithm>
#include <string>

#include "mavsim/errors.hpp"

namespace mavsim::lane {

bool incentive_gap(int d_current, int d_other, int v, int a, int v_eff_max) {
  const int bound = std::min(v + a, v_eff_max);
  return d_current < bound && d_other > bound;
}

bool incentive_mav_join(Kind current_leader_kind, Kind target_leader_kind) {
  return current_leader_kind == Kind::Conventional && target_leader_kind == Kind::Mav;
}

bool safety_back(int d_back, int v_max) {
  return d_back > v_max;
}

std::vector<Decision> collect_decisions(const RoadState& state, const SimParams& params,
                                        Rng& rng, bool docking_enabled_now) {
  std::vector<RoadState::LaneProbe> probes;
  state.cross_lane_probes(probes);
  return collect_decisions(state, params, rng, docking_enabled_now, probes);
}

std::vector<Decision> collect_decisions(const RoadState& state, const SimParams& params,
                                        Rng& rng, bool docking_enabled_now,
                                        const std::vector<RoadState::LaneProbe>& probes) {
  // Eligibility is evaluated lane by lane in index order (sequential gap
  // reads); the p_lc draws run over vehicle ids ascending afterwards, which
  // keeps the draw protocol independent of lane layout.
  std::vector<std::uint8_t> eligible(state.size(), 0);
  std::vector<int> gaps;
  for (int lane_idx = 0; lane_idx < state.lane_count(); ++lane_idx) {
    const auto& ord = state.lane_order(lane_idx);
    state.lane_gaps(lane_idx, gaps);
    for (std::size_t i = 0; i < ord.size(); ++i) {
      const Vehicle& v = state.vehicle(ord[i]);
      const int d = gaps[i];
      const RoadState::LaneProbe& probe = probes[static_cast<std::size_t>(v.id)];

      if (v.kind == Kind::Conventional) {
        const int bound = std::min(v.speed + params.a, params.v_max);
        if (d < bound && probe.gap_ahead > bound &&
            safety_back(probe.gap_behind, params.v_max)) {
          eligible[static_cast<std::size_t>(v.id)] =
              static_cast<std::uint8_t>(Reason::GapIncentive) + 1;
        }
      } else if (v.mode == Mode::Independent) {
        const int bound = std::min(v.speed + params.a, params.v_max_mav);
        if (probe.gap_ahead <= bound) continue;  // shared front-gap leg
        Reason reason = Reason::GapIncentive;
        bool go = d < bound;
        if (!go && docking_enabled_now && probe.ahead != kNoVehicle && ord.size() > 1) {
          // Join pull toward a MAV-led lane: relaxes the own-lane blocked
          // condition only. The front-gap leg above stays required; without
          // it a fast module can drop in closer than its next advance and
          // overrun a braking leader.
          const Vehicle& own_leader = state.vehicle(ord[(i + 1) % ord.size()]);
          if (incentive_mav_join(own_leader.kind, state.vehicle(probe.ahead).kind)) {
            go = true;
            reason = Reason::MavJoinIncentive;
          }
        }
        if (go && safety_back(probe.gap_behind, params.v_max)) {
          eligible[static_cast<std::size_t>(v.id)] = static_cast<std::uint8_t>(reason) + 1;
        }
      }
      // Docking: lane changing prohibited. Collective: detachment only.
    }
  }

  std::vector<Decision> decisions;
  for (const Vehicle& v : state.vehicles()) {
    const std::uint8_t tag = eligible[static_cast<std::size_t>(v.id)];
    if (tag == 0) continue;
    if (rng.uniform01() < params.p_lc) {
      decisions.push_back(
          Decision{v.id, v.lane, 1 - v.lane, static_cast<Reason>(tag - 1)});
    }
  }
  return decisions;
}

void apply_decisions(RoadState& state, const std::vector<Decision>& decisions) {
  std::vector<std::pair<VehicleId, int>> moves;
  moves.reserve(decisions.size());
  for (const Decision& d : decisions) moves.emplace_back(d.vehicle_id, d.to_lane);
  state.apply_lane_moves(moves);
  // Lateral moves into pre-checked spans cannot collide; verify locally
  // anyway, a violation here means a rule bug.
  for (const Decision& d : decisions) {
    const Vehicle& v = state.vehicle(d.vehicle_id);
    const VehicleId lid = state.leader_id(v.id);
    if (lid != v.id && state.gap_ahead(v.id) < 0) {
      throw InternalFault("lane change overlap: vehicle " + std::to_string(v.id) +
                          " behind " + std::to_string(lid) + " at t=" +
                          std::to_string(state.time));
    }
    const VehicleId fid = state.follower_id(v.id);
    if (fid != v.id && state.gap_ahead(fid) < 0) {
      throw InternalFault("lane change overlap: vehicle " + std::to_string(fid) +
                          " behind " + std::to_string(v.id) + " at t=" +
                          std::to_string(state.time));
    }
  }
}

}  // namespace mavsim::lane
