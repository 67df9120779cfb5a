#include "mavsim/mav.hpp"

#include <algorithm>
#include <cassert>

#include "mavsim/errors.hpp"
#include "mavsim/tsm.hpp"

namespace mavsim::mav {

void TrainRegistry::couple(RoadState& state, VehicleId follower, VehicleId target,
                           int l_max) {
  Vehicle& f = state.vehicle(follower);
  Vehicle& t = state.vehicle(target);
  if (t.in_train()) {
    Train& train = trains_.at(t.train);
    if (train.tail() != target) {
      throw InternalFault("couple: target " + std::to_string(target) + " is not a train tail");
    }
    if (train.size() >= l_max) {
      throw InternalFault("couple: train " + std::to_string(train.id) + " is already full");
    }
    train.members.push_back(follower);
    f.train = train.id;
  } else {
    const int id = next_id_++;
    Train train;
    train.id = id;
    train.members = {target, follower};
    train.lane = t.lane;
    trains_.emplace(id, std::move(train));
    t.mode = Mode::Collective;
    t.train = id;
    t.docking_target = kNoVehicle;
    f.train = id;
  }
  f.mode = Mode::Collective;
  f.docking_target = kNoVehicle;
}

void TrainRegistry::remove_member(RoadState& state, VehicleId module) {
  Vehicle& m = state.vehicle(module);
  if (!m.in_train()) {
    throw InternalFault("remove_member: vehicle " + std::to_string(module) +
                        " is not in a train");
  }
  const Train old = trains_.at(m.train);
  trains_.erase(old.id);

  const auto it = std::find(old.members.begin(), old.members.end(), module);
  assert(it != old.members.end());
  const auto idx = static_cast<std::size_t>(it - old.members.begin());

  m.mode = Mode::Independent;
  m.train = kNoTrain;
  m.docking_target = kNoVehicle;

  const auto install = [&](std::vector<VehicleId> segment) {
    if (segment.empty()) return;
    if (segment.size() == 1) {
      Vehicle& v = state.vehicle(segment.front());
      v.mode = Mode::Independent;
      v.train = kNoTrain;
      return;
    }
    const int id = next_id_++;
    Train train;
    train.id = id;
    train.lane = state.vehicle(segment.front()).lane;
    train.members = std::move(segment);
    for (const VehicleId v : train.members) {
      state.vehicle(v).train = id;
      state.vehicle(v).mode = Mode::Collective;
    }
    trains_.emplace(id, std::move(train));
  };

  install({old.members.begin(), old.members.begin() + static_cast<std::ptrdiff_t>(idx)});
  install({old.members.begin() + static_cast<std::ptrdiff_t>(idx) + 1, old.members.end()});
}

bool TrainRegistry::validate(const RoadState& state, const SimParams& params,
                             std::string* msg) const {
  const auto fail = [&](const std::string& m) {
    if (msg) *msg = m;
    return false;
  };

  std::size_t members_total = 0;
  for (const auto& [id, train] : trains_) {
    if (train.size() < 2 || train.size() > params.l_max) {
      return fail("train " + std::to_string(id) + ": size " + std::to_string(train.size()));
    }
    const Vehicle& leader = state.vehicle(train.leader());
    for (std::size_t i = 0; i < train.members.size(); ++i) {
      const Vehicle& v = state.vehicle(train.members[i]);
      if (v.lane != leader.lane) return fail("train " + std::to_string(id) + ": lane split");
      if (v.mode != Mode::Collective || v.train != id) {
        return fail("train " + std::to_string(id) + ": member " + std::to_string(v.id) +
                    " mode/membership mismatch");
      }
      if (v.speed != leader.speed) {
        return fail("train " + std::to_string(id) + ": member " + std::to_string(v.id) +
                    " speed " + std::to_string(v.speed) + " != leader " +
                    std::to_string(leader.speed));
      }
      if (i > 0) {
        const Vehicle& ahead = state.vehicle(train.members[i - 1]);
        if (state.leader_id(v.id) != ahead.id || state.gap_ahead(v.id) != params.d_intra) {
          return fail("train " + std::to_string(id) + ": spacing broken at member " +
                      std::to_string(v.id));
        }
      }
    }
    members_total += train.members.size();
  }

  std::size_t mavs = 0, independent = 0, docking = 0, collective = 0;
  for (const Vehicle& v : state.vehicles()) {
    if (!v.is_mav()) {
      if (v.mode != Mode::NotApplicable || v.in_train()) {
        return fail("conventional vehicle " + std::to_string(v.id) + " carries MAV state");
      }
      continue;
    }
    ++mavs;
    switch (v.mode) {
      case Mode::Independent:
        ++independent;
        break;
      case Mode::Docking:
        ++docking;
        if (v.docking_target == kNoVehicle) {
          return fail("docking vehicle " + std::to_string(v.id) + " has no target");
        }
        break;
      case Mode::Collective:
        ++collective;
        if (!v.in_train()) {
          return fail("collective vehicle " + std::to_string(v.id) + " has no train");
        }
        break;
      default:
        return fail("MAV " + std::to_string(v.id) + " in NotApplicable mode");
    }
    if (v.in_train() && v.mode != Mode::Collective) {
      return fail("vehicle " + std::to_string(v.id) + " in train but not collective");
    }
  }
  if (collective != members_total) {
    return fail("collective count " + std::to_string(collective) +
                " != registry members " + std::to_string(members_total));
  }
  if (independent + docking + collective != mavs) {
    return fail("MAV mode accounting broken");
  }
  return true;
}

int docking_speed(int v, int a_dock, int v_max, int d, int d_intra) {
  return std::min({v + a_dock, v_max, d - d_intra});
}

int docking_speed_tracking(int v, int a_dock, int v_max, int d, int d_intra,
                           int v_target_next) {
  return std::min({v + a_dock, v_max, d - d_intra + v_target_next});
}

bool docking_trigger(const RoadState& state, const TrainRegistry& trains, VehicleId follower,
                     const SimParams& params, bool docking_enabled_now) {
  if (!docking_enabled_now) return false;
  const VehicleId lid = state.leader_id(follower);
  if (lid == follower) return false;  // alone on the lane
  const Vehicle& leader = state.vehicle(lid);
  if (!leader.is_mav()) return false;
  if (leader.mode == Mode::Collective) {
    return trains.is_tail(leader) && trains.train_size(leader.train) < params.l_max;
  }
  // Independent or itself docking: an uncoupled module, size 1. Targeting a
  // still-docking leader lets whole runs of modules compress in parallel;
  // the coupling itself waits until that leader has settled.
  return true;
}

bool docking_should_abort(const RoadState& state, const TrainRegistry& trains,
                          VehicleId follower, const SimParams& params,
                          bool docking_enabled_now) {
  if (!docking_enabled_now) return true;
  const Vehicle& f = state.vehicle(follower);
  if (state.leader_id(follower) != f.docking_target) return true;  // someone entered the gap
  const Vehicle& target = state.vehicle(f.docking_target);
  if (target.in_train()) {
    if (!trains.is_tail(target)) return true;
    if (trains.train_size(target.train) >= params.l_max) return true;
  }
  return false;
}

bool docking_complete(const RoadState& state, VehicleId follower, const SimParams& params) {
  const Vehicle& f = state.vehicle(follower);
  assert(state.leader_id(follower) == f.docking_target);
  const Vehicle& target = state.vehicle(f.docking_target);
  if (target.mode == Mode::Docking) return false;
  return state.gap_ahead(follower) == params.d_intra && f.speed == target.speed;
}

int collective_leader_speed(const RoadState& state, const Train& train,
                            const SimParams& params) {
  const Vehicle& leader = state.vehicle(train.leader());
  const VehicleId ahead_id = state.leader_id(leader.id);
  const Vehicle& ahead = state.vehicle(ahead_id);
  const int d = state.gap_ahead(leader.id);
  const int d_l = state.gap_ahead(ahead_id);
  const int v_anti = tsm::anticipated_leader_speed(d_l, ahead.speed, params.a, params.v_max);
  const int d_anti = tsm::anticipated_gap(d, v_anti, params.g_safety);
  const int v_safe = tsm::safe_speed(ahead.speed, d, params.b_max);
  return tsm::deterministic_speed(leader.speed, params.a, params.v_max_mav, d_anti, v_safe);
}

std::vector<lane::Decision> detachment_decisions(const RoadState& state,
                                                 const TrainRegistry& trains,
                                                 const SimParams& params, Rng& rng) {
  std::vector<RoadState::LaneProbe> probes;
  state.cross_lane_probes(probes);
  return detachment_decisions(state, trains, params, rng, probes);
}

std::vector<lane::Decision> detachment_decisions(
    const RoadState& state, const TrainRegistry& trains, const SimParams& params, Rng& rng,
    const std::vector<RoadState::LaneProbe>& probes) {
  // member -> qualifies; draws consumed in vehicle-id-ascending order
  std::vector<lane::Decision> result;
  std::vector<VehicleId> qualifying;
  for (const Vehicle& v : state.vehicles()) {
    if (v.mode != Mode::Collective) continue;
    const double draw = rng.uniform01();
    if (draw >= params.p_d) continue;
    const RoadState::LaneProbe& probe = probes[static_cast<std::size_t>(v.id)];
    if (!lane::safety_back(probe.gap_behind, params.v_max)) continue;
    // Front room must cover the module's next advance as an independent
    // vehicle, or it could overrun a braking target-lane leader.
    if (probe.gap_ahead <= std::min(v.speed + params.a, params.v_max_mav)) continue;
    qualifying.push_back(v.id);
  }
  if (qualifying.empty()) return result;

  // Front-most qualifying member per train wins.
  for (const auto& [tid, train] : trains.trains()) {
    for (const VehicleId member : train.members) {
      if (std::find(qualifying.begin(), qualifying.end(), member) != qualifying.end()) {
        const Vehicle& v = state.vehicle(member);
        result.push_back(
            lane::Decision{member, v.lane, 1 - v.lane, lane::Reason::Detachment});
        break;
      }
    }
  }
  return result;
}

}  // namespace mavsim::mav
