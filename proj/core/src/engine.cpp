#include "mavsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "mavsim/errors.hpp"
#include "mavsim/lane_change.hpp"
#include "mavsim/tsm.hpp"

namespace mavsim {

ScenarioPhase phase_of(int t, const SimParams& params) {
  if (t >= params.t_measure_start) return ScenarioPhase::Measuring;
  if (t >= params.t_dock_start) return ScenarioPhase::Operational;
  return ScenarioPhase::WarmupIndependent;
}

RoadState init_state(const SimParams& params, Rng& rng) {
  RoadState state(params.road_length, params.lanes);
  const auto per_lane = static_cast<int>(std::llround(params.density * params.road_km()));
  const auto mavs_per_lane = static_cast<int>(std::llround(params.p_mav * per_lane));

  VehicleId next_id = 0;
  for (int lane = 0; lane < params.lanes; ++lane) {
    std::vector<Kind> kinds(static_cast<std::size_t>(per_lane), Kind::Conventional);
    for (int i = 0; i < mavs_per_lane; ++i) kinds[static_cast<std::size_t>(i)] = Kind::Mav;
    for (std::size_t i = kinds.size(); i-- > 1;) {
      std::swap(kinds[i], kinds[rng.uniform_below(i + 1)]);
    }

    std::int64_t occupied = 0;
    for (const Kind k : kinds) {
      occupied += (k == Kind::Mav) ? params.mav_length : params.veh_length;
    }
    const std::int64_t free_cells = params.road_length - occupied;
    if (free_cells < 0) {
      throw ConfigError("density: lane " + std::to_string(lane) + " needs " +
                        std::to_string(occupied) + " cells but the road has " +
                        std::to_string(params.road_length));
    }

    // Random partition of the free cells into per-vehicle gaps: exponential
    // weights give a uniform simplex sample, quantized by cumulative floor.
    std::vector<double> weights(kinds.size());
    double total_weight = 0.0;
    for (double& w : weights) {
      w = -std::log(1.0 - rng.uniform01());
      total_weight += w;
    }

    int cursor = 0;
    double prefix = 0.0;
    std::int64_t placed_gap = 0;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      prefix += weights[i];
      const std::int64_t target =
          (total_weight > 0.0)
              ? static_cast<std::int64_t>(std::floor(
                    static_cast<double>(free_cells) * std::min(prefix / total_weight, 1.0)))
              : free_cells * static_cast<std::int64_t>(i + 1) /
                    static_cast<std::int64_t>(kinds.size());
      const int gap = static_cast<int>(target - placed_gap);
      placed_gap = target;

      const int length = (kinds[i] == Kind::Mav) ? params.mav_length : params.veh_length;
      Vehicle v;
      v.id = next_id++;
      v.kind = kinds[i];
      v.mode = (kinds[i] == Kind::Mav) ? Mode::Independent : Mode::NotApplicable;
      v.lane = static_cast<std::uint8_t>(lane);
      v.length = length;
      v.position = cursor + gap + length - 1;
      v.speed = 0;
      state.add_vehicle(v);
      cursor += gap + length;
    }
  }
  state.rebuild_index();
  return state;
}

Simulation::Simulation(const SimParams& params)
    : params_(params), rng_(params.seed), road_(init_state(params, rng_)) {
  p_defense_ = params_.p_defense_table();
  next_speed_.resize(road_.size(), 0);
  stoch_b_rand_.resize(road_.size(), 0);
  stoch_p_.resize(road_.size(), 0.0);
  speed_ready_.resize(road_.size(), 1);
  for (const Vehicle& v : road_.vehicles()) {
    (v.is_mav() ? initial_mavs_ : initial_conventional_) += 1;
  }
}

Simulation::Simulation(const SimParams& params, RoadState road)
    : params_(params), rng_(params.seed), road_(std::move(road)) {
  p_defense_ = params_.p_defense_table();
  next_speed_.resize(road_.size(), 0);
  stoch_b_rand_.resize(road_.size(), 0);
  stoch_p_.resize(road_.size(), 0.0);
  speed_ready_.resize(road_.size(), 1);
  for (const Vehicle& v : road_.vehicles()) {
    (v.is_mav() ? initial_mavs_ : initial_conventional_) += 1;
  }
}

double Simulation::realized_density() const {
  if (road_.size() == 0) return 0.0;
  return static_cast<double>(road_.size()) /
         (params_.road_km() * static_cast<double>(params_.lanes));
}

void Simulation::step() {
  const int t = road_.time;
  const bool docking_now = params_.docking_enabled && t >= params_.t_dock_start;
  if (initial_mavs_ > 0) {
    mode_maintenance_pass(docking_now);
  }
  lane_change_pass(docking_now);
  speed_pass();
  road_.advance_all();
  road_.time = t + 1;
}

void Simulation::mode_maintenance_pass(bool docking_now) {
  // Abort checks first, on the settled previous-step state.
  for (Vehicle& v : road_.vehicles()) {
    if (v.mode != Mode::Docking) continue;
    if (mav::docking_should_abort(road_, trains_, v.id, params_, docking_now)) {
      v.mode = Mode::Independent;
      v.docking_target = kNoVehicle;
    }
  }

  // Coupling resolves front-to-back per lane so a module docking onto a
  // tail that itself just coupled sees the grown size. Chains that cross
  // the ring seam resolve one step later.
  for (int lane = 0; lane < road_.lane_count(); ++lane) {
    const auto& ord = road_.lane_order(lane);
    for (std::size_t i = ord.size(); i-- > 0;) {
      const Vehicle& v = road_.vehicle(ord[i]);
      if (v.mode != Mode::Docking) continue;
      assert(road_.leader_id(v.id) == v.docking_target);
      const Vehicle& target = road_.vehicle(v.docking_target);
      if (target.in_train() && trains_.train_size(target.train) >= params_.l_max) {
        continue;  // grew full this step; the next abort pass reverts us
      }
      if (mav::docking_complete(road_, v.id, params_)) {
        trains_.couple(road_, v.id, v.docking_target, params_.l_max);
      }
    }
  }

  // New docking triggers, front-to-back: a leader that switches to docking
  // here stops being a valid target for its own follower this step.
  if (docking_now) {
    for (int lane = 0; lane < road_.lane_count(); ++lane) {
      const auto& ord = road_.lane_order(lane);
      for (std::size_t i = ord.size(); i-- > 0;) {
        Vehicle& v = road_.vehicle(ord[i]);
        if (v.kind != Kind::Mav || v.mode != Mode::Independent) continue;
        if (mav::docking_trigger(road_, trains_, v.id, params_, docking_now)) {
          v.mode = Mode::Docking;
          v.docking_target = road_.leader_id(v.id);
        }
      }
    }
  }
}

void Simulation::lane_change_pass(bool docking_now) {
  road_.cross_lane_probes(probes_scratch_);
  std::vector<lane::Decision> decisions =
      lane::collect_decisions(road_, params_, rng_, docking_now, probes_scratch_);
  if (trains_.count() > 0 && road_.time % params_.detach_check_period == 0) {
    const auto detachments =
        mav::detachment_decisions(road_, trains_, params_, rng_, probes_scratch_);
    decisions.insert(decisions.end(), detachments.begin(), detachments.end());
  }
  if (decisions.empty()) return;
  lane::apply_decisions(road_, decisions);
  for (const lane::Decision& d : decisions) {
    if (d.reason == lane::Reason::Detachment) {
      trains_.remove_member(road_, d.vehicle_id);
    }
  }
}

int Simulation::plan_speed_chain(const Vehicle& v, int v_eff_max) const {
  const VehicleId lid = road_.leader_id(v.id);
  const Vehicle& leader = road_.vehicle(lid);
  const int d = road_.gap_ahead(v.id);
  const int d_l = road_.gap_ahead(lid);
  const int v_anti = tsm::anticipated_leader_speed(d_l, leader.speed, params_.a, params_.v_max);
  const int d_anti = tsm::anticipated_gap(d, v_anti, params_.g_safety);
  const int v_safe = tsm::safe_speed(leader.speed, d, params_.b_max);
  return tsm::deterministic_speed(v.speed, params_.a, v_eff_max, d_anti, v_safe);
}

void Simulation::speed_pass() {
  // Phase 1 computes every deterministic speed lane by lane in index order
  // (one gap array per lane, neighbors at adjacent slots). Phase 2 applies
  // the stochastic step in vehicle-id order, which fixes the draw protocol
  // independently of lane layout. All reads see pre-update speeds.
  const int b = params_.b_max;
  for (int lane = 0; lane < road_.lane_count(); ++lane) {
    const auto& ord = road_.lane_order(lane);
    const std::size_t m = ord.size();
    if (m == 0) continue;
    road_.lane_gaps(lane, gaps_scratch_);
    for (std::size_t i = 0; i < m; ++i) {
      const Vehicle& v = road_.vehicle(ord[i]);
      const auto slot = static_cast<std::size_t>(v.id);
      if (v.mode == Mode::Collective) continue;

      const int d = gaps_scratch_[i];
      if (v.mode == Mode::Docking) {
        // Needs the target's committed speed; resolved after this sweep.
        docking_scratch_.push_back(v.id);
        stoch_p_[slot] = 0.0;
        continue;
      }

      const std::size_t li = (i + 1 == m) ? 0 : i + 1;
      const Vehicle& leader = road_.vehicle(ord[li]);
      const int v_l = (m == 1) ? v.speed : leader.speed;
      const int d_l = (m == 1) ? d : gaps_scratch_[li];
      const int v_anti = tsm::anticipated_leader_speed(d_l, v_l, params_.a, params_.v_max);
      const int d_anti = tsm::anticipated_gap(d, v_anti, params_.g_safety);

      const int cap = (v.mode == Mode::Independent) ? params_.v_max_mav : params_.v_max;
      const int bound = std::min({v.speed + params_.a, cap, d_anti});
      // The Gipps root is monotone; when the radicand already clears the
      // bound the sqrt cannot bind and is skipped.
      const int radicand = b * b + v_l * v_l + 2 * b * d;
      int v_det = bound;
      if (radicand < (bound + b) * (bound + b)) {
        v_det = std::min(bound, tsm::safe_speed(v_l, d, b));
      }

      if (v.mode == Mode::Independent) {
        next_speed_[slot] = v_det;
        stoch_p_[slot] = 0.0;
        continue;
      }

      next_speed_[slot] = v_det;
      stoch_b_rand_[slot] = tsm::randomization_deceleration(v.speed, d_anti, params_.t_gap,
                                                            params_.a, params_.b_defense);
      if (v.speed == 0) {
        stoch_p_[slot] = params_.p_b;
      } else if (static_cast<std::int64_t>(v.speed) * params_.t_gap.num <=
                 static_cast<std::int64_t>(d_anti) * params_.t_gap.den) {
        stoch_p_[slot] = params_.p_c;
      } else {
        stoch_p_[slot] = p_defense_[static_cast<std::size_t>(v.speed)];
      }
    }
  }

  // Trains: one deterministic leader speed per train, copied to every
  // member; no stochastic step for any member.
  for (const auto& [tid, train] : trains_.trains()) {
    const int v_train = mav::collective_leader_speed(road_, train, params_);
    for (const VehicleId member : train.members) {
      next_speed_[static_cast<std::size_t>(member)] = v_train;
    }
  }

  // Docking modules last: their chase tracks the target's committed speed.
  // Non-docking target speeds are final after the sweeps above. Chains of
  // docking modules resolve front-to-back (the scratch list was filled in
  // ascending slot order, so the reverse walk is descending position per
  // lane); an unresolved target across the ring seam, or an intruder in
  // place of the target, gets the standing-reference bound, which can never
  // overrun.
  for (const VehicleId id : docking_scratch_) {
    speed_ready_[static_cast<std::size_t>(id)] = 0;
  }
  for (std::size_t i = docking_scratch_.size(); i-- > 0;) {
    const VehicleId id = docking_scratch_[i];
    const Vehicle& v = road_.vehicle(id);
    const VehicleId lid = road_.leader_id(id);
    const int d = road_.gap_ahead(id);
    const Vehicle& leader = road_.vehicle(lid);
    int next;
    if (lid != v.docking_target) {
      next = mav::docking_speed(v.speed, params_.a_dock, params_.v_max, d, params_.d_intra);
    } else if (leader.mode != Mode::Docking ||
               speed_ready_[static_cast<std::size_t>(lid)]) {
      next = mav::docking_speed_tracking(v.speed, params_.a_dock, params_.v_max, d,
                                         params_.d_intra,
                                         next_speed_[static_cast<std::size_t>(lid)]);
    } else {
      next = mav::docking_speed(v.speed, params_.a_dock, params_.v_max, d, params_.d_intra);
    }
    next_speed_[static_cast<std::size_t>(id)] = next;
    speed_ready_[static_cast<std::size_t>(id)] = 1;
  }
  docking_scratch_.clear();

  // Phase 2: conventional vehicles draw, id ascending; everyone commits.
  for (Vehicle& v : road_.vehicles()) {
    const auto slot = static_cast<std::size_t>(v.id);
    int speed = next_speed_[slot];
    if (v.kind == Kind::Conventional) {
      speed = tsm::apply_stochastic_deceleration(speed, stoch_b_rand_[slot], stoch_p_[slot],
                                                 rng_.uniform01());
    }
    v.speed = speed;
  }
}

void Simulation::check_invariants() const {
  road_.assert_no_overlap();

  std::string msg;
  if (!trains_.validate(road_, params_, &msg)) {
    throw InternalFault("train invariant broken at t=" + std::to_string(road_.time) + ": " +
                        msg);
  }

  std::size_t mavs = 0, conventional = 0;
  for (const Vehicle& v : road_.vehicles()) {
    (v.is_mav() ? mavs : conventional) += 1;
    if (v.speed < 0) {
      throw InternalFault("negative speed on vehicle " + std::to_string(v.id));
    }
    const int bound = (v.mode == Mode::Docking) ? params_.v_max
                      : v.is_mav()              ? params_.v_max_mav
                                                : params_.v_max;
    if (v.speed > bound) {
      throw InternalFault("speed bound broken at t=" + std::to_string(road_.time) +
                          ": vehicle " + std::to_string(v.id) + " at " +
                          std::to_string(v.speed) + " > " + std::to_string(bound));
    }
    if (road_.time <= params_.t_dock_start &&
        (v.mode == Mode::Docking || v.mode == Mode::Collective)) {
      throw InternalFault("vehicle " + std::to_string(v.id) +
                          " entered MAV operations before t_dock_start");
    }
  }
  if (mavs != initial_mavs_ || conventional != initial_conventional_) {
    throw InternalFault("vehicle conservation broken at t=" + std::to_string(road_.time));
  }

  if (!road_.index_consistent()) {
    throw InternalFault("occupancy index diverged from vehicle list at t=" +
                        std::to_string(road_.time));
  }
}

RunOutput run(const SimParams& raw_params, bool check_every_step) {
  SimParams params = raw_params;
  params.validate();

  Simulation sim(params);
  RunOutput out;
  out.params = params;
  out.realized_density = sim.realized_density();
  out.histogram = metrics::TrainHistogram(params.l_max);
  out.flow.reserve(static_cast<std::size_t>(params.t_total));
  out.speed_mps.reserve(static_cast<std::size_t>(params.t_total));
  out.frac_free.reserve(static_cast<std::size_t>(params.t_total));
  out.frac_collective.reserve(static_cast<std::size_t>(params.t_total));

  sim.check_invariants();
  for (int s = 0; s < params.t_total; ++s) {
    sim.step();
    const int label = sim.time();

    const metrics::StepSample sample = metrics::sample_step(sim.road(), params);
    out.flow.push_back(sample.flow);
    out.speed_mps.push_back(sample.speed_mps);
    out.frac_free.push_back(sample.frac_free);
    out.frac_collective.push_back(sample.frac_collective);

    if (label >= params.t_measure_start &&
        (label - params.t_measure_start) % params.histogram_sample_period == 0) {
      metrics::sample_train_histogram(sim.trains(), sim.road(), out.histogram);
    }

    if (check_every_step || label % 100 == 0 || label == params.t_total) {
      sim.check_invariants();
    }
  }

  out.summary =
      metrics::summarize_run(out.flow, out.speed_mps, params, out.realized_density);
  out.final_vehicles = sim.road().vehicles();
  for (const auto& [tid, train] : sim.trains().trains()) {
    out.final_trains.push_back(train.members);
  }
  return out;
}

}  // namespace mavsim
