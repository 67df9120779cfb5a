#pragma once

#include <map>
#include <string>
#include <vector>

#include "mavsim/lane_change.hpp"
#include "mavsim/params.hpp"
#include "mavsim/rng.hpp"
#include "mavsim/road.hpp"

namespace mavsim::mav {

// An ordered group of coupled MAV modules moving as a rigid unit.
// members.front() is the leader; spacing between consecutive members is
// exactly d_intra cells and all members share one speed at step end.
struct Train {
  int id = kNoTrain;
  std::vector<VehicleId> members;  // front to back
  int lane = 0;

  int size() const { return static_cast<int>(members.size()); }
  VehicleId leader() const { return members.front(); }
  VehicleId tail() const { return members.back(); }
};

// Ordered membership of every train. Iteration is by ascending train id;
// ids are never reused, so iteration order is creation order.
class TrainRegistry : public TrainSizeLookup {
 public:
  int train_size(int train_id) const override {
    return trains_.at(train_id).size();
  }

  const std::map<int, Train>& trains() const { return trains_; }
  const Train& train(int id) const { return trains_.at(id); }
  std::size_t count() const { return trains_.size(); }

  bool is_tail(const Vehicle& v) const {
    return v.in_train() && trains_.at(v.train).tail() == v.id;
  }

  // Couples `follower` onto `target`: a new 2-train when the target is
  // independent, an append when the target is a train tail. Faults if the
  // append would exceed l_max (the trigger/abort logic must prevent it).
  void couple(RoadState& state, VehicleId follower, VehicleId target, int l_max);

  // Removes a module that left its train (after its lane flip). The front
  // and rear remnants become separate trains; remnants of one module fall
  // back to independent mode. The detached module itself goes independent.
  void remove_member(RoadState& state, VehicleId module);

  // Full train-invariant sweep: size in [2, l_max], one lane, contiguity at
  // exactly d_intra, uniform speed, mode/membership agreement, and the
  // MAV accounting sum. Fills `msg` on the first violation.
  bool validate(const RoadState& state, const SimParams& params, std::string* msg) const;

 private:
  std::map<int, Train> trains_;
  int next_id_ = 0;
};

// Catch-up speed while docking against a standing reference:
// min(v + a_dock, v_max, d - d_intra). The cap is the global v_max, not
// v_max_mav; the advance can never exceed the gap, so a standing leader
// cannot be hit. Used verbatim when the immediate leader is not the docking
// target (an intruder; the abort check reverts the module next step).
int docking_speed(int v, int a_dock, int v_max, int d, int d_intra);

// Catch-up speed against the moving docking target:
// min(v + a_dock, v_max, d - d_intra + v_target_next), where v_target_next
// is the target's already-committed speed for this step (targets are MAVs
// and carry no stochastic term, so their advance is exact). Keeps the gap
// at or above d_intra under synchronous update while letting the chase
// close out in flowing traffic; with a standing target it reduces to
// docking_speed.
int docking_speed_tracking(int v, int a_dock, int v_max, int d, int d_intra,
                           int v_target_next);

// Whether an independent module may switch to docking: the immediate
// same-lane leader is a MAV that is either an uncoupled module (independent
// or itself still docking) or the tail of a train smaller than l_max.
bool docking_trigger(const RoadState& state, const TrainRegistry& trains, VehicleId follower,
                     const SimParams& params, bool docking_enabled_now);

// Whether a docking module must revert to independent mode: the immediate
// leader is no longer the docking target (someone entered the gap or the
// target moved away), the target train is full, or docking got disabled.
bool docking_should_abort(const RoadState& state, const TrainRegistry& trains,
                          VehicleId follower, const SimParams& params,
                          bool docking_enabled_now);

// Whether a docking module couples this step: gap equals d_intra and the
// speeds already match, so the realized docking acceleration is zero.
// Targets still in docking mode themselves defer the coupling.
bool docking_complete(const RoadState& state, VehicleId follower, const SimParams& params);

// Deterministic speed of a train leader: the conventional update chain with
// v_eff_max = v_max_mav and no stochastic step. Every member is assigned
// exactly this value by the engine.
int collective_leader_speed(const RoadState& state, const Train& train,
                            const SimParams& params);

// Detachment sweep over all collective modules. Every module draws once
// (vehicle-id-ascending); a module qualifies when its draw is below p_d,
// the target-lane rear gap exceeds v_max, and the module's span fits the
// target lane. At most one module per train detaches per step; the
// front-most qualifying one wins.
std::vector<lane::Decision> detachment_decisions(const RoadState& state,
                                                 const TrainRegistry& trains,
                                                 const SimParams& params, Rng& rng);

// Same contract with a caller-provided cross-lane probe table.
std::vector<lane::Decision> detachment_decisions(
    const RoadState& state, const TrainRegistry& trains, const SimParams& params, Rng& rng,
    const std::vector<RoadState::LaneProbe>& probes);

}  // namespace mavsim::mav
