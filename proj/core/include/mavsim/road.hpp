#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mavsim/vehicle.hpp"

namespace mavsim {

// Resolves a train id to its member count. Implemented by the train
// registry; lets neighbor views carry train sizes without this module
// depending on the registry type.
class TrainSizeLookup {
 public:
  virtual ~TrainSizeLookup() = default;
  virtual int train_size(int train_id) const = 0;
};

// Ring-wrapped gaps and neighbor attributes around one vehicle. All gaps are
// front-bumper to rear-bumper: d = x_l - x - length(leader), wrapped.
// A lane holding a single vehicle treats it as its own leader across the
// ring (d = road_length - length). Empty-lane probes report d = road_length
// and kNoVehicle ids.
struct NeighborView {
  // same lane
  VehicleId leader_id = kNoVehicle;
  int d = 0;
  int leader_speed = 0;
  int leader_gap = 0;  // the leader's own front gap
  Kind leader_kind = Kind::Conventional;
  Mode leader_mode = Mode::NotApplicable;
  int leader_train_size = 0;

  // target lane
  VehicleId target_leader_id = kNoVehicle;
  VehicleId target_follower_id = kNoVehicle;
  int d_other = 0;
  int d_back = 0;
  Kind target_leader_kind = Kind::Conventional;
  Mode target_leader_mode = Mode::NotApplicable;
  int target_leader_train_size = 0;
};

// Two ring lanes of cells with a per-lane occupancy index: vehicle ids kept
// sorted by front position, giving O(1) same-lane leader queries and
// O(log n) cross-lane probes. Vehicle ids equal their index in vehicles()
// and stay stable for the whole run.
class RoadState {
 public:
  RoadState(int road_length, int lanes);

  int road_length() const { return road_length_; }
  int lane_count() const { return static_cast<int>(order_.size()); }

  int time = 0;

  // Registers a vehicle during initialization; v.id must equal size().
  void add_vehicle(const Vehicle& v);
  // Sorts the occupancy index from scratch. Faults on duplicate positions.
  void rebuild_index();

  std::vector<Vehicle>& vehicles() { return vehicles_; }
  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  Vehicle& vehicle(VehicleId id) { return vehicles_[static_cast<std::size_t>(id)]; }
  const Vehicle& vehicle(VehicleId id) const { return vehicles_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return vehicles_.size(); }

  // Ids on `lane`, ascending front position.
  const std::vector<VehicleId>& lane_order(int lane) const {
    return order_[static_cast<std::size_t>(lane)];
  }

  // Immediate same-lane leader; a lone vehicle is its own leader.
  VehicleId leader_id(VehicleId id) const;
  VehicleId follower_id(VehicleId id) const;
  // Front gap to the same-lane leader; road_length - length when alone.
  int gap_ahead(VehicleId id) const;

  struct LaneProbe {
    VehicleId ahead = kNoVehicle;
    int gap_ahead = 0;
    VehicleId behind = kNoVehicle;
    int gap_behind = 0;
  };
  // Nearest vehicles around the span [front-length+1, front] on `lane`.
  // Negative gaps flag that the span overlaps the neighbor.
  LaneProbe probe_lane(int lane, int front, int length) const;

  // Other-lane probe for every vehicle at once (two-lane roads), via one
  // merge sweep per lane instead of per-vehicle binary searches. `out` is
  // indexed by vehicle id and matches probe_lane exactly.
  void cross_lane_probes(std::vector<LaneProbe>& out) const;

  // Batched lateral moves: all erases and insertions are applied before the
  // index positions are refreshed once per touched lane.
  void apply_lane_moves(const std::vector<std::pair<VehicleId, int>>& moves);

  // Front gap of the vehicle at each order slot on `lane`, one O(n) pass.
  void lane_gaps(int lane, std::vector<int>& out) const;

  NeighborView neighbor_view(VehicleId id, int target_lane,
                             const TrainSizeLookup* trains = nullptr) const;

  // Moves a vehicle laterally; the longitudinal position is untouched.
  void change_lane(VehicleId id, int to_lane);

  // Advances every vehicle by its current speed, synchronously. The index
  // is restored by rotating the wrapped suffix of each lane, which is exact
  // as long as no vehicle passed another (enforced by the overlap checks).
  void advance_all();

  // Full occupancy scan; fills `msg` on the first violation.
  bool check_no_overlap(std::string* msg = nullptr) const;
  void assert_no_overlap() const;
  // Rebuild-and-compare verification of the occupancy index.
  bool index_consistent() const;

 private:
  void refresh_order_positions(int lane);

  int dist_ahead(int from, int to) const {
    const int d = to - from;
    return d > 0 ? d : d + road_length_;  // 0 wraps to a full lap (self-leader)
  }
  int dist_back(int from, int to) const {
    const int d = from - to;
    return d >= 0 ? d : d + road_length_;
  }

  int road_length_;
  std::vector<Vehicle> vehicles_;
  std::vector<std::vector<VehicleId>> order_;
  std::vector<std::uint32_t> order_pos_;
};

}  // namespace mavsim
