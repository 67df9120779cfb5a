#include "mavsim/road.hpp"

#include <algorithm>
#include <cassert>

#include "mavsim/errors.hpp"

namespace mavsim {

RoadState::RoadState(int road_length, int lanes) : road_length_(road_length) {
  order_.resize(static_cast<std::size_t>(lanes));
}

void RoadState::add_vehicle(const Vehicle& v) {
  if (v.id != static_cast<VehicleId>(vehicles_.size())) {
    throw InternalFault("add_vehicle: id must equal insertion index");
  }
  vehicles_.push_back(v);
  order_pos_.push_back(0);
}

void RoadState::rebuild_index() {
  for (auto& lane : order_) lane.clear();
  for (const auto& v : vehicles_) {
    order_[v.lane].push_back(v.id);
  }
  for (int l = 0; l < lane_count(); ++l) {
    auto& ord = order_[static_cast<std::size_t>(l)];
    std::sort(ord.begin(), ord.end(), [this](VehicleId a, VehicleId b) {
      return vehicles_[static_cast<std::size_t>(a)].position <
             vehicles_[static_cast<std::size_t>(b)].position;
    });
    for (std::size_t i = 1; i < ord.size(); ++i) {
      if (vehicle(ord[i - 1]).position == vehicle(ord[i]).position) {
        throw InternalFault("rebuild_index: two vehicles share a front cell on lane " +
                            std::to_string(l));
      }
    }
    refresh_order_positions(l);
  }
}

void RoadState::refresh_order_positions(int lane) {
  const auto& ord = order_[static_cast<std::size_t>(lane)];
  for (std::size_t i = 0; i < ord.size(); ++i) {
    order_pos_[static_cast<std::size_t>(ord[i])] = static_cast<std::uint32_t>(i);
  }
}

VehicleId RoadState::leader_id(VehicleId id) const {
  const Vehicle& v = vehicle(id);
  const auto& ord = order_[v.lane];
  const std::size_t i = order_pos_[static_cast<std::size_t>(id)];
  return ord[(i + 1) % ord.size()];
}

VehicleId RoadState::follower_id(VehicleId id) const {
  const Vehicle& v = vehicle(id);
  const auto& ord = order_[v.lane];
  const std::size_t i = order_pos_[static_cast<std::size_t>(id)];
  return ord[(i + ord.size() - 1) % ord.size()];
}

int RoadState::gap_ahead(VehicleId id) const {
  const Vehicle& v = vehicle(id);
  const VehicleId lid = leader_id(id);
  if (lid == id) return road_length_ - v.length;
  const Vehicle& l = vehicle(lid);
  return dist_ahead(v.position, l.position) - l.length;
}

RoadState::LaneProbe RoadState::probe_lane(int lane, int front, int length) const {
  LaneProbe probe;
  const auto& ord = order_[static_cast<std::size_t>(lane)];
  if (ord.empty()) {
    probe.gap_ahead = road_length_;
    probe.gap_behind = road_length_;
    return probe;
  }
  // First vehicle strictly ahead of `front`; its predecessor is the follower.
  const auto it = std::upper_bound(
      ord.begin(), ord.end(), front, [this](int pos, VehicleId id) {
        return pos < vehicles_[static_cast<std::size_t>(id)].position;
      });
  const std::size_t m = ord.size();
  const std::size_t idx = static_cast<std::size_t>(it - ord.begin());
  probe.ahead = ord[idx % m];
  probe.behind = ord[(idx + m - 1) % m];
  const Vehicle& ahead = vehicle(probe.ahead);
  const Vehicle& behind = vehicle(probe.behind);
  probe.gap_ahead = dist_ahead(front, ahead.position) - ahead.length;
  probe.gap_behind = dist_back(front, behind.position) - length;
  return probe;
}

void RoadState::cross_lane_probes(std::vector<LaneProbe>& out) const {
  out.resize(vehicles_.size());
  for (int lane = 0; lane < lane_count(); ++lane) {
    const auto& own = order_[static_cast<std::size_t>(lane)];
    if (own.empty()) continue;
    const auto& other = order_[static_cast<std::size_t>(1 - lane)];
    if (other.empty()) {
      for (const VehicleId id : own) {
        LaneProbe& p = out[static_cast<std::size_t>(id)];
        p = LaneProbe{};
        p.gap_ahead = road_length_;
        p.gap_behind = road_length_;
      }
      continue;
    }
    const std::size_t m = other.size();
    std::size_t j = 0;  // first other-lane vehicle with position > own position
    for (const VehicleId id : own) {
      const Vehicle& v = vehicle(id);
      while (j < m && vehicle(other[j]).position <= v.position) ++j;
      const Vehicle& ahead = vehicle(other[j % m]);
      const Vehicle& behind = vehicle(other[(j + m - 1) % m]);
      LaneProbe& p = out[static_cast<std::size_t>(id)];
      p.ahead = ahead.id;
      p.behind = behind.id;
      p.gap_ahead = dist_ahead(v.position, ahead.position) - ahead.length;
      p.gap_behind = dist_back(v.position, behind.position) - v.length;
    }
  }
}

void RoadState::apply_lane_moves(const std::vector<std::pair<VehicleId, int>>& moves) {
  if (moves.empty()) return;
  std::vector<std::uint8_t> leaving(vehicles_.size(), 0);
  bool lane_touched[2] = {false, false};
  for (const auto& [id, to] : moves) {
    leaving[static_cast<std::size_t>(id)] = 1;
    lane_touched[vehicle(id).lane] = true;
    lane_touched[to] = true;
  }
  for (int lane = 0; lane < lane_count(); ++lane) {
    if (!lane_touched[lane]) continue;
    auto& ord = order_[static_cast<std::size_t>(lane)];
    ord.erase(std::remove_if(ord.begin(), ord.end(),
                             [&](VehicleId id) { return leaving[static_cast<std::size_t>(id)]; }),
              ord.end());
  }
  std::vector<std::pair<int, VehicleId>> arrivals[2];
  for (const auto& [id, to] : moves) {
    Vehicle& v = vehicle(id);
    v.lane = static_cast<std::uint8_t>(to);
    arrivals[to].emplace_back(v.position, id);
  }
  for (int lane = 0; lane < lane_count(); ++lane) {
    if (arrivals[lane].empty()) continue;
    std::sort(arrivals[lane].begin(), arrivals[lane].end());
    auto& ord = order_[static_cast<std::size_t>(lane)];
    std::vector<VehicleId> merged;
    merged.reserve(ord.size() + arrivals[lane].size());
    auto ai = arrivals[lane].begin();
    for (const VehicleId id : ord) {
      const int pos = vehicle(id).position;
      while (ai != arrivals[lane].end() && ai->first < pos) merged.push_back((ai++)->second);
      merged.push_back(id);
    }
    while (ai != arrivals[lane].end()) merged.push_back((ai++)->second);
    ord = std::move(merged);
  }
  for (int lane = 0; lane < lane_count(); ++lane) {
    if (lane_touched[lane]) refresh_order_positions(lane);
  }
}

void RoadState::lane_gaps(int lane, std::vector<int>& out) const {
  const auto& ord = order_[static_cast<std::size_t>(lane)];
  const std::size_t m = ord.size();
  out.resize(m);
  if (m == 0) return;
  if (m == 1) {
    out[0] = road_length_ - vehicle(ord[0]).length;
    return;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const Vehicle& ahead = vehicle(ord[i + 1]);
    out[i] = ahead.position - vehicle(ord[i]).position - ahead.length;
  }
  const Vehicle& first = vehicle(ord[0]);
  out[m - 1] = first.position + road_length_ - vehicle(ord[m - 1]).position - first.length;
}

NeighborView RoadState::neighbor_view(VehicleId id, int target_lane,
                                      const TrainSizeLookup* trains) const {
  const Vehicle& v = vehicle(id);
  NeighborView view;

  view.leader_id = leader_id(id);
  const Vehicle& leader = vehicle(view.leader_id);
  view.d = gap_ahead(id);
  view.leader_speed = leader.speed;
  view.leader_gap = gap_ahead(view.leader_id);
  view.leader_kind = leader.kind;
  view.leader_mode = leader.mode;
  view.leader_train_size = (leader.in_train() && trains) ? trains->train_size(leader.train) : 1;

  const LaneProbe probe = probe_lane(target_lane, v.position, v.length);
  view.target_leader_id = probe.ahead;
  view.target_follower_id = probe.behind;
  view.d_other = probe.gap_ahead;
  view.d_back = probe.gap_behind;
  if (probe.ahead != kNoVehicle) {
    const Vehicle& tl = vehicle(probe.ahead);
    view.target_leader_kind = tl.kind;
    view.target_leader_mode = tl.mode;
    view.target_leader_train_size = (tl.in_train() && trains) ? trains->train_size(tl.train) : 1;
  }
  return view;
}

void RoadState::change_lane(VehicleId id, int to_lane) {
  Vehicle& v = vehicle(id);
  const int from = v.lane;
  if (from == to_lane) return;
  auto& src = order_[static_cast<std::size_t>(from)];
  src.erase(src.begin() + order_pos_[static_cast<std::size_t>(id)]);

  auto& dst = order_[static_cast<std::size_t>(to_lane)];
  const auto it = std::upper_bound(
      dst.begin(), dst.end(), v.position, [this](int pos, VehicleId other) {
        return pos < vehicles_[static_cast<std::size_t>(other)].position;
      });
  dst.insert(it, id);
  v.lane = static_cast<std::uint8_t>(to_lane);
  refresh_order_positions(from);
  refresh_order_positions(to_lane);
}

void RoadState::advance_all() {
  for (int l = 0; l < lane_count(); ++l) {
    auto& ord = order_[static_cast<std::size_t>(l)];
    const std::size_t m = ord.size();
    if (m == 0) continue;
    // Vehicles crossing the seam form a suffix of the ascending order.
    std::size_t wrapped = 0;
    for (std::size_t i = m; i-- > 0;) {
      const Vehicle& v = vehicle(ord[i]);
      if (v.position + v.speed >= road_length_) {
        ++wrapped;
      } else {
        break;
      }
    }
    for (const VehicleId id : ord) {
      Vehicle& v = vehicle(id);
      v.position += v.speed;
      if (v.position >= road_length_) v.position -= road_length_;
    }
    if (wrapped > 0 && wrapped < m) {
      std::rotate(ord.begin(), ord.end() - static_cast<std::ptrdiff_t>(wrapped), ord.end());
      refresh_order_positions(l);
    }
#ifndef NDEBUG
    for (std::size_t i = 1; i < m; ++i) {
      assert(vehicle(ord[i - 1]).position < vehicle(ord[i]).position &&
             "lane order corrupted after advance");
    }
#endif
  }
}

bool RoadState::check_no_overlap(std::string* msg) const {
  for (int l = 0; l < lane_count(); ++l) {
    const auto& ord = order_[static_cast<std::size_t>(l)];
    const std::size_t m = ord.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vehicle& v = vehicle(ord[i]);
      const Vehicle& ahead = vehicle(ord[(i + 1) % m]);
      if (m > 1 && i + 1 < m && ahead.position <= v.position) {
        if (msg) {
          *msg = "lane " + std::to_string(l) + ": order not ascending near vehicle " +
                 std::to_string(v.id);
        }
        return false;
      }
      const int gap = (m == 1) ? road_length_ - v.length
                               : dist_ahead(v.position, ahead.position) - ahead.length;
      if (gap < 0) {
        if (msg) {
          *msg = "lane " + std::to_string(l) + ": vehicle " + std::to_string(v.id) +
                 " (front " + std::to_string(v.position) + ") overlaps vehicle " +
                 std::to_string(ahead.id) + " (front " + std::to_string(ahead.position) +
                 ", length " + std::to_string(ahead.length) + ")";
        }
        return false;
      }
    }
  }
  return true;
}

void RoadState::assert_no_overlap() const {
  std::string msg;
  if (!check_no_overlap(&msg)) {
    throw InternalFault("overlap at t=" + std::to_string(time) + ": " + msg);
  }
}

bool RoadState::index_consistent() const {
  RoadState copy(road_length_, lane_count());
  for (const auto& v : vehicles_) copy.add_vehicle(v);
  copy.rebuild_index();
  for (int l = 0; l < lane_count(); ++l) {
    if (copy.order_[static_cast<std::size_t>(l)] != order_[static_cast<std::size_t>(l)]) {
      return false;
    }
  }
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    if (order_pos_[i] != copy.order_pos_[i]) return false;
  }
  return true;
}

}  // namespace mavsim
