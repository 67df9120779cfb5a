#pragma once

#include <cstdint>

namespace mavsim {

using VehicleId = std::int32_t;
inline constexpr VehicleId kNoVehicle = -1;
inline constexpr int kNoTrain = -1;

enum class Kind : std::uint8_t { Conventional, Mav };

enum class Mode : std::uint8_t {
  NotApplicable,  // conventional vehicles
  Independent,
  Docking,
  Collective,
};

struct Vehicle {
  VehicleId id = kNoVehicle;
  Kind kind = Kind::Conventional;
  Mode mode = Mode::NotApplicable;
  std::uint8_t lane = 0;
  int position = 0;  // front-bumper cell; occupied cells are [position-length+1, position]
  int speed = 0;     // cells/s
  int length = 0;    // cells
  int train = kNoTrain;
  VehicleId docking_target = kNoVehicle;

  bool is_mav() const { return kind == Kind::Mav; }
  bool in_train() const { return train != kNoTrain; }
};

}  // namespace mavsim
