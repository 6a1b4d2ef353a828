#pragma once

#include <cstdint>
#include <vector>

#include "fapsim/energy_models.hpp"

namespace fapsim {

struct GroundUser {
  Vec3 position;        // [m]
  double offered_load;  // [Mbit/s]

  friend bool operator==(const GroundUser&, const GroundUser&) = default;
};

/// Rectangular area [0, width] × [0, height] with its ground users.
struct Scenario {
  double width = 100.0;
  double height = 100.0;
  std::vector<GroundUser> gus;
  std::uint64_t seed = 0;
  double grid_res = 1.0;

  /// Throws ValidationError naming the offending GU or field.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

}  // namespace fapsim
