#pragma once

// Propulsion power and energy models for rotary-wing and fixed-wing UAVs.
//
// Rotary-wing, steady circular flight at speed V on radius r:
//   P(V, r) = P_b (1 + 3V²/U_tip²)
//           + P_ind sqrt(1 + V⁴/(r²g²)) (sqrt(1 + V⁴/(r²g²) + V⁴/(4v_0⁴)) - V²/(2v_0²))^½
//           + ½ d_0 ρ s A V³
// Fixed-wing, steady circular flight:
//   P(V, r) = (c_1 + c_2/(g²r²)) V³ + c_2/V
// Straight flight is the r → ∞ limit, where the centrifugal terms vanish.

#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "fapsim/errors.hpp"

namespace fapsim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

struct RotaryWingParams {
  double blade_profile_power = 79.86;  // P_b [W]
  double induced_power = 88.63;        // P_ind [W]
  double tip_speed = 120.0;            // U_tip [m/s]
  double induced_velocity = 4.03;      // v_0 [m/s]
  double fuselage_drag_ratio = 0.6;    // d_0
  double rotor_solidity = 0.05;        // s
  double air_density = 1.225;          // ρ [kg/m³]
  double rotor_disc_area = 0.503;      // A [m²]
  double gravity = 9.8;                // g [m/s²]

  // Airframe description the hover powers above were derived from. Carried
  // for reporting; the power model reads none of them except through mass().
  double weight = 20.0;                   // W [N]
  double rotor_radius = 0.4;              // R [m]
  double blade_angular_velocity = 300.0;  // Ω [rad/s]
  double induced_power_correction = 0.1;  // k
  double profile_drag_coefficient = 0.012;  // δ

  /// Mass used by the kinetic-energy correction of the path integral [kg].
  double mass() const { return weight / gravity; }

  void validate() const;
};

struct FixedWingParams {
  double c1 = 9.26e-4;          // parasitic coefficient [kg/m]
  double c2 = 2250.0;           // induced coefficient [kg·m³/s⁴]
  double gravity = 9.8;         // [m/s²]
  double min_turn_radius = 5.0;  // [m]
  std::optional<double> mass;   // [kg]; kinetic term skipped when unset

  void validate() const;
};

enum class UavType { Rotary, Fixed };

const char* to_string(UavType type);

using UavModel = std::variant<RotaryWingParams, FixedWingParams>;

UavType uav_type(const UavModel& model);

/// Turn radius of a flight segment. Straight flight is its own state rather
/// than an infinite float.
class TurnRadius {
 public:
  static TurnRadius straight() { return TurnRadius{}; }
  /// Throws ValidationError unless 0 < meters < ∞.
  static TurnRadius of(double meters);

  bool is_straight() const { return !meters_; }
  /// Radius in meters; +∞ for straight flight.
  double meters() const {
    return meters_ ? *meters_ : std::numeric_limits<double>::infinity();
  }

  /// V⁴/(r²g²): squared centrifugal acceleration over g², for speed V.
  template <typename Scalar>
  Scalar centrifugal_ratio(const Scalar& speed, double gravity) const {
    if (!meters_) return Scalar(0);
    const Scalar v2 = speed * speed;
    return (v2 * v2) / (*meters_ * *meters_ * gravity * gravity);
  }

  friend bool operator==(const TurnRadius&, const TurnRadius&) = default;

 private:
  TurnRadius() = default;
  explicit TurnRadius(double m) : meters_(m) {}
  std::optional<double> meters_;
};

template <typename Scalar>
struct RotaryPowerTerms {
  Scalar blade_profile;
  Scalar induced;
  Scalar parasite;
  Scalar total() const { return blade_profile + induced + parasite; }
};

/// Unchecked closed-form rotary-wing power split into its three terms.
template <typename Scalar>
RotaryPowerTerms<Scalar> rotary_power_terms(const Scalar& speed,
                                            const TurnRadius& radius,
                                            const RotaryWingParams& p) {
  using std::sqrt;
  const Scalar v2 = speed * speed;
  const Scalar v4 = v2 * v2;
  const double v0_2 = p.induced_velocity * p.induced_velocity;
  const Scalar lift_factor = Scalar(1) + radius.centrifugal_ratio(speed, p.gravity);
  RotaryPowerTerms<Scalar> terms;
  terms.blade_profile =
      p.blade_profile_power * (Scalar(1) + 3.0 * v2 / (p.tip_speed * p.tip_speed));
  terms.induced = p.induced_power * sqrt(lift_factor) *
                  sqrt(sqrt(lift_factor + v4 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2));
  terms.parasite = 0.5 * p.fuselage_drag_ratio * p.air_density * p.rotor_solidity *
                   p.rotor_disc_area * v2 * speed;
  return terms;
}

/// Unchecked closed-form fixed-wing power.
template <typename Scalar>
Scalar fixed_power_formula(const Scalar& speed, const TurnRadius& radius,
                           const FixedWingParams& p) {
  Scalar turn = Scalar(0);
  if (!radius.is_straight()) {
    const double r = radius.meters();
    turn = Scalar(p.c2 / (p.gravity * p.gravity * r * r));
  }
  return (p.c1 + turn) * speed * speed * speed + p.c2 / speed;
}

/// Rotary-wing propulsion power [W]. Throws ValidationError for negative or
/// non-finite speed.
double rotary_power(double speed, const TurnRadius& radius, const RotaryWingParams& params);

/// P_b + P_ind.
double rotary_hover_power(const RotaryWingParams& params);

/// Fixed-wing propulsion power [W]. A fixed-wing UAV cannot hover, so
/// speed <= 0 throws ValidationError.
double fixed_power(double speed, const TurnRadius& radius, const FixedWingParams& params);

/// Dispatches on the model.
double propulsion_power(const UavModel& model, double speed, const TurnRadius& radius);

struct SpeedBounds {
  double lower = 0.1;  // [m/s]
  double upper = 80.0;  // [m/s]
};

struct SpeedOptimum {
  double speed;  // [m/s]
  double power;  // [W]
};

/// Speed minimizing propulsion power on the given radius, within bounds.
/// Throws InfeasibleError for a fixed-wing radius below min_turn_radius.
SpeedOptimum optimal_speed(const UavModel& model, const TurnRadius& radius,
                           SpeedBounds bounds = {});

struct PathSample {
  double t;           // [s]
  Vec2 position;      // [m]
  Vec2 velocity;      // [m/s]
  Vec2 acceleration;  // [m/s²]
};

/// Time-ordered kinematic samples of a planar flight path.
class SampledPath {
 public:
  /// Throws ValidationError unless timestamps strictly increase and all
  /// kinematics are finite.
  explicit SampledPath(std::vector<PathSample> samples);

  const std::vector<PathSample>& samples() const { return samples_; }
  double duration() const { return samples_.back().t - samples_.front().t; }

 private:
  std::vector<PathSample> samples_;
};

/// Instantaneous rotary-wing power along a path, from the speed and the
/// centrifugal (velocity-normal) acceleration magnitude.
double rotary_path_power(double speed, double centrifugal_accel, const RotaryWingParams& params);

/// Instantaneous fixed-wing power along a path from velocity and acceleration vectors.
double fixed_path_power(const Vec2& velocity, const Vec2& acceleration,
                        const FixedWingParams& params);

/// Trapezoidal path integral of the rotary-wing model plus the kinetic
/// correction ½m(|v(T)|² - |v(0)|²). Throws ValidationError with fewer than 2 samples.
double integrate_rotary_energy(const SampledPath& path, const RotaryWingParams& params);

/// Trapezoidal path integral of the fixed-wing model plus ½m(|v(T)|² - |v(0)|²)
/// when a mass is configured.
double integrate_fixed_energy(const SampledPath& path, const FixedWingParams& params);

}  // namespace fapsim
