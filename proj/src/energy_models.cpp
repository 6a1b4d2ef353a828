#include "fapsim/energy_models.hpp"

#include <cstdint>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

namespace fapsim {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(fmt::format("{} must be positive and finite, got {}", name, value));
  }
}

void require_unit_open(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw ValidationError(fmt::format("{} must lie in (0, 1), got {}", name, value));
  }
}

void require_speed(double speed) {
  if (!std::isfinite(speed) || speed < 0.0) {
    throw ValidationError(fmt::format("speed must be finite and non-negative, got {}", speed));
  }
}

}  // namespace

void RotaryWingParams::validate() const {
  require_positive(blade_profile_power, "blade_profile_power");
  require_positive(induced_power, "induced_power");
  require_positive(tip_speed, "tip_speed");
  require_positive(induced_velocity, "induced_velocity");
  require_unit_open(fuselage_drag_ratio, "fuselage_drag_ratio");
  require_unit_open(rotor_solidity, "rotor_solidity");
  require_positive(air_density, "air_density");
  require_positive(rotor_disc_area, "rotor_disc_area");
  require_positive(gravity, "gravity");
  require_positive(weight, "weight");
  require_positive(rotor_radius, "rotor_radius");
  require_positive(blade_angular_velocity, "blade_angular_velocity");
  require_unit_open(induced_power_correction, "induced_power_correction");
  require_unit_open(profile_drag_coefficient, "profile_drag_coefficient");
}

void FixedWingParams::validate() const {
  require_positive(c1, "c1");
  require_positive(c2, "c2");
  require_positive(gravity, "gravity");
  require_positive(min_turn_radius, "min_turn_radius");
  if (mass) require_positive(*mass, "mass");
}

const char* to_string(UavType type) {
  return type == UavType::Rotary ? "rotary" : "fixed";
}

UavType uav_type(const UavModel& model) {
  return std::holds_alternative<RotaryWingParams>(model) ? UavType::Rotary : UavType::Fixed;
}

TurnRadius TurnRadius::of(double meters) {
  if (!(meters > 0.0) || !std::isfinite(meters)) {
    throw ValidationError(fmt::format("turn radius must be positive and finite, got {}", meters));
  }
  return TurnRadius{meters};
}

double rotary_power(double speed, const TurnRadius& radius, const RotaryWingParams& params) {
  require_speed(speed);
  return rotary_power_terms(speed, radius, params).total();
}

double rotary_hover_power(const RotaryWingParams& params) {
  return params.blade_profile_power + params.induced_power;
}

double fixed_power(double speed, const TurnRadius& radius, const FixedWingParams& params) {
  require_speed(speed);
  if (speed == 0.0) {
    throw ValidationError("fixed-wing UAVs cannot hover: speed must be > 0");
  }
  return fixed_power_formula(speed, radius, params);
}

double propulsion_power(const UavModel& model, double speed, const TurnRadius& radius) {
  if (const auto* rotary = std::get_if<RotaryWingParams>(&model)) {
    return rotary_power(speed, radius, *rotary);
  }
  return fixed_power(speed, radius, std::get<FixedWingParams>(model));
}

SpeedOptimum optimal_speed(const UavModel& model, const TurnRadius& radius, SpeedBounds bounds) {
  if (!(bounds.lower > 0.0) || !(bounds.upper > bounds.lower) || !std::isfinite(bounds.upper)) {
    throw ValidationError(
        fmt::format("invalid speed bounds [{}, {}]", bounds.lower, bounds.upper));
  }
  if (const auto* fixed = std::get_if<FixedWingParams>(&model)) {
    if (!radius.is_straight() && radius.meters() < fixed->min_turn_radius) {
      throw InfeasibleError(fmt::format("turn radius {} m is below the fixed-wing minimum of {} m",
                                        radius.meters(), fixed->min_turn_radius),
                            radius.meters());
    }
  }
  const auto power = [&](double v) { return propulsion_power(model, v, radius); };
  std::uintmax_t max_iter = 200;
  const auto [speed, min_power] =
      boost::math::tools::brent_find_minima(power, bounds.lower, bounds.upper, 40, max_iter);
  return {speed, min_power};
}

SampledPath::SampledPath(std::vector<PathSample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw ValidationError("a sampled path needs at least one sample");
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const auto& s = samples_[k];
    if (!std::isfinite(s.t) || !s.position.allFinite() || !s.velocity.allFinite() ||
        !s.acceleration.allFinite()) {
      throw ValidationError(fmt::format("path sample {} is not finite", k));
    }
    if (k > 0 && !(s.t > samples_[k - 1].t)) {
      throw ValidationError(fmt::format("path timestamps must strictly increase (sample {})", k));
    }
  }
}

double rotary_path_power(double speed, double centrifugal_accel, const RotaryWingParams& p) {
  const double v2 = speed * speed;
  const double v0_2 = p.induced_velocity * p.induced_velocity;
  const double ac_ratio = (centrifugal_accel * centrifugal_accel) / (p.gravity * p.gravity);
  const double blade = p.blade_profile_power * (1.0 + 3.0 * v2 / (p.tip_speed * p.tip_speed));
  const double induced =
      p.induced_power * std::sqrt(1.0 + ac_ratio) *
      std::sqrt(std::sqrt(1.0 + ac_ratio + v2 * v2 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2));
  const double parasite = 0.5 * p.fuselage_drag_ratio * p.air_density * p.rotor_solidity *
                          p.rotor_disc_area * v2 * speed;
  return blade + induced + parasite;
}

double fixed_path_power(const Vec2& velocity, const Vec2& acceleration, const FixedWingParams& p) {
  const double speed = velocity.norm();
  if (!(speed > 0.0)) {
    throw ValidationError("fixed-wing path sample has zero speed");
  }
  const double along = acceleration.dot(velocity);
  const double normal_sq = acceleration.squaredNorm() - along * along / (speed * speed);
  return p.c1 * speed * speed * speed +
         p.c2 / speed * (1.0 + normal_sq / (p.gravity * p.gravity));
}

namespace {

template <typename PowerAt>
double trapezoid(const SampledPath& path, PowerAt power_at) {
  const auto& samples = path.samples();
  if (samples.size() < 2) {
    throw ValidationError("path integration needs at least 2 samples");
  }
  double energy = 0.0;
  double previous = power_at(samples.front());
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double current = power_at(samples[k]);
    energy += 0.5 * (previous + current) * (samples[k].t - samples[k - 1].t);
    previous = current;
  }
  return energy;
}

double kinetic_delta(const SampledPath& path, double mass) {
  const auto& samples = path.samples();
  return 0.5 * mass *
         (samples.back().velocity.squaredNorm() - samples.front().velocity.squaredNorm());
}

}  // namespace

double integrate_rotary_energy(const SampledPath& path, const RotaryWingParams& params) {
  const double energy = trapezoid(path, [&](const PathSample& s) {
    const double speed = s.velocity.norm();
    double centrifugal = 0.0;
    if (speed > 0.0) {
      const Vec2 heading = s.velocity / speed;
      centrifugal = (s.acceleration - s.acceleration.dot(heading) * heading).norm();
    }
    return rotary_path_power(speed, centrifugal, params);
  });
  return energy + kinetic_delta(path, params.mass());
}

double integrate_fixed_energy(const SampledPath& path, const FixedWingParams& params) {
  const double energy = trapezoid(path, [&](const PathSample& s) {
    return fixed_path_power(s.velocity, s.acceleration, params);
  });
  return params.mass ? energy + kinetic_delta(path, *params.mass) : energy;
}

}  // namespace fapsim
