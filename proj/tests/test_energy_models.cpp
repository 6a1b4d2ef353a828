#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fapsim/errors.hpp"
#include "fapsim/energy_models.hpp"
#include "fapsim/trajectory_energy.hpp"
#include "oracles.hpp"

using namespace fapsim;
using doctest::Approx;

namespace {

const RotaryWingParams kRotary;
const FixedWingParams kFixed;

SampledPath analytic_circle(double speed, double radius, double duration, double dt) {
  const double w = speed / radius;
  std::vector<PathSample> samples;
  const auto n = static_cast<long>(std::round(duration / dt));
  for (long k = 0; k <= n; ++k) {
    const double t = duration * double(k) / double(n);
    const Vec2 u(std::cos(w * t), std::sin(w * t));
    samples.push_back({t, radius * u, speed * Vec2(-u.y(), u.x()), -speed * w * u});
  }
  return SampledPath(std::move(samples));
}

SampledPath analytic_line(const std::function<double(double)>& speed_at,
                          const std::function<double(double)>& accel_at, double duration,
                          double dt) {
  std::vector<PathSample> samples;
  const auto n = static_cast<long>(std::round(duration / dt));
  double x = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double t = duration * double(k) / double(n);
    if (k > 0) x += 0.5 * (speed_at(t) + speed_at(t - duration / double(n))) * duration / double(n);
    samples.push_back({t, Vec2(x, 0.0), Vec2(speed_at(t), 0.0), Vec2(accel_at(t), 0.0)});
  }
  return SampledPath(std::move(samples));
}

}  // namespace

TEST_CASE("parameter defaults") {
  CHECK(kRotary.blade_profile_power == 79.86);
  CHECK(kRotary.induced_power == 88.63);
  CHECK(kRotary.tip_speed == 120.0);
  CHECK(kRotary.induced_velocity == 4.03);
  CHECK(kRotary.fuselage_drag_ratio == 0.6);
  CHECK(kRotary.rotor_solidity == 0.05);
  CHECK(kRotary.air_density == 1.225);
  CHECK(kRotary.rotor_disc_area == 0.503);
  CHECK(kRotary.gravity == 9.8);
  CHECK(kFixed.c1 == 9.26e-4);
  CHECK(kFixed.c2 == 2250.0);
  CHECK(kFixed.min_turn_radius == 5.0);
}

TEST_CASE("rotary power spot values") {
  const auto straight = TurnRadius::straight();
  CHECK(rotary_power(0.0, straight, kRotary) == Approx(168.49).epsilon(1e-12));
  CHECK(rotary_hover_power(kRotary) == Approx(168.49).epsilon(1e-12));
  // independent evaluation
  CHECK(rotary_power(30.0, straight, kRotary) == Approx(oracle::rotary_power(30.0, oracle::kInf)));
  CHECK(rotary_power(30.0, straight, kRotary) == Approx(356.29).epsilon(1e-4));
  for (double v : {0.0, 1.0, 5.0, 10.2, 17.0, 42.0}) {
    for (double r : {5.0, 18.0, 108.0, oracle::kInf}) {
      const auto radius = std::isinf(r) ? straight : TurnRadius::of(r);
      CHECK(rotary_power(v, radius, kRotary) == Approx(oracle::rotary_power(v, r)).epsilon(1e-12));
    }
  }
}

TEST_CASE("rotary hover power is linear in the hover terms") {
  RotaryWingParams p;
  p.blade_profile_power = 100.0;
  p.induced_power = 50.0;
  CHECK(rotary_hover_power(p) == Approx(150.0));
  // zero hover powers are outside the validated domain but the formula still holds
  p.blade_profile_power = 0.0;
  p.induced_power = 0.0;
  CHECK(rotary_power_terms(0.0, TurnRadius::straight(), p).total() == 0.0);
}

TEST_CASE("hover power does not depend on the turn radius") {
  for (double r : {1.0, 5.0, 50.0, 1e4}) {
    CHECK(rotary_power(0.0, TurnRadius::of(r), kRotary) == Approx(168.49).epsilon(1e-12));
  }
}

TEST_CASE("fixed power spot values") {
  CHECK(fixed_power(30.0, TurnRadius::straight(), kFixed) == Approx(100.002).epsilon(1e-6));
  CHECK(fixed_power(30.0, TurnRadius::of(108.0), kFixed) ==
        Approx(oracle::fixed_power(30.0, 108.0)).epsilon(1e-12));
  CHECK(fixed_power(30.0, TurnRadius::of(108.0), kFixed) == Approx(154.2).epsilon(1e-3));
  // V³ dominance at high speed
  const double p200 = fixed_power(200.0, TurnRadius::straight(), kFixed);
  const double p400 = fixed_power(400.0, TurnRadius::straight(), kFixed);
  CHECK(p400 / p200 == Approx(8.0).epsilon(2e-3));
}

TEST_CASE("power input validation") {
  CHECK_THROWS_AS(rotary_power(-1.0, TurnRadius::straight(), kRotary), ValidationError);
  CHECK_THROWS_AS(rotary_power(std::nan(""), TurnRadius::straight(), kRotary), ValidationError);
  CHECK_THROWS_AS(fixed_power(0.0, TurnRadius::straight(), kFixed), ValidationError);
  CHECK_THROWS_AS(TurnRadius::of(0.0), ValidationError);
  CHECK_THROWS_AS(TurnRadius::of(-3.0), ValidationError);
  CHECK_THROWS_AS(TurnRadius::of(oracle::kInf), ValidationError);
  RotaryWingParams bad;
  bad.rotor_solidity = 1.5;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  FixedWingParams bad_fixed;
  bad_fixed.c2 = 0.0;
  CHECK_THROWS_AS(bad_fixed.validate(), ValidationError);
}

TEST_CASE("optimal speed agrees with a 0.01 m/s grid sweep") {
  for (double r : {5.0, 10.0, 18.0, 54.0, 108.0, 500.0, oracle::kInf}) {
    const auto radius = std::isinf(r) ? TurnRadius::straight() : TurnRadius::of(r);
    CAPTURE(r);
    const auto rot = optimal_speed(kRotary, radius);
    const auto rot_grid = oracle::grid_sweep([&](double v) { return oracle::rotary_power(v, r); });
    CHECK(std::abs(rot.speed - rot_grid.speed) < 0.02);
    CHECK(rot.power <= rot_grid.power + 1e-9);
    CHECK(rot.power == Approx(rot_grid.power).epsilon(1e-6));

    const auto fix = optimal_speed(kFixed, radius);
    const auto fix_grid = oracle::grid_sweep([&](double v) { return oracle::fixed_power(v, r); });
    CHECK(std::abs(fix.speed - fix_grid.speed) < 0.02);
    CHECK(fix.power <= fix_grid.power + 1e-9);
  }
}

TEST_CASE("fixed-wing optimum matches the stationarity condition") {
  for (double r : {5.0, 7.5, 18.0, 54.0, 108.0, 1000.0, oracle::kInf}) {
    CAPTURE(r);
    const auto radius = std::isinf(r) ? TurnRadius::straight() : TurnRadius::of(r);
    const auto opt = optimal_speed(kFixed, radius);
    const double v_star = oracle::fixed_stationary_speed(r);
    CHECK(std::abs(opt.speed - v_star) < 1e-3);
    CHECK(opt.power == Approx(oracle::fixed_power(v_star, r)).epsilon(1e-9));
  }
  const auto straight = optimal_speed(kFixed, TurnRadius::straight());
  CHECK(straight.speed == Approx(30.0).epsilon(0.1 / 30.0));
  CHECK(straight.power == Approx(100.0).epsilon(0.2 / 100.0));
  const auto r108 = optimal_speed(kFixed, TurnRadius::of(108.0));
  CHECK(r108.speed == Approx(22.5).epsilon(0.01));
  CHECK(r108.power == Approx(133.5).epsilon(0.01));
}

TEST_CASE("rotary straight-line optimum") {
  const auto opt = optimal_speed(kRotary, TurnRadius::straight());
  CHECK(opt.speed > 10.0);
  CHECK(opt.speed < 11.0);
  CHECK(opt.power == Approx(126.0).epsilon(1.5 / 126.0));
}

TEST_CASE("fixed-wing radius below the minimum is infeasible") {
  try {
    optimal_speed(kFixed, TurnRadius::of(4.0));
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    REQUIRE(e.radius());
    CHECK(*e.radius() == 4.0);
  }
  CHECK_NOTHROW(optimal_speed(kFixed, TurnRadius::of(5.0)));
  CHECK_NOTHROW(optimal_speed(kRotary, TurnRadius::of(1.0)));
}

TEST_CASE("properties: turning never helps, P_min falls with radius, unimodal in V") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> speed(0.1, 80.0);
  std::uniform_real_distribution<double> radius(0.5, 1000.0);
  for (int k = 0; k < 200; ++k) {
    const double v = speed(rng);
    const double r = radius(rng);
    CHECK(rotary_power(v, TurnRadius::straight(), kRotary) <=
          rotary_power(v, TurnRadius::of(r), kRotary));
    CHECK(fixed_power(v, TurnRadius::straight(), kFixed) <=
          fixed_power(v, TurnRadius::of(r), kFixed));
  }

  double last_rot = oracle::kInf;
  double last_fix = oracle::kInf;
  for (double r = 5.0; r <= 5000.0; r *= 1.25) {
    const double pr = optimal_speed(kRotary, TurnRadius::of(r)).power;
    const double pf = optimal_speed(kFixed, TurnRadius::of(r)).power;
    CHECK(pr <= last_rot + 1e-9);
    CHECK(pf <= last_fix + 1e-9);
    last_rot = pr;
    last_fix = pf;
  }
  CHECK(last_rot == Approx(optimal_speed(kRotary, TurnRadius::straight()).power).epsilon(1e-4));
  CHECK(last_fix == Approx(optimal_speed(kFixed, TurnRadius::straight()).power).epsilon(1e-3));

  for (double r : {5.0, 20.0, 108.0, oracle::kInf}) {
    CAPTURE(r);
    CHECK(oracle::local_minima([&](double v) { return oracle::fixed_power(v, r); }, 0.1, 80.0, 0.01) == 1);
    CHECK(oracle::local_minima([&](double v) { return oracle::rotary_power(v, r); }, 0.1, 80.0, 0.01) == 1);
  }
}

TEST_CASE("path integral of a constant-speed circle matches the closed form") {
  struct Case {
    double v, r;
  };
  for (const auto c : {Case{5.0, 20.0}, Case{10.1, 108.0}, Case{30.0, 108.0}, Case{22.5, 108.0}}) {
    CAPTURE(c.v);
    CAPTURE(c.r);
    const double lap = 2.0 * std::numbers::pi * c.r / c.v;
    const auto path = analytic_circle(c.v, c.r, lap, 0.01);
    CHECK(integrate_rotary_energy(path, kRotary) ==
          Approx(oracle::rotary_power(c.v, c.r) * lap).epsilon(1e-3));
    CHECK(integrate_fixed_energy(path, kFixed) ==
          Approx(oracle::fixed_power(c.v, c.r) * lap).epsilon(1e-3));
  }
}

TEST_CASE("path integral: hover, straight line, kinetic term") {
  std::vector<PathSample> hover;
  for (int k = 0; k <= 1000; ++k) hover.push_back({0.01 * k, Vec2(3, 4), Vec2::Zero(), Vec2::Zero()});
  CHECK(integrate_rotary_energy(SampledPath(hover), kRotary) == Approx(1684.9).epsilon(1e-9));
  CHECK_THROWS_AS(integrate_fixed_energy(SampledPath(hover), kFixed), ValidationError);

  const auto cruise = analytic_line([](double) { return 30.0; }, [](double) { return 0.0; }, 3600.0, 0.5);
  CHECK(integrate_fixed_energy(cruise, kFixed) == Approx(360007.2).epsilon(1e-6));
  const auto slow = analytic_line([](double) { return 7.0; }, [](double) { return 0.0; }, 100.0, 0.01);
  CHECK(integrate_rotary_energy(slow, kRotary) ==
        Approx(oracle::rotary_power(7.0, oracle::kInf) * 100.0).epsilon(1e-3));

  // Speed up from 5 to 10 m/s: the integral gains ½m(10² - 5²) on top of the
  // power integral, which is computed here by a finer midpoint rule.
  const auto v_of = [](double t) { return 5.0 + 0.5 * t; };
  const auto ramp = analytic_line(v_of, [](double) { return 0.5; }, 10.0, 0.001);
  double power_integral = 0.0;
  for (int k = 0; k < 100000; ++k) {
    power_integral += oracle::rotary_power(v_of((k + 0.5) * 1e-4), oracle::kInf) * 1e-4;
  }
  const double kinetic = 0.5 * (20.0 / 9.8) * (100.0 - 25.0);
  CHECK(integrate_rotary_energy(ramp, kRotary) == Approx(power_integral + kinetic).epsilon(1e-6));

  // Out and back to the starting speed: the kinetic term cancels exactly.
  const auto there_and_back = analytic_line(
      [](double t) { return 20.0 + 5.0 * std::sin(std::numbers::pi * t / 10.0); },
      [](double t) { return 5.0 * std::numbers::pi / 10.0 * std::cos(std::numbers::pi * t / 10.0); },
      10.0, 0.001);
  FixedWingParams with_mass = kFixed;
  with_mass.mass = 13.0;
  CHECK(integrate_fixed_energy(there_and_back, with_mass) ==
        Approx(integrate_fixed_energy(there_and_back, kFixed)).epsilon(1e-12));
}

TEST_CASE("sampled path validation") {
  CHECK_THROWS_AS(SampledPath({}), ValidationError);
  CHECK_THROWS_AS(SampledPath({{0.0, Vec2::Zero(), Vec2::Zero(), Vec2::Zero()},
                               {0.0, Vec2::Zero(), Vec2::Zero(), Vec2::Zero()}}),
                  ValidationError);
  CHECK_THROWS_AS(SampledPath({{0.0, Vec2::Zero(), Vec2(std::nan(""), 0), Vec2::Zero()},
                               {1.0, Vec2::Zero(), Vec2::Zero(), Vec2::Zero()}}),
                  ValidationError);
  const SampledPath one({{0.0, Vec2::Zero(), Vec2::Zero(), Vec2::Zero()}});
  CHECK_THROWS_AS(integrate_rotary_energy(one, kRotary), ValidationError);
}

TEST_CASE("trajectory energy on circles") {
  const auto rot = trajectory_energy(make_circle(Vec2(50, 50), 108.0), kRotary);
  CHECK(rot.energy_per_hour / 1000.0 == Approx(455.0).epsilon(0.02));
  const auto fix = trajectory_energy(make_circle(Vec2(50, 50), 108.0), kFixed);
  CHECK(fix.energy_per_hour / 1000.0 == Approx(481.0).epsilon(0.02));
  CHECK(fix.lap_time == Approx(2.0 * std::numbers::pi * 108.0 / fix.segments[0].speed));
  CHECK(fix.avg_power * 3600.0 == Approx(fix.energy_per_hour));
  CHECK_THROWS_AS(trajectory_energy(make_circle(Vec2::Zero(), 4.0), kFixed), InfeasibleError);
  CHECK_THROWS_AS(trajectory_energy(make_hover(Vec2::Zero()), kFixed), InfeasibleError);
  const auto hover = trajectory_energy(make_hover(Vec2::Zero()), kRotary);
  CHECK(hover.avg_power == Approx(168.49));
  CHECK(hover.energy_per_hour == Approx(168.49 * 3600.0));
}

TEST_CASE("trajectory energy on a stadium weights segments by time") {
  const auto loop = make_stadium(TrajectoryKind::Elliptic, Vec2::Zero(), Vec2::UnitX(), 10.0, 30.0);
  const auto e = trajectory_energy(loop, kFixed);
  REQUIRE(e.segments.size() == 4);
  const auto line = oracle::grid_sweep([](double v) { return oracle::fixed_power(v, oracle::kInf); }, 0.1, 80.0, 0.001);
  const auto arc = oracle::grid_sweep([](double v) { return oracle::fixed_power(v, 10.0); }, 0.1, 80.0, 0.001);
  const double t_line = 30.0 / line.speed;
  const double t_arc = std::numbers::pi * 10.0 / arc.speed;
  const double avg = (2 * line.power * t_line + 2 * arc.power * t_arc) / (2 * t_line + 2 * t_arc);
  CHECK(e.avg_power == Approx(avg).epsilon(1e-5));
  CHECK(e.lap_time == Approx(2 * t_line + 2 * t_arc).epsilon(1e-4));
}
