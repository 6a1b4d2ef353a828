#pragma once

// Reference implementations the tests compare against. Written from the
// physics/maths directly, sharing no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Model constants, spelled out again rather than read from the library.
struct Rotary {
  double Pb = 79.86, Pi = 88.63, Utip = 120.0, v0 = 4.03, d0 = 0.6, s = 0.05, rho = 1.225,
         A = 0.503, g = 9.8;
};
struct Fixed {
  double c1 = 9.26e-4, c2 = 2250.0, g = 9.8;
};

// Term by term, with the centrifugal load factor written as (a_c/g)².
inline double rotary_power(double V, double r, const Rotary& p = {}) {
  const double ac = std::isinf(r) ? 0.0 : V * V / r;
  const double load = 1.0 + (ac / p.g) * (ac / p.g);
  const double blade = p.Pb * (1.0 + 3.0 * V * V / (p.Utip * p.Utip));
  const double x = V * V / (2.0 * p.v0 * p.v0);
  const double induced = p.Pi * std::sqrt(load) * std::sqrt(std::sqrt(load + x * x) - x);
  const double parasite = 0.5 * p.d0 * p.rho * p.s * p.A * V * V * V;
  return blade + induced + parasite;
}

inline double fixed_power(double V, double r, const Fixed& p = {}) {
  const double k = std::isinf(r) ? 0.0 : p.c2 / (p.g * p.g * r * r);
  return (p.c1 + k) * V * V * V + p.c2 / V;
}

// Stationary point of the fixed-wing closed form.
inline double fixed_stationary_speed(double r, const Fixed& p = {}) {
  const double k = std::isinf(r) ? 0.0 : p.c2 / (p.g * p.g * r * r);
  return std::pow(p.c2 / (3.0 * (p.c1 + k)), 0.25);
}

struct Minimum {
  double speed;
  double power;
};

// Dense scan, 0.01 m/s step over [lo, hi].
inline Minimum grid_sweep(const std::function<double(double)>& f, double lo = 0.1,
                          double hi = 80.0, double step = 0.01) {
  Minimum best{lo, f(lo)};
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 1; k <= n; ++k) {
    const double v = lo + step * double(k);
    const double p = f(v);
    if (p < best.power) best = {v, p};
  }
  return best;
}

inline int local_minima(const std::function<double(double)>& f, double lo, double hi,
                        double step) {
  std::vector<double> ys;
  for (double v = lo; v <= hi; v += step) ys.push_back(f(v));
  int count = 0;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    if (ys[i] < ys[i - 1] && ys[i] < ys[i + 1]) ++count;
  }
  return count;
}

// Area of the lens where two discs overlap.
inline double lens_area(double r1, double r2, double d) {
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) return std::numbers::pi * std::pow(std::min(r1, r2), 2);
  const double a = r1 * r1 * std::acos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1));
  const double b = r2 * r2 * std::acos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2));
  const double c = 0.5 * std::sqrt((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2));
  return a + b - c;
}

// Every set partition of {0..n-1}, restricted-growth-string enumeration.
inline void for_each_partition(std::size_t n,
                               const std::function<void(const std::vector<std::vector<std::size_t>>&)>& visit) {
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      std::vector<std::vector<std::size_t>> parts(blocks);
      for (std::size_t k = 0; k < n; ++k) parts[label[k]].push_back(k);
      visit(parts);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      label[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    visit({});
    return;
  }
  rec(0, 0);
}

// Fewest blocks over all partitions whose every block passes `ok`.
inline std::size_t brute_force_min_groups(
    std::size_t n, const std::function<bool(const std::vector<std::size_t>&)>& ok) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_partition(n, [&](const std::vector<std::vector<std::size_t>>& parts) {
    if (parts.size() >= best) return;
    for (const auto& p : parts) {
      if (!ok(p)) return;
    }
    best = parts.size();
  });
  return best;
}

using CellSet = std::set<std::pair<int, int>>;

}  // namespace oracle
