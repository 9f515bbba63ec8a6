#pragma once

// Lattice-box helpers shared by the module and homology code.

#include <cstdint>

#include "frobent/monoid.hpp"

namespace frobent::detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline constexpr std::uint64_t kBoxCap = 10'000'000;

/// Number of lattice points in [lo, hi], saturating just above kBoxCap.
inline std::uint64_t box_volume(const Point& lo, const Point& hi) {
  std::uint64_t v = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (hi[j] < lo[j]) return 0;
    const auto side = static_cast<std::uint64_t>(hi[j] - lo[j] + 1);
    if (v > kBoxCap / side + 1) return kBoxCap + 1;
    v *= side;
  }
  return v;
}

/// Calls f(z) for every lattice point of [lo, hi], first coordinate fastest.
template <typename F>
void for_each_in_box(const Point& lo, const Point& hi, F&& f) {
  if (box_volume(lo, hi) == 0) return;
  Point z = lo;
  const std::size_t d = lo.size();
  while (true) {
    f(static_cast<const Point&>(z));
    std::size_t j = 0;
    while (j < d && ++z[j] > hi[j]) {
      z[j] = lo[j];
      ++j;
    }
    if (j == d) return;
  }
}

inline Point subtract(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

inline Point add(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] + b[j];
  return out;
}

}  // namespace frobent::detail
