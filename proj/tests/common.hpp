#pragma once

// Random objects shared by the property suites. Every generator takes an explicit engine.

#include <random>
#include <vector>

#include "frobent/grmod.hpp"
#include "frobent/grring.hpp"
#include "frobent/monoid.hpp"

namespace testing {

using frobent::ExponentSet;
using frobent::GradedModule;
using frobent::MonoidSpec;
using frobent::Point;
using frobent::RingSpec;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// One of the small monoids used throughout the suites.
inline MonoidSpec random_monoid(std::mt19937_64& rng, bool allow_two_dims = true) {
  switch (uniform(rng, 0, allow_two_dims ? 4 : 2)) {
    case 0:
      return MonoidSpec::numerical({2, 3});
    case 1:
      return MonoidSpec::numerical({3, 5});
    case 2:
      return MonoidSpec::numerical({1});
    case 3:
      return MonoidSpec::free(2);
    default:
      return MonoidSpec::product({2, 3}, 1);
  }
}

inline Point random_point(std::mt19937_64& rng, std::size_t d, std::int64_t hi) {
  Point p(d);
  for (auto& x : p) x = uniform(rng, 0, hi);
  return p;
}

/// A random point of Gamma with coordinates at most about `hi`.
inline Point random_member(std::mt19937_64& rng, const MonoidSpec& monoid, std::int64_t hi) {
  for (;;) {
    Point p = random_point(rng, monoid.dim(), hi);
    if (frobent::contains(monoid, p)) return p;
  }
}

/// closure(I) / closure(J) with J primary to the maximal ideal, so the module has finite length.
inline GradedModule random_finite_module(std::mt19937_64& rng, const RingSpec& ring, std::int64_t hi = 4) {
  const MonoidSpec& monoid = ring.monoid();
  const std::size_t d = monoid.dim();
  std::vector<Point> gens;
  const auto ng = uniform(rng, 1, 3);
  for (int i = 0; i < ng; ++i) gens.push_back(random_member(rng, monoid, hi));
  std::vector<Point> rels;
  for (std::size_t j = 0; j < d; ++j) {
    Point pure(d, 0);
    pure[j] = uniform(rng, hi + 1, 2 * hi + 3);
    rels.push_back(pure);
  }
  const auto extra = uniform(rng, 0, 2);
  for (int i = 0; i < extra; ++i) rels.push_back(random_member(rng, monoid, 2 * hi));
  return GradedModule::monomial(ring, ExponentSet(monoid, gens), ExponentSet(monoid, rels), 1, "M");
}

/// closure(I) / closure(J) where J may be empty (then the module has infinite length).
inline GradedModule random_module(std::mt19937_64& rng, const RingSpec& ring, std::int64_t hi = 4) {
  if (uniform(rng, 0, 2) == 0) {
    const MonoidSpec& monoid = ring.monoid();
    std::vector<Point> gens;
    const auto ng = uniform(rng, 1, 3);
    for (int i = 0; i < ng; ++i) gens.push_back(random_member(rng, monoid, hi));
    return GradedModule::monomial(ring, ExponentSet(monoid, gens), {}, 1, "I");
  }
  return random_finite_module(rng, ring, hi);
}

}  // namespace testing
