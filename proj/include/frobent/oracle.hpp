#pragma once

// Brute-force reference computations for small instances.
//
// Nothing here calls the optimized paths: membership comes from enumerating sums of
// generators, and all linear algebra is one dense matrix over F_p with its own elimination.
// Every routine enforces a hard size cap and throws ResourceError beyond it.

#include <cstdint>
#include <string>
#include <vector>

#include "frobent/monoid.hpp"

namespace frobent::oracle {

inline constexpr std::uint64_t kEnumerationCap = 1'000'000;
inline constexpr std::size_t kDenseCap = 3000;

/// Membership table of <generators> on [0, upto], by enumerating sums.
std::vector<bool> semigroup_members(const std::vector<std::int64_t>& generators, std::int64_t upto);

struct Gaps {
  std::vector<std::int64_t> gaps;
  std::int64_t frobenius_number = -1;
};

Gaps gaps(const std::vector<std::int64_t>& generators);

/// Gamma \ closure(ideal) by box enumeration; `finite` is false when the ideal misses an axis.
struct Complement {
  bool finite = true;
  std::vector<Point> elements;  ///< sorted
};

Complement complement(const MonoidSpec& monoid, const std::vector<Point>& ideal);

/// {w : q w + r in closure(set)} for every residue class r, with its minimal generators.
struct ResidueClass {
  Point residue;
  std::vector<Point> generators;  ///< sorted; empty when the class contributes nothing
};

/// Classes in odometer order (first coordinate fastest), as for pushforward.
std::vector<ResidueClass> pushforward_decompose(const MonoidSpec& monoid, const std::vector<Point>& set,
                                                std::int64_t q);

/// The monomial module closure(I) / closure(J) over F_p[[Gamma]].
struct MonomialModule {
  std::vector<Point> generators;
  std::vector<Point> relations;
};

/// l(H^{-i}) of M (x) K(x), i = 0..len(x), from dense boundary ranks over the box [0, D]^d.
///
/// D defaults to a generous multiple of the data; the result is accepted only if it does not
/// change when the box grows by D/2 (ResourceError otherwise).
std::vector<std::uint64_t> koszul_lengths(const MonoidSpec& monoid, std::uint32_t p, const MonomialModule& module,
                                          const std::vector<Point>& sequence, std::int64_t box = 0);

struct Resolution {
  std::vector<std::uint64_t> betti;
  std::vector<std::vector<Point>> degrees;  ///< sorted per step
};

/// Minimal free resolution of M through `steps`, from global dense kernels over the box [0, D]^d.
Resolution resolution(const MonoidSpec& monoid, std::uint32_t p, const MonomialModule& module, int steps,
                      std::int64_t box = 0);

}  // namespace frobent::oracle
