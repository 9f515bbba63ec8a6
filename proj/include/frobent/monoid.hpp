#pragma once

// Grading monoids: numerical semigroups and their products with free monoids N^d.
//
// Every supported monoid is a product of one-dimensional numerical factors (a free factor of
// rank d is d copies of <1>), so membership, closures and counts all work coordinate-wise.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frobent {

/// A lattice degree in Z^d.
using Point = std::vector<std::int64_t>;

std::string to_string(const Point& p);

/// Numerical semigroup <a_1, ..., a_r> in Z_{>=0} with gcd 1.
class NumericalSemigroup {
 public:
  explicit NumericalSemigroup(std::vector<std::int64_t> generators);

  /// Minimal generators in increasing order.
  const std::vector<std::int64_t>& generators() const { return generators_; }
  std::int64_t min_generator() const { return generators_.front(); }
  std::int64_t max_generator() const { return generators_.back(); }

  bool contains(std::int64_t x) const;
  const std::vector<std::int64_t>& gaps() const { return gaps_; }
  /// Largest gap, or -1 when the semigroup is all of Z_{>=0}.
  std::int64_t frobenius_number() const { return conductor_ - 1; }
  std::int64_t conductor() const { return conductor_; }
  bool is_free() const { return generators_.size() == 1; }

  /// Maximal factorization length of each x in [0, upto]; -1 for non-members.
  std::vector<std::int64_t> order_table(std::int64_t upto) const;

  friend bool operator==(const NumericalSemigroup&, const NumericalSemigroup&) = default;

 private:
  std::vector<std::int64_t> generators_;
  std::vector<std::int64_t> gaps_;
  std::int64_t conductor_ = 0;
  std::vector<bool> member_;  ///< membership for [0, conductor)
};

enum class MonoidKind { Numerical, Free, Product };

class MonoidSpec {
 public:
  static MonoidSpec numerical(std::vector<std::int64_t> generators);
  static MonoidSpec free(std::size_t rank);
  /// Numerical factor in the first coordinate, free factor of the given rank after it.
  static MonoidSpec product(std::vector<std::int64_t> generators, std::size_t free_rank);

  MonoidKind kind() const { return kind_; }
  std::size_t dim() const { return factors_.size(); }
  const std::vector<NumericalSemigroup>& factors() const { return factors_; }
  const NumericalSemigroup& factor(std::size_t axis) const { return factors_[axis]; }

  /// True iff the monoid is N^d, i.e. the monoid ring is regular.
  bool is_free() const;
  /// Number of minimal generators of the positive part (embedding dimension of k[[Gamma]]).
  std::size_t embedding_dimension() const;
  /// Minimal generators of Gamma_+, factor by factor.
  std::vector<Point> minimal_generators() const;

  std::string to_string() const;

  friend bool operator==(const MonoidSpec&, const MonoidSpec&) = default;

 private:
  MonoidKind kind_ = MonoidKind::Free;
  std::vector<NumericalSemigroup> factors_;
};

bool contains(const MonoidSpec& monoid, const Point& degree);

/// Finite generating set of the Gamma-closed set union_i (g_i + Gamma).
///
/// Generators are kept pairwise incomparable and sorted, so equal sets compare equal.
class ExponentSet {
 public:
  ExponentSet() = default;
  ExponentSet(const MonoidSpec& monoid, std::vector<Point> generators);

  const std::vector<Point>& generators() const { return generators_; }
  bool empty() const { return generators_.empty(); }
  std::size_t size() const { return generators_.size(); }

  friend bool operator==(const ExponentSet&, const ExponentSet&) = default;

 private:
  std::vector<Point> generators_;
};

/// Membership of a degree in the Gamma-closed set generated by `set`.
bool in_closure(const MonoidSpec& monoid, const ExponentSet& set, const Point& degree);

struct GapData {
  std::vector<std::int64_t> gaps;
  std::int64_t frobenius_number = -1;
  std::int64_t conductor = 0;
};

/// Gaps, Frobenius number and conductor; numerical monoids only.
GapData gaps(const MonoidSpec& monoid);

/// A count that may be infinite.
struct Count {
  bool finite = true;
  std::uint64_t value = 0;

  static Count infinite() { return {false, 0}; }
  std::string to_string() const { return finite ? std::to_string(value) : "inf"; }
  friend bool operator==(const Count&, const Count&) = default;
};

struct ComplementStats {
  Count count;
  /// Largest maximal-factorization length over the complement (-1 when it is empty).
  std::int64_t max_order = -1;
};

/// Hard limit on slice evaluations in complement computations.
inline constexpr std::uint64_t kComplementWorkCap = 200'000'000;

/// #(Gamma \ I) together with the largest order of a complement element.
ComplementStats complement_stats(const MonoidSpec& monoid, const ExponentSet& ideal);

/// #(Gamma \ I), or infinity when the ideal is not primary to the maximal ideal.
Count complement_count(const MonoidSpec& monoid, const ExponentSet& ideal);

/// #(closure(set) \ closure(removed)), or infinity.
Count difference_count(const MonoidSpec& monoid, const ExponentSet& set, const ExponentSet& removed);

/// Generators multiplied by m and re-minimalized.
ExponentSet scale(const MonoidSpec& monoid, std::int64_t m, const ExponentSet& set);

/// Generators of {w : modulus * w + residue in closure(set)}.
ExponentSet residue_preimage(const MonoidSpec& monoid, const ExponentSet& set, std::int64_t modulus,
                             const Point& residue);

}  // namespace frobent
