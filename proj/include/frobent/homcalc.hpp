#pragma once

// Koszul homology, the constants (N, B), minimal graded free resolutions and Betti numbers.
//
// Everything is computed one multidegree at a time. Structure constants of monomial modules and
// of Koszul/free differentials are 0 and +-1, so ranks are computed over the prime field F_p;
// ranks do not change under field extension.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobent/grmod.hpp"
#include "frobent/grring.hpp"

namespace frobent {

class KoszulComplex {
 public:
  /// Koszul complex on the given monomials; requires sqrt(x) = m.
  KoszulComplex(const RingSpec& ring, std::vector<Point> sequence);
  /// x = the minimal monomial generators of m.
  static KoszulComplex on_maximal_ideal(const RingSpec& ring);

  const std::vector<Point>& sequence() const { return sequence_; }
  std::size_t length() const { return sequence_.size(); }

 private:
  std::vector<Point> sequence_;
};

/// Per-axis lattice cutoff D and stabilization margin w. Unset fields use the defaults.
struct TruncationWindow {
  std::optional<std::int64_t> degree;
  std::optional<std::int64_t> margin;
  int retries = 3;
};

struct SummandHomology {
  std::string label;
  std::uint64_t multiplicity = 1;
  std::vector<std::uint64_t> lengths;  ///< lengths[i] = l(H^{-i}) of one copy
  bool certified = false;              ///< true when the window is a proven support bound
  Point window_hi;
};

struct KoszulHomology {
  std::vector<std::uint64_t> lengths;  ///< lengths[i] = l(H^{-i}(E (x) K(x))), i = 0..nu
  std::vector<SummandHomology> summands;
  bool certified = true;

  /// sum_i (-1)^i l(H^{-i})
  std::int64_t euler_characteristic() const;
};

/// Homology lengths of E (x) K(x), degree strand by degree strand.
KoszulHomology koszul_homology_lengths(const GradedModule& module, const KoszulComplex& koszul,
                                       const TruncationWindow& window = {});

/// Homology dimensions of one copy of a summand in the strand of lattice degree z.
std::vector<std::size_t> koszul_strand(const RingSpec& ring, const Summand& s, const KoszulComplex& koszul,
                                       const Point& z);

struct BoundConstants {
  int N = 0;
  std::uint64_t B = 0;
  std::vector<std::uint64_t> lengths;
};

BoundConstants bound_constants(const GradedModule& generator, const KoszulComplex& koszul,
                               const TruncationWindow& window = {});

struct BettiColumn {
  std::uint64_t beta = 0;
  std::vector<GeneratorDegree> degrees;
  bool stabilized = true;
};

struct BettiTable {
  std::vector<BettiColumn> columns;
  /// d o d = 0 held for every computed pair of consecutive maps.
  bool exact = true;

  std::uint64_t beta(std::size_t i) const { return i < columns.size() ? columns[i].beta : 0; }
  bool stabilized() const;
};

/// Free resolution of one copy of a summand: generator degrees per step and the coefficient
/// matrices of F_i -> F_{i-1} (rows: generators of F_{i-1}).
struct SummandResolution {
  std::vector<std::vector<Point>> degrees;
  std::vector<linalg::Matrix<ModP>> maps;  ///< maps[i] : F_{i+1} -> F_i
  std::vector<bool> stabilized;
  bool exact = true;
};

SummandResolution resolve_summand(const RingSpec& ring, const Summand& s, int steps,
                                  const TruncationWindow& window = {});

/// Betti numbers beta_0..beta_steps, summand by summand, summands of equal shape resolved once.
BettiTable minimal_resolution(const GradedModule& module, int steps, const TruncationWindow& window = {},
                              unsigned workers = 1);

/// Conductor monomial t^c (t for k[[t]]) killing high Ext over a one-dimensional numerical ring.
Point annihilator_element(const RingSpec& ring);

}  // namespace frobent
