#pragma once

// The monoid ring k[[Gamma]] through its graded combinatorics, with the finite-length
// endomorphisms F (Frobenius) and F_m (monoid scaling).

#include <cstdint>
#include <string>
#include <vector>

#include "frobent/field.hpp"
#include "frobent/monoid.hpp"

namespace frobent {

class RingSpec {
 public:
  RingSpec(FieldSpec field, MonoidSpec monoid) : field_(std::move(field)), monoid_(std::move(monoid)) {}

  const FieldSpec& field() const { return field_; }
  const MonoidSpec& monoid() const { return monoid_; }
  std::uint32_t characteristic() const { return field_.characteristic(); }
  std::size_t dim() const { return monoid_.dim(); }
  std::size_t embedding_dimension() const { return monoid_.embedding_dimension(); }
  bool is_regular() const { return monoid_.is_free(); }

  /// Generators of the maximal ideal as an exponent set.
  ExponentSet maximal_ideal() const { return {monoid_, monoid_.minimal_generators()}; }

  std::string to_string() const;

 private:
  FieldSpec field_;
  MonoidSpec monoid_;
};

enum class EndomorphismKind { Frobenius, Scale };

struct EndomorphismSpec {
  EndomorphismKind kind = EndomorphismKind::Frobenius;
  /// Growth base u: p for Frobenius, m for scaling.
  std::int64_t base = 2;
  /// [phi_* k : k]: p-degree of the field for Frobenius, 1 for scaling.
  std::uint64_t residue_degree = 1;

  static EndomorphismSpec frobenius(const RingSpec& ring);
  static EndomorphismSpec scale(const RingSpec& ring, std::int64_t m);

  std::string to_string() const;
};

/// u^e with overflow detection.
std::int64_t checked_power(std::int64_t base, int e);

/// Exponent set of phi^e(m)R: {u^e * a_i}.
ExponentSet phi_power_ideal(const RingSpec& ring, const EndomorphismSpec& phi, int e);

/// L_0..L_{e_max} with L_e = length(R / phi^e(m)R). Evaluated on `workers` threads; the
/// output order does not depend on the worker count.
std::vector<std::uint64_t> length_sequence(const RingSpec& ring, const EndomorphismSpec& phi, int e_max,
                                           unsigned workers = 1);

/// Maximal number of minimal generators of Gamma_+ summing to `degree` (-1 off Gamma).
std::int64_t order(const RingSpec& ring, const Point& degree);

/// length(R / m^n).
std::uint64_t hilbert_samuel(const RingSpec& ring, std::int64_t n);

struct MultiplicityEstimate {
  double value = 0.0;          ///< d-th difference of the Hilbert-Samuel function on the window
  std::int64_t rounded = 0;
  double residual = 0.0;       ///< max deviation of the differences from `rounded`
  bool stabilized = false;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
};

/// Hilbert-Samuel multiplicity from n in [N/2, N]; inconclusive when the d-th differences
/// have not become constant there.
MultiplicityEstimate multiplicity(const RingSpec& ring, std::int64_t window = 64, double tolerance = 1e-6);

/// Checks m^{nu u^e} subset phi^e(m)R subset m^{u^e}.
bool sandwich_check(const RingSpec& ring, const EndomorphismSpec& phi, int e);

}  // namespace frobent
