#pragma once

// Gamma-graded modules over k[[Gamma]], the pushforward phi^e_*, lengths and generator counts.
//
// A GradedModule is a finite direct sum of summands. A summand is one of
//   - monomial:  I / (I cap J) for Gamma-closed exponent sets I, J (every graded piece is 0 or k),
//   - presented: coker of homogeneous relations on free generators, coefficients in F_p,
//   - residue:   the residue-class view {w : u*w + r} of another summand (pushforward of a
//                non-monomial summand).
// Each summand carries a rational degree shift and a multiplicity (number of identical copies,
// which is where [phi_* k : k]^e enters). Integer lattice coordinates are used throughout; the
// true degree of lattice point z is z + shift.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frobent/grring.hpp"
#include "frobent/linalg.hpp"
#include "frobent/monoid.hpp"

namespace frobent {

/// Componentwise rational shift numerator / denominator.
struct DegreeShift {
  Point numerator;
  std::int64_t denominator = 1;

  static DegreeShift zero(std::size_t dim) { return {Point(dim, 0), 1}; }
  std::string to_string() const;
  friend bool operator==(const DegreeShift&, const DegreeShift&) = default;
};

struct RelationTerm {
  std::size_t generator = 0;
  std::uint32_t coefficient = 1;
};

/// One homogeneous relation: sum_i c_i t^{degree - deg(g_i)} g_i.
struct Relation {
  Point degree;
  std::vector<RelationTerm> terms;
};

struct MonomialData {
  ExponentSet generators;  ///< I
  ExponentSet relations;   ///< J; lattice points of I inside closure(J) are zero
};

struct PresentedData {
  std::vector<Point> generator_degrees;
  std::vector<Relation> relations;
};

struct Summand;

struct ResidueData {
  std::shared_ptr<const Summand> base;
  std::int64_t modulus = 1;
  Point residue;
};

struct Summand {
  std::variant<MonomialData, PresentedData, ResidueData> data;
  DegreeShift shift;
  std::uint64_t multiplicity = 1;
  std::string label;

  bool is_monomial() const { return std::holds_alternative<MonomialData>(data); }
};

class GradedModule {
 public:
  GradedModule(RingSpec ring, std::vector<Summand> summands);

  static GradedModule monomial(const RingSpec& ring, ExponentSet generators, ExponentSet relations = {},
                               std::uint64_t multiplicity = 1, std::string label = "M");
  static GradedModule presented(const RingSpec& ring, std::vector<Point> generator_degrees,
                                std::vector<Relation> relations, std::string label = "M");

  static GradedModule ring(const RingSpec& ring);
  static GradedModule residue_field(const RingSpec& ring);
  static GradedModule maximal_ideal(const RingSpec& ring);
  /// R / I.
  static GradedModule quotient(const RingSpec& ring, const ExponentSet& ideal, std::string label = "R/I");
  /// R / xR for the monomial x = t^degree.
  static GradedModule principal_quotient(const RingSpec& ring, const Point& degree);
  static GradedModule free(const RingSpec& ring, const std::vector<Point>& degrees);

  const RingSpec& ring_spec() const { return ring_; }
  const std::vector<Summand>& summands() const { return summands_; }
  GradedModule direct_sum(const GradedModule& other) const;

 private:
  RingSpec ring_;
  std::vector<Summand> summands_;
};

// ---- degreewise access (shared with the homological engine) --------------------------------

/// Dimension over k of one copy of the summand at lattice degree z.
std::size_t piece_dim(const RingSpec& ring, const Summand& s, const Point& z);

/// Matrix of multiplication by t^step from the piece at z to the piece at z + step, over F_p.
linalg::Matrix<ModP> piece_action(const RingSpec& ring, const Summand& s, const Point& z, const Point& step);

/// Componentwise lower bound of the lattice support.
Point support_lower_bound(const RingSpec& ring, const Summand& s);

/// Every minimal generator of the summand lies in one of these lattice degrees.
std::vector<Point> generator_candidates(const RingSpec& ring, const Summand& s);

/// Box [lo, hi] containing the whole lattice support; nullopt only when infinite length is proven.
/// ResourceError when a presented summand's support cannot be bounded.
std::optional<std::pair<Point, Point>> support_box(const RingSpec& ring, const Summand& s);

// ---- operations ------------------------------------------------------------------------------

/// phi^e_*(M): degrees divided by u^e, summands split by residue class, multiplicity times
/// residue_degree^e.
GradedModule pushforward(const GradedModule& module, const EndomorphismSpec& phi, int e);

/// Total length (with multiplicities); infinite when some summand has infinite support.
Count length(const GradedModule& module);
/// Counts every copy of the summand.
Count summand_length(const RingSpec& ring, const Summand& s);

struct GeneratorDegree {
  Point lattice;
  DegreeShift shift;
  std::uint64_t copies = 1;
  std::size_t summand = 0;
};

struct GeneratorCount {
  std::uint64_t count = 0;
  std::vector<GeneratorDegree> degrees;
};

/// mu_R(M) = dim_k M / mM with the degree of each generator.
GeneratorCount minimal_generator_count(const GradedModule& module);
/// Minimal generators of one copy of a summand (lattice degree, count there).
std::vector<std::pair<Point, std::uint64_t>> summand_generators(const RingSpec& ring, const Summand& s);

struct TowerStep {
  int k = 0;
  Count length_base;      ///< l(R/xR)
  Count length_previous;  ///< l(R/x^{k-1}R)
  Count length_current;   ///< l(R/x^k R)
  bool lengths_add = false;
  bool hilbert_add = false;  ///< Hilbert functions add degreewise on the checked box
};

struct TowerCertificate {
  Point x;
  int n = 1;
  std::vector<TowerStep> steps;
  bool valid = false;
};

/// Verified filtration R/x^n R in (R/xR)^{*n}: 0 -> R/xR -> R/x^k R -> R/x^{k-1} R -> 0.
TowerCertificate tower_certificate(const RingSpec& ring, const Point& x, int n, std::uint32_t coefficient = 1);

}  // namespace frobent
