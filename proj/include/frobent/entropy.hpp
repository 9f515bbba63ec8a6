#pragma once

// Certified lower/upper bounds on delta_t(G, eG), growth-rate fits and the closed forms they are
// compared against.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobent/grmod.hpp"
#include "frobent/grring.hpp"
#include "frobent/homcalc.hpp"

namespace frobent {

enum class GeneratorKind {
  Ring,             ///< G = R: regular rings (including the field itself when d = 0)
  Canonical,        ///< G = R + R/xR + k with x the conductor element: d = 1, non-regular
  RingPlusResidue,  ///< G = R + k: non-regular d >= 2, lower bounds only
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Ring;
  Point x;  ///< degree of x for the canonical generator
  /// Additional summands (labels only); enlarging the source never invalidates an upper tower.
  std::vector<std::string> extra;

  static GeneratorSpec canonical(const RingSpec& ring);
  GradedModule module(const RingSpec& ring) const;
  std::string to_string() const;
};

/// One summand of an upper bound: coefficient * exp(shift * t).
struct BoundTerm {
  std::string label;
  double coefficient = 0.0;
  int shift = 0;

  double value(double t) const;
};

struct LowerBound {
  std::uint64_t B = 0;
  int N = 0;
  double t = 0.0;
  double D_t = 0.0;  ///< B * exp(N |t|)
  std::uint64_t residue_power = 1;  ///< [phi_* k : k]^e
  std::uint64_t L_e = 0;
  double value = 0.0;
};

struct UpperInputs {
  int e = 0;
  std::uint64_t residue_power = 1;
  std::int64_t tower_factor = 1;         ///< u^e
  std::uint64_t quotient_length = 0;     ///< l(R/xR), canonical generator only
  std::vector<std::uint64_t> betti;      ///< beta_0..beta_{2d}(eR), canonical generator only
};

struct UpperBound {
  std::vector<BoundTerm> terms;
  /// No upper bound is proven for scaling endomorphisms; such bounds are experiments.
  bool experimental = false;

  double value(double t) const;
  /// The same tower with every homological shift moved by n: value(t) * exp(n t).
  UpperBound shifted(int n) const;
};

struct BoundCertificate {
  int e = 0;
  double t = 0.0;
  LowerBound lower;
  std::optional<UpperBound> upper;
  double upper_value = 0.0;
};

/// D_t^{-1} [phi_* k : k]^e L_e with D_t = B e^{N|t|}.
LowerBound lower_bound(const BoundConstants& constants, std::uint64_t residue_power, std::uint64_t L_e, double t);

/// Tower-based upper bound; UnsupportedError for non-regular rings of dimension >= 2.
UpperBound upper_bound(const RingSpec& ring, const EndomorphismSpec& phi, const GeneratorSpec& generator,
                       const UpperInputs& inputs);

/// Everything needed for the bounds at one e: L_e, the Betti numbers of eR and the constants.
UpperInputs upper_inputs(const RingSpec& ring, const EndomorphismSpec& phi, const GeneratorSpec& generator, int e,
                         const TruncationWindow& window = {}, unsigned workers = 1);

/// Convenience: the full certificate at (e, t), computing every ingredient from scratch.
BoundCertificate certify(const RingSpec& ring, const EndomorphismSpec& phi, const GeneratorSpec& generator, int e,
                         double t, const TruncationWindow& window = {});

enum class Growth { O, Omega, Theta, Inconclusive };

std::string to_string(Growth g);

struct GrowthOptions {
  double ratio_bound = 10.0;
  double drift = 0.05;  ///< minimal |slope| of log(a_e / u^e) that counts as drift
};

struct GrowthReport {
  std::string name;
  std::vector<double> values;
  int first_e = 0;
  int tail_start = 0;      ///< first e of the fit window
  double rate = 0.0;       ///< least-squares slope of log a_e against e on the tail
  double target = 0.0;     ///< log u
  Growth growth = Growth::Inconclusive;
  double c_low = 0.0;      ///< witness: a_e >= c_low u^e on the tail (Omega, Theta)
  double c_high = 0.0;     ///< witness: a_e <= c_high u^e on the tail (O, Theta)
  bool submultiplicative = false;
  std::string note;
};

/// Least-squares slope of log(values) against e over the last half of the range.
double fitted_rate(const std::vector<double>& values, int first_e, int* tail_start = nullptr);

/// Tail-ratio classification of a_e against u^e.
GrowthReport growth_classify(const std::vector<double>& values, double u, int first_e = 1,
                             const GrowthOptions& options = {});

struct LocalEntropy {
  std::vector<std::uint64_t> lengths;  ///< L_0..L_{e_max}
  GrowthReport report;                 ///< on e >= 1, classified against u^d
  bool sandwich = true;                ///< containments held for every e in 1..e_max
};

LocalEntropy local_entropy(const RingSpec& ring, const EndomorphismSpec& phi, int e_max, unsigned workers = 1,
                           const GrowthOptions& options = {});

enum class Functor { PushforwardDb, PushforwardDbfl, PullbackDpf, PullbackDpffl };

std::string to_string(Functor f);

struct ClosedForm {
  double value = 0.0;
  bool partial = false;  ///< only a proven lower bound is known (scaling endomorphisms)
};

ClosedForm closed_form(Functor functor, const RingSpec& ring, const EndomorphismSpec& phi);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct EntropyEstimate {
  double t = 0.0;
  double alpha_low = 0.0;
  std::optional<double> alpha_high;
  double closed_form = 0.0;
  double tolerance = 0.1;
  std::size_t points = 0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Fitted rates of lower and upper bounds over e >= 1 against the closed form.
EntropyEstimate entropy_estimate(const std::vector<BoundCertificate>& certificates, double closed,
                                 double tolerance = 0.1);

}  // namespace frobent
