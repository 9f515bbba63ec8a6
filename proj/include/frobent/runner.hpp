#pragma once

// Experiment configuration, the end-to-end runner and its CSV/JSON outputs.

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "frobent/entropy.hpp"
#include "frobent/field.hpp"
#include "frobent/grmod.hpp"
#include "frobent/grring.hpp"
#include "frobent/homcalc.hpp"
#include "frobent/monoid.hpp"

namespace frobent {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  FieldSpec field = FieldSpec::prime(2);
  MonoidSpec monoid = MonoidSpec::numerical({2, 3});
  EndomorphismKind endomorphism = EndomorphismKind::Frobenius;
  std::int64_t scale = 2;  ///< m for the scaling endomorphism
  int e_max = 8;
  std::vector<double> t_grid{-1.0, -0.5, 0.0, 0.5, 1.0};
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string output = "out";
  TruncationWindow window;
  double rate_tolerance = 0.1;
  double ratio_bound = 10.0;

  RingSpec ring() const { return {field, monoid}; }
  EndomorphismSpec phi() const;
  /// Every setting that affects results, one `section.key=value` per line (no workers/output).
  std::string canonical() const;
};

/// INI sections [field], [monoid], [endomorphism], [run], [window], [tolerance].
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// `prime:2`, `finite:2:3`, `rational:2:1`.
FieldSpec parse_field(const std::string& text);
/// `numerical:2,3`, `free:2`, `product:2,3:1`.
MonoidSpec parse_monoid(const std::string& text);
/// `frobenius` or `scale:m`.
EndomorphismSpec parse_endomorphism(const RingSpec& ring, const std::string& text);
/// Points `a,b;c,d` (';' between points, ',' between coordinates).
std::vector<Point> parse_points(const std::string& text, std::size_t dim);
/// `R`, `k`, `m`, `Rx`, `ideal:<points>`, `quotient:<points>/<points>`.
GradedModule parse_module(const RingSpec& ring, const std::string& text);

struct RunResult {
  std::string report;  ///< JSON
  std::string csv;
  std::vector<std::string> warnings;
  Verdict verdict = Verdict::Inconclusive;
};

RunResult run(const ExperimentConfig& config);

/// Writes report.json and bounds.csv into config.output.
void write_outputs(const ExperimentConfig& config, const RunResult& result);

/// Hex SHA-256 of a string.
std::string sha256_hex(const std::string& data);

/// Process exit code for an exception escaping a command: 2 config, 3 window, 4 caps, 1 other.
int exit_code_for(const std::exception& error);

}  // namespace frobent
