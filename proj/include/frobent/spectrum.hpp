#pragma once

// Coordinate primes of F_p[x_1..x_n] (variables pinned to constants), the minimal-prime graph and
// the constancy of alpha + height.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frobent {

class CoordinatePrime {
 public:
  CoordinatePrime(std::size_t n, std::uint32_t p, std::map<std::size_t, std::uint32_t> assignment,
                  std::string name = "");

  std::size_t ambient() const { return n_; }
  std::uint32_t characteristic() const { return p_; }
  const std::map<std::size_t, std::uint32_t>& assignment() const { return assignment_; }
  const std::string& name() const { return name_; }

  std::size_t height() const { return assignment_.size(); }
  /// log_p [k(P) : k(P)^p] for k(P) = F_p(free variables).
  std::size_t alpha() const { return n_ - assignment_.size(); }

  std::string to_string() const;

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::map<std::size_t, std::uint32_t> assignment_;
  std::string name_;
};

/// P + Q = R: some variable is pinned to different constants.
bool comaximal(const CoordinatePrime& a, const CoordinatePrime& b);

/// P subset Q: the assignment of Q extends that of P.
bool contained(const CoordinatePrime& a, const CoordinatePrime& b);

class PrimeSystem {
 public:
  explicit PrimeSystem(std::vector<CoordinatePrime> primes);

  const std::vector<CoordinatePrime>& primes() const { return primes_; }
  std::size_t ambient() const { return primes_.front().ambient(); }

  /// Text format: `n = 3`, `p = 2`, optional `vars = x,y,z`, then one `prime NAME: x=0, y=1` per line.
  static PrimeSystem parse(std::istream& in);

 private:
  std::vector<CoordinatePrime> primes_;
};

struct DisconnectionCertificate {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  bool validated = false;  ///< every pair across the partition is comaximal
};

struct PrimeGraph {
  std::vector<std::vector<bool>> adjacency;
  std::vector<std::vector<std::size_t>> components;
  bool connected() const { return components.size() == 1; }
  std::optional<DisconnectionCertificate> certificate;
};

PrimeGraph graph_and_connectivity(const PrimeSystem& system);

struct HeightAlphaCheck {
  std::size_t lhs = 0;  ///< alpha_P + ht P
  std::size_t rhs = 0;  ///< alpha_Q + ht Q
  bool additive = false;
  bool kunz = false;    ///< p^{alpha_P} = p^{alpha_Q} * p^{ht Q - ht P}
};

/// Requires P subset Q.
HeightAlphaCheck check_height_alpha(const CoordinatePrime& p, const CoordinatePrime& q);

/// The common value of alpha + height over a connected system.
std::size_t beta_constant(const PrimeSystem& system);

}  // namespace frobent
