#include "frobent/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "frobent/error.hpp"

namespace frobent {

CoordinatePrime::CoordinatePrime(std::size_t n, std::uint32_t p, std::map<std::size_t, std::uint32_t> assignment,
                                 std::string name)
    : n_(n), p_(p), assignment_(std::move(assignment)), name_(std::move(name)) {
  for (const auto& [var, value] : assignment_) {
    if (var >= n_) throw ConfigError("variable index " + std::to_string(var) + " outside ambient " + std::to_string(n_));
    if (value >= p_) throw ConfigError("constant " + std::to_string(value) + " is not reduced mod " + std::to_string(p_));
  }
}

std::string CoordinatePrime::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [var, value] : assignment_) {
    s += (first ? "" : ", ") + ("x" + std::to_string(var + 1)) + "=" + std::to_string(value);
    first = false;
  }
  return s + "}";
}

namespace {

void same_ambient(const CoordinatePrime& a, const CoordinatePrime& b) {
  if (a.ambient() != b.ambient() || a.characteristic() != b.characteristic()) {
    throw ConfigError("primes " + a.to_string() + " and " + b.to_string() + " live in different ambient rings");
  }
}

}  // namespace

bool comaximal(const CoordinatePrime& a, const CoordinatePrime& b) {
  same_ambient(a, b);
  for (const auto& [var, value] : a.assignment()) {
    const auto it = b.assignment().find(var);
    if (it != b.assignment().end() && it->second != value) return true;
  }
  return false;
}

bool contained(const CoordinatePrime& a, const CoordinatePrime& b) {
  same_ambient(a, b);
  return std::all_of(a.assignment().begin(), a.assignment().end(), [&](const auto& kv) {
    const auto it = b.assignment().find(kv.first);
    return it != b.assignment().end() && it->second == kv.second;
  });
}

PrimeSystem::PrimeSystem(std::vector<CoordinatePrime> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw ConfigError("a prime system needs at least one prime");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    for (std::size_t j = i + 1; j < primes_.size(); ++j) {
      same_ambient(primes_[i], primes_[j]);
      if (primes_[i].assignment() == primes_[j].assignment()) {
        throw ConfigError("prime " + primes_[i].to_string() + " is listed twice");
      }
    }
  }
}

PrimeSystem PrimeSystem::parse(std::istream& in) {
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::vector<std::string> vars;
  std::vector<std::pair<std::string, std::string>> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ConfigError("spectrum file line " + std::to_string(lineno) + ": " + why);
    };
    if (boost::algorithm::starts_with(line, "prime")) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'prime NAME: var=value, ...'");
      std::string name = line.substr(5, colon - 5);
      boost::algorithm::trim(name);
      raw.emplace_back(name, line.substr(colon + 1));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    boost::algorithm::trim(key);
    boost::algorithm::trim(value);
    try {
      if (key == "n") {
        n = std::stoul(value);
      } else if (key == "p") {
        p = static_cast<std::uint32_t>(std::stoul(value));
      } else if (key == "vars") {
        boost::algorithm::split(vars, value, boost::is_any_of(", "), boost::token_compress_on);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      fail("malformed number '" + value + "'");
    }
  }
  if (n == 0 || p < 2) throw ConfigError("spectrum file needs n >= 1 and a prime p");
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw ConfigError("p = " + std::to_string(p) + " is not prime");
  }
  if (vars.empty()) {
    for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
  }
  if (vars.size() != n) throw ConfigError("vars lists " + std::to_string(vars.size()) + " names for n = " + std::to_string(n));

  std::vector<CoordinatePrime> primes;
  for (const auto& [name, body] : raw) {
    std::map<std::size_t, std::uint32_t> assignment;
    std::vector<std::string> parts;
    boost::algorithm::split(parts, body, boost::is_any_of(","));
    for (auto part : parts) {
      boost::algorithm::trim(part);
      if (part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ConfigError("prime " + name + ": expected var=value, got '" + part + "'");
      std::string var = part.substr(0, eq);
      std::string value = part.substr(eq + 1);
      boost::algorithm::trim(var);
      boost::algorithm::trim(value);
      const auto it = std::find(vars.begin(), vars.end(), var);
      if (it == vars.end()) throw ConfigError("prime " + name + ": unknown variable '" + var + "'");
      long long c = 0;
      try {
        c = std::stoll(value);
      } catch (const std::logic_error&) {
        throw ConfigError("prime " + name + ": malformed constant '" + value + "'");
      }
      const auto idx = static_cast<std::size_t>(it - vars.begin());
      const auto reduced = static_cast<std::uint32_t>(((c % p) + p) % p);
      if (!assignment.emplace(idx, reduced).second) throw ConfigError("prime " + name + ": variable pinned twice");
    }
    primes.emplace_back(n, p, std::move(assignment), name);
  }
  return PrimeSystem(std::move(primes));
}

PrimeGraph graph_and_connectivity(const PrimeSystem& system) {
  const auto& primes = system.primes();
  const std::size_t m = primes.size();
  PrimeGraph g;
  g.adjacency.assign(m, std::vector<bool>(m, false));
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!comaximal(primes[i], primes[j])) {
        g.adjacency[i][j] = g.adjacency[j][i] = true;
        parent[find(i)] = find(j);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(i);
  for (auto& [root, members] : groups) g.components.push_back(std::move(members));
  std::sort(g.components.begin(), g.components.end());
  if (g.components.size() > 1) {
    DisconnectionCertificate cert;
    cert.a = g.components.front();
    for (std::size_t c = 1; c < g.components.size(); ++c) {
      cert.b.insert(cert.b.end(), g.components[c].begin(), g.components[c].end());
    }
    std::sort(cert.b.begin(), cert.b.end());
    cert.validated = true;
    for (std::size_t i : cert.a) {
      for (std::size_t j : cert.b) cert.validated = cert.validated && comaximal(primes[i], primes[j]);
    }
    g.certificate = std::move(cert);
  }
  return g;
}

HeightAlphaCheck check_height_alpha(const CoordinatePrime& p, const CoordinatePrime& q) {
  if (!contained(p, q)) throw DomainError("prime " + p.to_string() + " is not contained in " + q.to_string());
  HeightAlphaCheck c;
  c.lhs = p.alpha() + p.height();
  c.rhs = q.alpha() + q.height();
  c.additive = c.lhs == c.rhs;
  // Compare the p-powers as exponents: alpha_P == alpha_Q + (ht Q - ht P).
  c.kunz = p.alpha() == q.alpha() + (q.height() - p.height());
  return c;
}

std::size_t beta_constant(const PrimeSystem& system) {
  const PrimeGraph g = graph_and_connectivity(system);
  if (!g.connected()) {
    throw DomainError("prime system has " + std::to_string(g.components.size()) +
                      " connected components; evaluate beta on each component separately");
  }
  const std::size_t beta = system.primes().front().alpha() + system.primes().front().height();
  for (const auto& prime : system.primes()) {
    if (prime.alpha() + prime.height() != beta) {
      throw Error("alpha + height is not constant: " + prime.to_string() + " gives " +
                  std::to_string(prime.alpha() + prime.height()));
    }
  }
  return beta;
}

}  // namespace frobent
