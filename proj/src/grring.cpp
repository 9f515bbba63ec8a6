#include "frobent/grring.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "frobent/error.hpp"

namespace frobent {

std::string RingSpec::to_string() const {
  return field_.to_string() + "[[" + monoid_.to_string() + "]]";
}

EndomorphismSpec EndomorphismSpec::frobenius(const RingSpec& ring) {
  return {EndomorphismKind::Frobenius, ring.characteristic(), p_degree(ring.field())};
}

EndomorphismSpec EndomorphismSpec::scale(const RingSpec& /*ring*/, std::int64_t m) {
  if (m < 1) throw ConfigError("scaling endomorphism needs m >= 1");
  return {EndomorphismKind::Scale, m, 1};
}

std::string EndomorphismSpec::to_string() const {
  return kind == EndomorphismKind::Frobenius ? "F" : "F_" + std::to_string(base);
}

std::int64_t checked_power(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / base / 64) {
      throw ResourceError(std::to_string(base) + "^" + std::to_string(e) + " overflows degree arithmetic");
    }
    r *= base;
  }
  return r;
}

ExponentSet phi_power_ideal(const RingSpec& ring, const EndomorphismSpec& phi, int e) {
  if (e < 0) throw ConfigError("phi_power_ideal needs e >= 0");
  return scale(ring.monoid(), checked_power(phi.base, e), ring.maximal_ideal());
}

std::vector<std::uint64_t> length_sequence(const RingSpec& ring, const EndomorphismSpec& phi, int e_max,
                                           unsigned workers) {
  if (e_max < 0) throw ConfigError("length_sequence needs e_max >= 0");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(e_max + 1), 0);
  std::vector<std::exception_ptr> errors(out.size());
  auto cell = [&](int e) {
    try {
      const Count c = complement_count(ring.monoid(), phi_power_ideal(ring, phi, e));
      if (!c.finite) throw Error("phi^e(m)R is not primary to the maximal ideal");
      out[static_cast<std::size_t>(e)] = c.value;
    } catch (const ResourceError& err) {
      errors[static_cast<std::size_t>(e)] =
          std::make_exception_ptr(ResourceError(std::string(err.what()) + " (at e = " + std::to_string(e) + ")"));
    } catch (...) {
      errors[static_cast<std::size_t>(e)] = std::current_exception();
    }
  };
  workers = std::max(1U, workers);
  if (workers == 1) {
    for (int e = 0; e <= e_max; ++e) cell(e);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int e = static_cast<int>(w); e <= e_max; e += static_cast<int>(workers)) cell(e);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

std::int64_t order(const RingSpec& ring, const Point& degree) {
  std::int64_t total = 0;
  for (std::size_t j = 0; j < ring.dim(); ++j) {
    if (degree[j] < 0) return -1;
    const std::int64_t o = ring.monoid().factor(j).order_table(degree[j]).back();
    if (o < 0) return -1;
    total += o;
  }
  return total;
}

std::uint64_t hilbert_samuel(const RingSpec& ring, std::int64_t n) {
  if (n < 1) throw ConfigError("hilbert_samuel needs n >= 1");
  // hist[o] for the product so far: #{points with total order o}, truncated at n.
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n), 0);
  hist[0] = 1;
  for (const auto& f : ring.monoid().factors()) {
    // every s >= n * a_min + c has order >= n
    const std::int64_t upto = n * f.min_generator() + f.conductor();
    const auto ord = f.order_table(upto);
    std::vector<std::uint64_t> h(static_cast<std::size_t>(n), 0);
    for (std::int64_t o : ord) {
      if (o >= 0 && o < n) ++h[static_cast<std::size_t>(o)];
    }
    std::vector<std::uint64_t> next(static_cast<std::size_t>(n), 0);
    for (std::int64_t a = 0; a < n; ++a) {
      if (hist[static_cast<std::size_t>(a)] == 0) continue;
      for (std::int64_t b = 0; a + b < n; ++b) {
        next[static_cast<std::size_t>(a + b)] += hist[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(b)];
      }
    }
    hist = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto x : hist) total += x;
  return total;
}

MultiplicityEstimate multiplicity(const RingSpec& ring, std::int64_t window, double tolerance) {
  const auto d = static_cast<std::int64_t>(ring.dim());
  MultiplicityEstimate est;
  est.window_lo = std::max<std::int64_t>(window / 2, 1);
  est.window_hi = window;
  if (est.window_hi - est.window_lo < d + 1) throw ConfigError("multiplicity window too small for dimension");
  std::vector<double> values;
  for (std::int64_t n = est.window_lo; n <= est.window_hi; ++n) {
    values.push_back(static_cast<double>(hilbert_samuel(ring, n)));
  }
  // d-th forward differences of a degree-d polynomial equal d! times its leading coefficient.
  for (std::int64_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  double sum = 0;
  for (double v : values) sum += v;
  est.value = sum / static_cast<double>(values.size());
  est.rounded = std::llround(est.value);
  for (double v : values) est.residual = std::max(est.residual, std::abs(v - static_cast<double>(est.rounded)));
  est.stabilized = est.residual <= tolerance && est.rounded > 0;
  return est;
}

bool sandwich_check(const RingSpec& ring, const EndomorphismSpec& phi, int e) {
  if (e < 1) throw ConfigError("sandwich_check needs e >= 1");
  if (ring.dim() == 0) return true;  // m = 0 on both sides
  const std::int64_t q = checked_power(phi.base, e);
  const ExponentSet ideal = phi_power_ideal(ring, phi, e);
  for (const auto& g : ideal.generators()) {
    if (order(ring, g) < q) return false;
  }
  const ComplementStats stats = complement_stats(ring.monoid(), ideal);
  if (!stats.count.finite) return false;
  return stats.max_order < static_cast<std::int64_t>(ring.embedding_dimension()) * q;
}

}  // namespace frobent
