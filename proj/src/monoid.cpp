#include "frobent/monoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "frobent/error.hpp"

namespace frobent {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Membership table of the semigroup generated by `gens` on [0, upto].
std::vector<bool> reachable(const std::vector<std::int64_t>& gens, std::int64_t upto) {
  std::vector<bool> in(static_cast<std::size_t>(upto + 1), false);
  in[0] = true;
  for (std::int64_t x = 1; x <= upto; ++x) {
    for (std::int64_t a : gens) {
      if (a <= x && in[static_cast<std::size_t>(x - a)]) {
        in[static_cast<std::size_t>(x)] = true;
        break;
      }
    }
  }
  return in;
}

}  // namespace

std::string to_string(const Point& p) {
  if (p.size() == 1) return std::to_string(p[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

NumericalSemigroup::NumericalSemigroup(std::vector<std::int64_t> generators) {
  if (generators.empty()) throw ConfigError("numerical semigroup needs at least one generator");
  for (std::int64_t a : generators) {
    if (a <= 0) throw ConfigError("numerical semigroup generators must be positive");
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::int64_t g = 0;
  for (std::int64_t a : generators) g = std::gcd(g, a);
  if (g != 1) throw ConfigError("numerical semigroup generators must have gcd 1");

  // Drop generators already reachable from smaller ones.
  for (std::int64_t a : generators) {
    if (generators_.empty() || !reachable(generators_, a)[static_cast<std::size_t>(a)]) {
      generators_.push_back(a);
    }
  }

  // The conductor starts the first run of min_generator() consecutive members.
  const std::int64_t amin = generators_.front();
  std::int64_t upto = 2 * amin * generators_.back() + 2;
  std::vector<bool> in = reachable(generators_, upto);
  std::int64_t run = 0;
  std::int64_t start = 0;
  for (std::int64_t x = 0; x <= upto; ++x) {
    if (in[static_cast<std::size_t>(x)]) {
      if (run == 0) start = x;
      if (++run == amin) break;
    } else {
      run = 0;
    }
  }
  conductor_ = start;
  member_.assign(in.begin(), in.begin() + conductor_);
  for (std::int64_t x = 0; x < conductor_; ++x) {
    if (!member_[static_cast<std::size_t>(x)]) gaps_.push_back(x);
  }
}

bool NumericalSemigroup::contains(std::int64_t x) const {
  if (x < 0) return false;
  if (x >= conductor_) return true;
  return member_[static_cast<std::size_t>(x)];
}

std::vector<std::int64_t> NumericalSemigroup::order_table(std::int64_t upto) const {
  std::vector<std::int64_t> ord(static_cast<std::size_t>(std::max<std::int64_t>(upto, 0) + 1), -1);
  ord[0] = 0;
  for (std::int64_t x = 1; x <= upto; ++x) {
    std::int64_t best = -1;
    for (std::int64_t a : generators_) {
      if (a > x) break;
      const std::int64_t o = ord[static_cast<std::size_t>(x - a)];
      if (o >= 0) best = std::max(best, o + 1);
    }
    ord[static_cast<std::size_t>(x)] = best;
  }
  return ord;
}

MonoidSpec MonoidSpec::numerical(std::vector<std::int64_t> generators) {
  MonoidSpec m;
  m.kind_ = MonoidKind::Numerical;
  m.factors_.emplace_back(std::move(generators));
  return m;
}

MonoidSpec MonoidSpec::free(std::size_t rank) {
  MonoidSpec m;
  m.kind_ = MonoidKind::Free;
  m.factors_.assign(rank, NumericalSemigroup({1}));
  return m;
}

MonoidSpec MonoidSpec::product(std::vector<std::int64_t> generators, std::size_t free_rank) {
  MonoidSpec m;
  m.kind_ = MonoidKind::Product;
  m.factors_.emplace_back(std::move(generators));
  for (std::size_t i = 0; i < free_rank; ++i) m.factors_.emplace_back(std::vector<std::int64_t>{1});
  return m;
}

bool MonoidSpec::is_free() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.is_free(); });
}

std::size_t MonoidSpec::embedding_dimension() const {
  std::size_t n = 0;
  for (const auto& f : factors_) n += f.generators().size();
  return n;
}

std::vector<Point> MonoidSpec::minimal_generators() const {
  std::vector<Point> out;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    for (std::int64_t a : factors_[j].generators()) {
      Point p(factors_.size(), 0);
      p[j] = a;
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::string MonoidSpec::to_string() const {
  std::ostringstream os;
  auto numerical_part = [&](const NumericalSemigroup& f) {
    os << "<";
    for (std::size_t i = 0; i < f.generators().size(); ++i) os << (i ? "," : "") << f.generators()[i];
    os << ">";
  };
  switch (kind_) {
    case MonoidKind::Numerical:
      numerical_part(factors_.front());
      break;
    case MonoidKind::Free:
      os << "N^" << factors_.size();
      break;
    case MonoidKind::Product:
      numerical_part(factors_.front());
      os << " x N^" << factors_.size() - 1;
      break;
  }
  return os.str();
}

bool contains(const MonoidSpec& monoid, const Point& degree) {
  if (degree.size() != monoid.dim()) {
    throw ConfigError("degree " + to_string(degree) + " does not match monoid dimension " +
                      std::to_string(monoid.dim()));
  }
  for (std::size_t j = 0; j < degree.size(); ++j) {
    if (!monoid.factor(j).contains(degree[j])) return false;
  }
  return true;
}

namespace {

bool difference_in(const MonoidSpec& monoid, const Point& a, const Point& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!monoid.factor(j).contains(a[j] - b[j])) return false;
  }
  return true;
}

}  // namespace

ExponentSet::ExponentSet(const MonoidSpec& monoid, std::vector<Point> generators) {
  for (const auto& g : generators) {
    if (g.size() != monoid.dim()) {
      throw ConfigError("exponent " + to_string(g) + " does not match monoid dimension " +
                        std::to_string(monoid.dim()));
    }
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < generators.size() && !redundant; ++j) {
      redundant = i != j && difference_in(monoid, generators[i], generators[j]);
    }
    if (!redundant) generators_.push_back(generators[i]);
  }
}

bool in_closure(const MonoidSpec& monoid, const ExponentSet& set, const Point& degree) {
  return std::any_of(set.generators().begin(), set.generators().end(),
                     [&](const Point& g) { return difference_in(monoid, degree, g); });
}

GapData gaps(const MonoidSpec& monoid) {
  if (monoid.kind() != MonoidKind::Numerical) {
    throw UnsupportedError("gaps are defined for numerical monoids only, not " + monoid.to_string());
  }
  const auto& f = monoid.factor(0);
  return {f.gaps(), f.frobenius_number(), f.conductor()};
}

namespace {

// Counts lattice points of closure(I) \ closure(J) one coordinate slice at a time. Slices with the
// same active generators have the same count, so they are memoized; past the largest generator
// coordinate plus the conductor every generator is active and the slice repeats forever.
struct SliceFolder {
  const MonoidSpec& monoid;
  bool track_order = false;
  std::uint64_t work = 0;

  using Gens = std::vector<const Point*>;

  ComplementStats fold(std::size_t axis, const Gens& in, const Gens& out) {
    if (in.empty()) return {Count{true, 0}, -1};
    if (axis == monoid.dim()) {
      if (out.empty()) return {Count{true, 1}, 0};
      return {Count{true, 0}, -1};
    }
    if (out.empty()) return {Count::infinite(), -1};
    const auto& factor = monoid.factor(axis);
    std::int64_t lo = INT64_MAX;
    std::int64_t maxg = INT64_MIN;
    for (const Point* g : in) {
      lo = std::min(lo, (*g)[axis]);
      maxg = std::max(maxg, (*g)[axis]);
    }
    for (const Point* g : out) maxg = std::max(maxg, (*g)[axis]);
    const std::int64_t stable = std::max(maxg + factor.conductor(), lo);
    std::vector<std::int64_t> ord;
    if (track_order) ord = factor.order_table(stable);

    std::map<std::pair<std::vector<bool>, std::vector<bool>>, ComplementStats> memo;
    ComplementStats total{Count{true, 0}, -1};
    std::pair<std::vector<bool>, std::vector<bool>> key{std::vector<bool>(in.size()), std::vector<bool>(out.size())};
    Gens active_in;
    Gens active_out;
    for (std::int64_t s = lo; s <= stable; ++s) {
      if (++work > kComplementWorkCap) {
        throw ResourceError("complement enumeration exceeded the work cap of " +
                            std::to_string(kComplementWorkCap) + " slices");
      }
      active_in.clear();
      active_out.clear();
      for (std::size_t i = 0; i < in.size(); ++i) {
        key.first[i] = factor.contains(s - (*in[i])[axis]);
        if (key.first[i]) active_in.push_back(in[i]);
      }
      if (active_in.empty() && s < stable) continue;
      for (std::size_t i = 0; i < out.size(); ++i) {
        key.second[i] = factor.contains(s - (*out[i])[axis]);
        if (key.second[i]) active_out.push_back(out[i]);
      }
      ComplementStats last;
      const ComplementStats* found = &last;
      if (axis + 1 == monoid.dim()) {
        last = active_out.empty() ? ComplementStats{Count{true, 1}, 0} : ComplementStats{Count{true, 0}, -1};
      } else {
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, fold(axis + 1, active_in, active_out)).first;
        found = &it->second;
      }
      const ComplementStats& sub = *found;
      if (s == stable) {
        if (!sub.count.finite || sub.count.value > 0) return {Count::infinite(), -1};
        break;
      }
      if (!sub.count.finite) return {Count::infinite(), -1};
      total.count.value += sub.count.value;
      if (track_order && sub.max_order >= 0) {
        total.max_order = std::max(total.max_order, ord[static_cast<std::size_t>(s)] + sub.max_order);
      }
    }
    return total;
  }
};

std::vector<const Point*> pointers(const ExponentSet& set) {
  std::vector<const Point*> out;
  for (const auto& g : set.generators()) out.push_back(&g);
  return out;
}

}  // namespace

ComplementStats complement_stats(const MonoidSpec& monoid, const ExponentSet& ideal) {
  const ExponentSet whole(monoid, {Point(monoid.dim(), 0)});
  SliceFolder folder{monoid, true};
  return folder.fold(0, pointers(whole), pointers(ideal));
}

Count complement_count(const MonoidSpec& monoid, const ExponentSet& ideal) {
  return complement_stats(monoid, ideal).count;
}

Count difference_count(const MonoidSpec& monoid, const ExponentSet& set, const ExponentSet& removed) {
  SliceFolder folder{monoid, false};
  return folder.fold(0, pointers(set), pointers(removed)).count;
}

ExponentSet scale(const MonoidSpec& monoid, std::int64_t m, const ExponentSet& set) {
  if (m < 1) throw ConfigError("scale factor must be at least 1");
  std::vector<Point> gens = set.generators();
  for (auto& g : gens) {
    for (auto& x : g) x *= m;
  }
  return {monoid, std::move(gens)};
}

ExponentSet residue_preimage(const MonoidSpec& monoid, const ExponentSet& set, std::int64_t modulus,
                             const Point& residue) {
  if (modulus < 1) throw ConfigError("residue modulus must be at least 1");
  if (set.empty()) return {};
  const std::size_t d = monoid.dim();
  Point lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& f = monoid.factor(j);
    // A minimal w has u*w + r - g in Gamma with its j-th part below c_j + u * min a_j.
    const std::int64_t slack = f.conductor() + modulus * f.min_generator() - 1;
    lo[j] = INT64_MAX;
    hi[j] = INT64_MIN;
    for (const auto& g : set.generators()) {
      lo[j] = std::min(lo[j], ceil_div(g[j] - residue[j], modulus));
      hi[j] = std::max(hi[j], floor_div(g[j] + slack - residue[j], modulus));
    }
  }
  std::uint64_t volume = 1;
  for (std::size_t j = 0; j < d; ++j) {
    volume *= static_cast<std::uint64_t>(std::max<std::int64_t>(hi[j] - lo[j] + 1, 0));
  }
  if (volume > 10'000'000) throw ResourceError("residue preimage box too large");

  std::vector<Point> members;
  Point w = lo;
  Point image(d);
  if (volume == 0) return {};
  while (true) {
    for (std::size_t j = 0; j < d; ++j) image[j] = modulus * w[j] + residue[j];
    if (in_closure(monoid, set, image)) members.push_back(w);
    std::size_t j = 0;
    while (j < d && ++w[j] > hi[j]) {
      w[j] = lo[j];
      ++j;
    }
    if (j == d) break;
  }
  return {monoid, std::move(members)};
}

}  // namespace frobent
