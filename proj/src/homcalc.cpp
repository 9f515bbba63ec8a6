#include "frobent/homcalc.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

#include "box.hpp"
#include "frobent/error.hpp"

namespace frobent {

namespace {

using detail::add;
using detail::box_volume;
using detail::for_each_in_box;
using detail::kBoxCap;
using detail::subtract;

using Mat = linalg::Matrix<ModP>;

Mat zeros(linalg::Index rows, linalg::Index cols, std::uint32_t p) { return Mat::Constant(rows, cols, ModP(0, p)); }

std::int64_t max_generator(const MonoidSpec& monoid, std::size_t j) { return monoid.factor(j).max_generator(); }

// Largest j-th coordinate over the generators of I and J of a monomial summand.
Point monomial_top(const MonomialData& m, std::size_t d) {
  Point top(d, INT64_MIN);
  for (const auto* set : {&m.generators, &m.relations}) {
    for (const auto& g : set->generators()) {
      for (std::size_t j = 0; j < d; ++j) top[j] = std::max(top[j], g[j]);
    }
  }
  return top;
}

Point candidate_top(const RingSpec& ring, const Summand& s) {
  const std::size_t d = ring.dim();
  Point top = support_lower_bound(ring, s);
  for (const auto& g : generator_candidates(ring, s)) {
    for (std::size_t j = 0; j < d; ++j) top[j] = std::max(top[j], g[j]);
  }
  return top;
}

void check_box(const Point& lo, const Point& hi) {
  if (box_volume(lo, hi) > kBoxCap) throw ResourceError("truncation window exceeds the lattice-point cap");
}

// Homology of one summand in all strands of [lo, hi]; records whether any strand with a
// coordinate above `band` is nonzero.
std::vector<std::uint64_t> strand_sum(const RingSpec& ring, const Summand& s, const KoszulComplex& koszul,
                                      const Point& lo, const Point& hi, const Point& band, bool& band_active) {
  std::vector<std::uint64_t> total(koszul.length() + 1, 0);
  band_active = false;
  check_box(lo, hi);
  for_each_in_box(lo, hi, [&](const Point& z) {
    const auto h = koszul_strand(ring, s, koszul, z);
    bool nonzero = false;
    for (std::size_t i = 0; i < h.size(); ++i) {
      total[i] += h[i];
      nonzero = nonzero || h[i] > 0;
    }
    if (!nonzero) return;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (z[j] > band[j]) band_active = true;
    }
  });
  return total;
}

}  // namespace

KoszulComplex::KoszulComplex(const RingSpec& ring, std::vector<Point> sequence) : sequence_(std::move(sequence)) {
  const Point zero(ring.dim(), 0);
  for (const auto& x : sequence_) {
    if (!contains(ring.monoid(), x) || x == zero) {
      throw ConfigError("Koszul sequence entry t^" + to_string(x) + " is not in the maximal ideal");
    }
  }
  if (ring.dim() > 0 && !complement_count(ring.monoid(), ExponentSet(ring.monoid(), sequence_)).finite) {
    throw ConfigError("Koszul sequence does not generate an m-primary ideal");
  }
  if (sequence_.size() > 16) throw ResourceError("Koszul sequences longer than 16 are not supported");
}

KoszulComplex KoszulComplex::on_maximal_ideal(const RingSpec& ring) {
  return {ring, ring.monoid().minimal_generators()};
}

std::int64_t KoszulHomology::euler_characteristic() const {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(lengths[i]);
  }
  return chi;
}

std::vector<std::size_t> koszul_strand(const RingSpec& ring, const Summand& s, const KoszulComplex& koszul,
                                       const Point& z) {
  const std::size_t nu = koszul.length();
  const std::uint32_t p = ring.characteristic();
  const std::size_t subsets = std::size_t{1} << nu;
  std::vector<Point> degree(subsets);
  std::vector<std::size_t> dim(subsets);
  std::vector<std::vector<std::size_t>> by_size(nu + 1);
  std::vector<linalg::Index> offset(subsets, 0);
  std::vector<std::size_t> chain(nu + 1, 0);
  bool any = false;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    Point deg = z;
    std::size_t size = 0;
    for (std::size_t i = 0; i < nu; ++i) {
      if ((mask >> i) & 1U) {
        ++size;
        for (std::size_t j = 0; j < deg.size(); ++j) deg[j] -= koszul.sequence()[i][j];
      }
    }
    dim[mask] = piece_dim(ring, s, deg);
    any = any || dim[mask] > 0;
    degree[mask] = std::move(deg);
    offset[mask] = static_cast<linalg::Index>(chain[size]);
    chain[size] += dim[mask];
    by_size[size].push_back(mask);
  }
  std::vector<std::size_t> homology(nu + 1, 0);
  if (!any) return homology;

  // rank of d_i : C_i -> C_{i-1}; e_S (x) m maps to sum_k (-1)^k x_{s_k} m e_{S \ s_k}.
  std::vector<std::size_t> rank(nu + 2, 0);
  for (std::size_t i = 1; i <= nu; ++i) {
    if (chain[i] == 0 || chain[i - 1] == 0) continue;
    Mat d = zeros(static_cast<linalg::Index>(chain[i - 1]), static_cast<linalg::Index>(chain[i]), p);
    for (std::size_t mask : by_size[i]) {
      if (dim[mask] == 0) continue;
      std::size_t k = 0;
      for (std::size_t b = 0; b < nu; ++b) {
        if (!((mask >> b) & 1U)) continue;
        const std::size_t face = mask & ~(std::size_t{1} << b);
        if (dim[face] > 0) {
          Mat block = piece_action(ring, s, degree[mask], koszul.sequence()[b]);
          if (k % 2 == 1) block = -block;
          d.block(offset[face], offset[mask], block.rows(), block.cols()) = block;
        }
        ++k;
      }
    }
    rank[i] = static_cast<std::size_t>(linalg::rank(d));
  }
  for (std::size_t i = 0; i <= nu; ++i) homology[i] = chain[i] - rank[i] - rank[i + 1];
  return homology;
}

KoszulHomology koszul_homology_lengths(const GradedModule& module, const KoszulComplex& koszul,
                                       const TruncationWindow& window) {
  const RingSpec& ring = module.ring_spec();
  const std::size_t d = ring.dim();
  const std::size_t nu = koszul.length();
  KoszulHomology out;
  out.lengths.assign(nu + 1, 0);
  // sum over the sequence of each coordinate
  Point spread(d, 0);
  for (const auto& x : koszul.sequence()) {
    for (std::size_t j = 0; j < d; ++j) spread[j] += x[j];
  }
  for (const auto& s : module.summands()) {
    SummandHomology sh{s.label, s.multiplicity, {}, false, {}};
    const Point lo = support_lower_bound(ring, s);
    Point margin(d);
    for (std::size_t j = 0; j < d; ++j) {
      margin[j] = std::max(window.margin.value_or(ring.monoid().factor(j).conductor() + max_generator(ring.monoid(), j)),
                           max_generator(ring.monoid(), j));
    }
    const auto* mono = std::get_if<MonomialData>(&s.data);
    if (mono != nullptr && mono->generators.empty()) {
      sh.lengths.assign(nu + 1, 0);
      sh.certified = true;
      out.summands.push_back(std::move(sh));
      continue;
    }
    if (mono != nullptr) {
      // Past G_j + c_j + sum_i x_ij, multiplication by the pure j-th power in the sequence is an
      // isomorphism on every term of the strand, so the strand is exact.
      const Point top = monomial_top(*mono, d);
      Point hi(d);
      for (std::size_t j = 0; j < d; ++j) hi[j] = top[j] + ring.monoid().factor(j).conductor() + spread[j] - 1;
      // A user cutoff below the proven bound is checked against the strands it would drop.
      Point cutoff = hi;
      bool truncated = false;
      if (window.degree) {
        for (std::size_t j = 0; j < d; ++j) {
          if (*window.degree < hi[j]) {
            cutoff[j] = *window.degree;
            truncated = true;
          }
        }
      }
      bool active = false;
      sh.lengths = strand_sum(ring, s, koszul, lo, hi, cutoff, active);
      if (truncated && active) {
        throw WindowError("Koszul window " + std::to_string(*window.degree) + " is too small for summand " + s.label +
                          ": homology lies beyond the cutoff");
      }
      sh.certified = true;
      sh.window_hi = hi;
    } else {
      Point top = candidate_top(ring, s);
      Point hi(d);
      for (std::size_t j = 0; j < d; ++j) {
        const auto& f = ring.monoid().factor(j);
        hi[j] = window.degree.value_or(top[j] + 2 * f.conductor() + max_generator(ring.monoid(), j) + spread[j]);
      }
      bool done = false;
      for (int attempt = 0; attempt <= window.retries && !done; ++attempt) {
        Point band(d);
        for (std::size_t j = 0; j < d; ++j) band[j] = hi[j] - margin[j];
        bool active = false;
        sh.lengths = strand_sum(ring, s, koszul, lo, hi, band, active);
        sh.window_hi = hi;
        if (!active) {
          done = true;
        } else if (window.degree) {
          break;
        } else {
          for (std::size_t j = 0; j < d; ++j) hi[j] = lo[j] + 2 * (hi[j] - lo[j]) + 1;
        }
      }
      if (!done) {
        throw WindowError("Koszul homology of summand " + s.label + " still reaches the window cutoff " +
                          to_string(hi) + "; enlarge [window] degree");
      }
    }
    for (std::size_t i = 0; i <= nu; ++i) out.lengths[i] += sh.lengths[i] * s.multiplicity;
    out.certified = out.certified && sh.certified;
    out.summands.push_back(std::move(sh));
  }
  return out;
}

BoundConstants bound_constants(const GradedModule& generator, const KoszulComplex& koszul,
                               const TruncationWindow& window) {
  const KoszulHomology h = koszul_homology_lengths(generator, koszul, window);
  BoundConstants out;
  out.lengths = h.lengths;
  for (std::size_t i = 0; i < h.lengths.size(); ++i) {
    if (h.lengths[i] > 0) out.N = static_cast<int>(i);
  }
  for (std::size_t i = 0; i <= static_cast<std::size_t>(out.N); ++i) out.B = std::max(out.B, h.lengths[i]);
  if (out.B == 0) throw DomainError("the generator has no Koszul homology; it is the zero object");
  return out;
}

bool BettiTable::stabilized() const {
  return std::all_of(columns.begin(), columns.end(), [](const BettiColumn& c) { return c.stabilized; });
}

namespace {

// Indices of generators (with degrees `degs`) whose free summand is nonzero in degree z.
std::vector<std::size_t> alive_at(const MonoidSpec& monoid, const std::vector<Point>& degs, const Point& z) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < degs.size(); ++b) {
    if (contains(monoid, subtract(z, degs[b]))) out.push_back(b);
  }
  return out;
}

// Per-axis top of the degrees defining a summand (generators and relations). First syzygies of
// F_0 -> M sit over these, not only over the generators of F_0.
Point data_top(const Summand& s, std::size_t d) {
  Point top(d, INT64_MIN);
  auto take = [&](const Point& z) {
    for (std::size_t j = 0; j < d; ++j) top[j] = std::max(top[j], z[j]);
  };
  if (const auto* m = std::get_if<MonomialData>(&s.data)) {
    for (const auto& g : m->generators.generators()) take(g);
    for (const auto& g : m->relations.generators()) take(g);
  } else if (const auto* pr = std::get_if<PresentedData>(&s.data)) {
    for (const auto& g : pr->generator_degrees) take(g);
    for (const auto& r : pr->relations) take(r.degree);
  } else {
    const auto& v = std::get<ResidueData>(s.data);
    const Point base = data_top(*v.base, d);
    for (std::size_t j = 0; j < d; ++j) {
      if (base[j] != INT64_MIN) top[j] = detail::ceil_div(base[j] - v.residue[j], v.modulus) + 1;
    }
  }
  return top;
}

struct ResolutionStep {
  std::vector<Point> degrees;
  Mat map;
  bool stabilized = true;
};

}  // namespace

SummandResolution resolve_summand(const RingSpec& ring, const Summand& s, int steps, const TruncationWindow& window) {
  if (steps < 0) throw ConfigError("resolution needs steps >= 0");
  const MonoidSpec& monoid = ring.monoid();
  const std::uint32_t p = ring.characteristic();
  const std::size_t d = ring.dim();
  const std::vector<Point> ring_gens = monoid.minimal_generators();
  const ModP one(1, p);

  // F_0 with the chosen generator elements of M.
  SummandResolution res;
  std::vector<Point> deg0;
  std::vector<linalg::Vector<ModP>> elements;
  for (const auto& z : generator_candidates(ring, s)) {
    const auto dim = static_cast<linalg::Index>(piece_dim(ring, s, z));
    if (dim == 0) continue;
    std::vector<Mat> blocks;
    linalg::Index cols = 0;
    for (const auto& a : ring_gens) {
      const Point from = subtract(z, a);
      if (piece_dim(ring, s, from) == 0) continue;
      blocks.push_back(piece_action(ring, s, from, a));
      cols += blocks.back().cols();
    }
    Mat image = zeros(dim, cols, p);
    linalg::Index at = 0;
    for (const auto& b : blocks) {
      image.middleCols(at, b.cols()) = b;
      at += b.cols();
    }
    Mat unit = zeros(dim, dim, p);
    for (linalg::Index i = 0; i < dim; ++i) unit(i, i) = one;
    for (linalg::Index c : linalg::extend_basis(image, unit)) {
      deg0.push_back(z);
      elements.emplace_back(unit.col(c));
    }
  }
  res.degrees.push_back(deg0);
  res.stabilized.push_back(true);

  Point margin(d);
  for (std::size_t j = 0; j < d; ++j) {
    margin[j] = std::max(window.margin.value_or(monoid.factor(j).conductor() + max_generator(monoid, j)),
                         max_generator(monoid, j));
  }

  for (int i = 0; i < steps; ++i) {
    const std::vector<Point>& F = res.degrees[static_cast<std::size_t>(i)];
    if (F.empty()) {
      res.degrees.emplace_back();
      res.maps.push_back(zeros(0, 0, p));
      res.stabilized.push_back(true);
      continue;
    }
    // Matrix of F_i -> (M or F_{i-1}) in degree z, columns indexed by alive generators of F_i.
    auto target_matrix = [&](const Point& z, const std::vector<std::size_t>& alive) -> Mat {
      if (i == 0) {
        const auto rows = static_cast<linalg::Index>(piece_dim(ring, s, z));
        Mat a = zeros(rows, static_cast<linalg::Index>(alive.size()), p);
        for (std::size_t c = 0; c < alive.size(); ++c) {
          const std::size_t b = alive[c];
          if (rows > 0) a.col(static_cast<linalg::Index>(c)) = piece_action(ring, s, F[b], subtract(z, F[b])) * elements[b];
        }
        return a;
      }
      const auto& prev = res.degrees[static_cast<std::size_t>(i - 1)];
      const Mat& map = res.maps[static_cast<std::size_t>(i - 1)];
      const auto rows = alive_at(monoid, prev, z);
      Mat a = zeros(static_cast<linalg::Index>(rows.size()), static_cast<linalg::Index>(alive.size()), p);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < alive.size(); ++c) {
          a(static_cast<linalg::Index>(r), static_cast<linalg::Index>(c)) =
              map(static_cast<linalg::Index>(rows[r]), static_cast<linalg::Index>(alive[c]));
        }
      }
      return a;
    };

    Point lo(d, INT64_MAX), top = i == 0 ? data_top(s, d) : Point(d, INT64_MIN);
    for (const auto& g : F) {
      for (std::size_t j = 0; j < d; ++j) {
        lo[j] = std::min(lo[j], g[j]);
        top[j] = std::max(top[j], g[j]);
      }
    }
    Point hi(d);
    bool short_window = false;
    for (std::size_t j = 0; j < d; ++j) {
      const std::int64_t c = monoid.factor(j).conductor();
      hi[j] = top[j] + 2 * c + max_generator(monoid, j) + margin[j];
      if (window.degree) {
        // A cutoff below the default bound is never trusted.
        if (*window.degree < hi[j]) short_window = true;
        hi[j] = *window.degree;
      }
    }

    ResolutionStep step;
    for (int attempt = 0; attempt <= window.retries; ++attempt) {
      check_box(lo, hi);
      std::map<Point, std::pair<std::vector<std::size_t>, Mat>> kernels;
      auto kernel_at = [&](const Point& z) -> const std::pair<std::vector<std::size_t>, Mat>& {
        auto it = kernels.find(z);
        if (it != kernels.end()) return it->second;
        std::vector<std::size_t> alive = alive_at(monoid, F, z);
        Mat k;
        if (alive.empty()) {
          k = zeros(0, 0, p);
        } else {
          const Mat a = target_matrix(z, alive);
          if (a.rows() == 0) {
            k = zeros(static_cast<linalg::Index>(alive.size()), static_cast<linalg::Index>(alive.size()), p);
            for (linalg::Index r = 0; r < k.rows(); ++r) k(r, r) = one;
          } else {
            k = linalg::kernel(a);
          }
        }
        return kernels.emplace(z, std::make_pair(std::move(alive), std::move(k))).first->second;
      };

      step = ResolutionStep{};
      std::vector<linalg::Vector<ModP>> columns;
      for_each_in_box(lo, hi, [&](const Point& z) {
        const auto& [alive, ker] = kernel_at(z);
        if (ker.cols() == 0) return;
        // m K in degree z, embedded into the alive coordinates of z.
        std::vector<Mat> parts;
        linalg::Index cols = 0;
        for (const auto& a : ring_gens) {
          const Point from = subtract(z, a);
          const auto& [alive_from, ker_from] = kernel_at(from);
          if (ker_from.cols() == 0) continue;
          Mat embedded = zeros(static_cast<linalg::Index>(alive.size()), ker_from.cols(), p);
          for (std::size_t r = 0; r < alive_from.size(); ++r) {
            const auto pos = std::lower_bound(alive.begin(), alive.end(), alive_from[r]) - alive.begin();
            embedded.row(static_cast<linalg::Index>(pos)) = ker_from.row(static_cast<linalg::Index>(r));
          }
          parts.push_back(std::move(embedded));
          cols += parts.back().cols();
        }
        Mat image = zeros(static_cast<linalg::Index>(alive.size()), cols, p);
        linalg::Index at = 0;
        for (const auto& part : parts) {
          image.middleCols(at, part.cols()) = part;
          at += part.cols();
        }
        for (linalg::Index c : linalg::extend_basis(image, ker)) {
          linalg::Vector<ModP> full = linalg::Vector<ModP>::Constant(static_cast<linalg::Index>(F.size()), ModP(0, p));
          for (std::size_t r = 0; r < alive.size(); ++r) {
            full(static_cast<linalg::Index>(alive[r])) = ker(static_cast<linalg::Index>(r), c);
          }
          columns.push_back(std::move(full));
          step.degrees.push_back(z);
          for (std::size_t j = 0; j < d; ++j) {
            if (z[j] > hi[j] - margin[j]) step.stabilized = false;
          }
        }
      });
      step.map = zeros(static_cast<linalg::Index>(F.size()), static_cast<linalg::Index>(columns.size()), p);
      for (std::size_t c = 0; c < columns.size(); ++c) step.map.col(static_cast<linalg::Index>(c)) = columns[c];
      if (step.stabilized || window.degree) break;
      for (std::size_t j = 0; j < d; ++j) hi[j] = top[j] + 2 * (hi[j] - top[j]);
    }
    res.degrees.push_back(std::move(step.degrees));
    res.maps.push_back(std::move(step.map));
    res.stabilized.push_back(step.stabilized && !short_window);
  }

  // Exactness audit: epsilon o d_1 = 0 and d_i o d_{i+1} = 0.
  if (!res.maps.empty() && res.maps[0].cols() > 0) {
    const auto& F1 = res.degrees[1];
    for (std::size_t c = 0; c < F1.size() && res.exact; ++c) {
      const auto dim = static_cast<linalg::Index>(piece_dim(ring, s, F1[c]));
      linalg::Vector<ModP> sum = linalg::Vector<ModP>::Constant(dim, ModP(0, p));
      for (std::size_t b = 0; b < deg0.size(); ++b) {
        const ModP coef = res.maps[0](static_cast<linalg::Index>(b), static_cast<linalg::Index>(c));
        if (coef.is_zero()) continue;
        sum += coef * (piece_action(ring, s, deg0[b], subtract(F1[c], deg0[b])) * elements[b]);
      }
      for (linalg::Index r = 0; r < dim; ++r) res.exact = res.exact && sum(r).is_zero();
    }
  }
  for (std::size_t i = 0; i + 1 < res.maps.size(); ++i) {
    if (res.maps[i].cols() == 0 || res.maps[i + 1].cols() == 0) continue;
    const Mat prod = res.maps[i] * res.maps[i + 1];
    for (linalg::Index r = 0; r < prod.rows(); ++r) {
      for (linalg::Index c = 0; c < prod.cols(); ++c) res.exact = res.exact && prod(r, c).is_zero();
    }
  }
  return res;
}

namespace {

using ShapeKey = std::pair<std::vector<Point>, std::vector<Point>>;

// Translation-normalized generator data of a monomial summand.
std::optional<std::pair<ShapeKey, Point>> shape_of(const Summand& s, std::size_t d) {
  const auto* m = std::get_if<MonomialData>(&s.data);
  if (m == nullptr || m->generators.empty()) return std::nullopt;
  Point lo(d, INT64_MAX);
  for (const auto& g : m->generators.generators()) {
    for (std::size_t j = 0; j < d; ++j) lo[j] = std::min(lo[j], g[j]);
  }
  ShapeKey key;
  for (const auto& g : m->generators.generators()) key.first.push_back(subtract(g, lo));
  for (const auto& g : m->relations.generators()) key.second.push_back(subtract(g, lo));
  return std::make_pair(std::move(key), lo);
}

constexpr std::size_t kDegreeRecordLimit = 4096;

}  // namespace

BettiTable minimal_resolution(const GradedModule& module, int steps, const TruncationWindow& window,
                              unsigned workers) {
  if (steps < 0) throw ConfigError("resolution needs steps >= 0");
  const RingSpec& ring = module.ring_spec();
  const std::size_t d = ring.dim();
  const auto& summands = module.summands();

  // Distinct shapes first, so every shape is resolved exactly once.
  std::map<ShapeKey, std::size_t> shape_index;
  std::vector<const Summand*> jobs;
  std::vector<Summand> normalized;
  std::vector<std::pair<std::size_t, Point>> assignment(summands.size());
  normalized.reserve(summands.size());
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (auto shape = shape_of(summands[i], d)) {
      auto [it, inserted] = shape_index.emplace(shape->first, normalized.size());
      if (inserted) {
        const ShapeKey& key = it->first;
        normalized.push_back(Summand{MonomialData{ExponentSet(ring.monoid(), key.first),
                                                  ExponentSet(ring.monoid(), key.second)},
                                     DegreeShift::zero(d), 1, summands[i].label});
      }
      assignment[i] = {it->second, shape->second};
    } else {
      assignment[i] = {SIZE_MAX, Point(d, 0)};
    }
  }
  for (const auto& s : normalized) jobs.push_back(&s);
  std::vector<std::size_t> other;  // summands resolved individually
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (assignment[i].first == SIZE_MAX && !std::holds_alternative<MonomialData>(summands[i].data)) {
      assignment[i].first = jobs.size();
      jobs.push_back(&summands[i]);
      other.push_back(i);
    }
  }

  std::vector<SummandResolution> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  auto work = [&](std::size_t j) {
    try {
      results[j] = resolve_summand(ring, *jobs[j], steps, window);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  workers = std::max(1U, workers);
  if (workers == 1 || jobs.size() < 2) {
    for (std::size_t j = 0; j < jobs.size(); ++j) work(j);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < jobs.size(); j += workers) work(j);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  BettiTable table;
  table.columns.resize(static_cast<std::size_t>(steps) + 1);
  const bool record = summands.size() <= kDegreeRecordLimit;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto [job, offset] = assignment[i];
    if (job == SIZE_MAX) continue;  // zero summand
    const SummandResolution& r = results[job];
    table.exact = table.exact && r.exact;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      auto& col = table.columns[c];
      col.beta += r.degrees[c].size() * summands[i].multiplicity;
      col.stabilized = col.stabilized && r.stabilized[c];
      if (!record) continue;
      for (const auto& z : r.degrees[c]) {
        col.degrees.push_back({add(z, offset), summands[i].shift, summands[i].multiplicity, i});
      }
    }
  }
  return table;
}

Point annihilator_element(const RingSpec& ring) {
  const MonoidSpec& monoid = ring.monoid();
  if (monoid.dim() != 1) {
    throw UnsupportedError("annihilator_element needs a one-dimensional numerical ring, not " + ring.to_string() +
                           "; use the free-resolution path for regular rings");
  }
  const std::int64_t c = monoid.factor(0).conductor();
  return {std::max<std::int64_t>(c, 1)};
}

}  // namespace frobent
