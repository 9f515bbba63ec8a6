#include "frobent/grmod.hpp"

#include <algorithm>
#include <numeric>

#include "box.hpp"
#include "frobent/error.hpp"

namespace frobent {

namespace {

using detail::box_volume;
using detail::ceil_div;
using detail::floor_div;
using detail::for_each_in_box;
using detail::kBoxCap;
using detail::subtract;

ModP unit(const RingSpec& ring) { return {1, ring.characteristic()}; }

// Graded piece of a presented module. `basis` holds the positions in `alive` spanning the quotient
// by the reduced relation image.
struct PresentedPiece {
  std::vector<std::size_t> alive;
  linalg::Matrix<ModP> image;  // reduced row echelon, one row per independent relation image
  std::vector<linalg::Index> pivots;
  std::vector<linalg::Index> basis;

  linalg::Index position(std::size_t generator) const {
    const auto it = std::lower_bound(alive.begin(), alive.end(), generator);
    return static_cast<linalg::Index>(it - alive.begin());
  }

  // Quotient coordinates of a vector over `alive`.
  linalg::Vector<ModP> project(linalg::Vector<ModP> v) const {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const ModP f = v(pivots[r]);
      if (f.is_zero()) continue;
      v -= f * image.row(static_cast<linalg::Index>(r)).transpose();
    }
    linalg::Vector<ModP> out(static_cast<linalg::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) out(static_cast<linalg::Index>(i)) = v(basis[i]);
    return out;
  }
};

PresentedPiece presented_piece(const RingSpec& ring, const PresentedData& data, const Point& z) {
  const MonoidSpec& monoid = ring.monoid();
  const std::uint32_t p = ring.characteristic();
  PresentedPiece piece;
  for (std::size_t i = 0; i < data.generator_degrees.size(); ++i) {
    if (contains(monoid, subtract(z, data.generator_degrees[i]))) piece.alive.push_back(i);
  }
  std::vector<const Relation*> live;
  for (const auto& rel : data.relations) {
    if (contains(monoid, subtract(z, rel.degree))) live.push_back(&rel);
  }
  const auto n = static_cast<linalg::Index>(piece.alive.size());
  linalg::Matrix<ModP> rows = linalg::Matrix<ModP>::Constant(static_cast<linalg::Index>(live.size()), n, ModP(0, p));
  for (std::size_t r = 0; r < live.size(); ++r) {
    for (const auto& term : live[r]->terms) {
      const linalg::Index c = piece.position(term.generator);
      rows(static_cast<linalg::Index>(r), c) += ModP(term.coefficient, p);
    }
  }
  if (rows.rows() > 0 && n > 0) {
    auto e = linalg::echelon(rows);
    piece.pivots = e.pivots;
    piece.image = e.reduced.topRows(static_cast<linalg::Index>(e.pivots.size()));
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : piece.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (linalg::Index c = 0; c < n; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) piece.basis.push_back(c);
  }
  return piece;
}

const MonomialData* as_monomial(const Summand& s) { return std::get_if<MonomialData>(&s.data); }

// Lattice preimage u*z + r of a residue view's degree.
Point lift(const ResidueData& v, const Point& z) {
  Point out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = v.modulus * z[j] + v.residue[j];
  return out;
}

Point scaled(const Point& z, std::int64_t m) {
  Point out(z);
  for (auto& x : out) x *= m;
  return out;
}

// Residue-class box that contains the view's degrees of minimal generators, given the base's.
std::pair<Point, Point> residue_generator_box(const RingSpec& ring, const std::vector<Point>& base,
                                              std::int64_t modulus, const Point& residue) {
  const std::size_t d = ring.dim();
  Point lo(d, INT64_MAX), hi(d, INT64_MIN);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& f = ring.monoid().factor(j);
    const std::int64_t slack = f.conductor() + modulus * f.min_generator() - 1;
    for (const auto& g : base) {
      lo[j] = std::min(lo[j], ceil_div(g[j] - residue[j], modulus));
      hi[j] = std::max(hi[j], floor_div(g[j] + slack - residue[j], modulus));
    }
  }
  return {lo, hi};
}

}  // namespace

std::string DegreeShift::to_string() const {
  std::string s = numerator.size() == 1 ? "" : "(";
  for (std::size_t j = 0; j < numerator.size(); ++j) {
    const std::int64_t g = std::gcd(numerator[j], denominator);
    const std::int64_t num = numerator[j] / g;
    const std::int64_t den = denominator / g;
    s += (j ? "," : "") + std::to_string(num) + (den == 1 ? "" : "/" + std::to_string(den));
  }
  return numerator.size() == 1 ? s : s + ")";
}

GradedModule::GradedModule(RingSpec ring, std::vector<Summand> summands)
    : ring_(std::move(ring)), summands_(std::move(summands)) {
  for (const auto& s : summands_) {
    if (s.shift.numerator.size() != ring_.dim() || s.shift.denominator < 1) {
      throw ConfigError("summand shift does not match the ring dimension");
    }
    if (s.multiplicity == 0) throw ConfigError("summand multiplicity must be positive");
  }
}

GradedModule GradedModule::monomial(const RingSpec& ring, ExponentSet generators, ExponentSet relations,
                                    std::uint64_t multiplicity, std::string label) {
  Summand s{MonomialData{std::move(generators), std::move(relations)}, DegreeShift::zero(ring.dim()), multiplicity,
            std::move(label)};
  return {ring, {std::move(s)}};
}

GradedModule GradedModule::presented(const RingSpec& ring, std::vector<Point> generator_degrees,
                                     std::vector<Relation> relations, std::string label) {
  const std::uint32_t p = ring.characteristic();
  for (const auto& g : generator_degrees) {
    if (g.size() != ring.dim()) throw ConfigError("generator degree " + to_string(g) + " has the wrong dimension");
  }
  for (auto& rel : relations) {
    if (rel.degree.size() != ring.dim()) throw ConfigError("relation degree has the wrong dimension");
    for (auto& term : rel.terms) {
      if (term.generator >= generator_degrees.size()) throw ConfigError("relation names an unknown generator");
      if (!contains(ring.monoid(), subtract(rel.degree, generator_degrees[term.generator]))) {
        throw ConfigError("relation of degree " + to_string(rel.degree) + " is not homogeneous");
      }
      term.coefficient %= p;
    }
  }
  Summand s{PresentedData{std::move(generator_degrees), std::move(relations)}, DegreeShift::zero(ring.dim()), 1,
            std::move(label)};
  return {ring, {std::move(s)}};
}

GradedModule GradedModule::ring(const RingSpec& ring) {
  return monomial(ring, ExponentSet(ring.monoid(), {Point(ring.dim(), 0)}), {}, 1, "R");
}

GradedModule GradedModule::residue_field(const RingSpec& ring) {
  return monomial(ring, ExponentSet(ring.monoid(), {Point(ring.dim(), 0)}), ring.maximal_ideal(), 1, "k");
}

GradedModule GradedModule::maximal_ideal(const RingSpec& ring) {
  return monomial(ring, ring.maximal_ideal(), {}, 1, "m");
}

GradedModule GradedModule::quotient(const RingSpec& ring, const ExponentSet& ideal, std::string label) {
  return monomial(ring, ExponentSet(ring.monoid(), {Point(ring.dim(), 0)}), ideal, 1, std::move(label));
}

GradedModule GradedModule::principal_quotient(const RingSpec& ring, const Point& degree) {
  if (!contains(ring.monoid(), degree)) throw DomainError("t^" + to_string(degree) + " is not an element of R");
  if (std::all_of(degree.begin(), degree.end(), [](std::int64_t x) { return x == 0; })) {
    throw DomainError("x is a unit");
  }
  return quotient(ring, ExponentSet(ring.monoid(), {degree}), "R/xR");
}

GradedModule GradedModule::free(const RingSpec& ring, const std::vector<Point>& degrees) {
  std::vector<Summand> out;
  for (const auto& g : degrees) {
    out.push_back(Summand{MonomialData{ExponentSet(ring.monoid(), {g}), {}}, DegreeShift::zero(ring.dim()), 1,
                          "R(" + to_string(g) + ")"});
  }
  return {ring, std::move(out)};
}

GradedModule GradedModule::direct_sum(const GradedModule& other) const {
  if (!(ring_.monoid() == other.ring_.monoid()) || !(ring_.field() == other.ring_.field())) {
    throw DomainError("direct sum of modules over different rings");
  }
  std::vector<Summand> all = summands_;
  all.insert(all.end(), other.summands_.begin(), other.summands_.end());
  return {ring_, std::move(all)};
}

std::size_t piece_dim(const RingSpec& ring, const Summand& s, const Point& z) {
  if (const auto* m = as_monomial(s)) {
    return in_closure(ring.monoid(), m->generators, z) && !in_closure(ring.monoid(), m->relations, z) ? 1 : 0;
  }
  if (const auto* pr = std::get_if<PresentedData>(&s.data)) return presented_piece(ring, *pr, z).basis.size();
  const auto& v = std::get<ResidueData>(s.data);
  return piece_dim(ring, *v.base, lift(v, z));
}

linalg::Matrix<ModP> piece_action(const RingSpec& ring, const Summand& s, const Point& z, const Point& step) {
  const ModP zero(0, ring.characteristic());
  Point target(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) target[j] = z[j] + step[j];
  if (as_monomial(s) != nullptr) {
    const auto rows = static_cast<linalg::Index>(piece_dim(ring, s, target));
    const auto cols = static_cast<linalg::Index>(piece_dim(ring, s, z));
    linalg::Matrix<ModP> a = linalg::Matrix<ModP>::Constant(rows, cols, zero);
    if (rows == 1 && cols == 1 && contains(ring.monoid(), step)) a(0, 0) = unit(ring);
    return a;
  }
  if (const auto* pr = std::get_if<PresentedData>(&s.data)) {
    const PresentedPiece from = presented_piece(ring, *pr, z);
    const PresentedPiece to = presented_piece(ring, *pr, target);
    linalg::Matrix<ModP> a = linalg::Matrix<ModP>::Constant(static_cast<linalg::Index>(to.basis.size()),
                                                            static_cast<linalg::Index>(from.basis.size()), zero);
    if (!contains(ring.monoid(), step)) return a;
    for (std::size_t c = 0; c < from.basis.size(); ++c) {
      const std::size_t gen = from.alive[static_cast<std::size_t>(from.basis[c])];
      linalg::Vector<ModP> v = linalg::Vector<ModP>::Constant(static_cast<linalg::Index>(to.alive.size()), zero);
      v(to.position(gen)) = unit(ring);
      a.col(static_cast<linalg::Index>(c)) = to.project(v);
    }
    return a;
  }
  const auto& v = std::get<ResidueData>(s.data);
  return piece_action(ring, *v.base, lift(v, z), scaled(step, v.modulus));
}

Point support_lower_bound(const RingSpec& ring, const Summand& s) {
  const std::size_t d = ring.dim();
  auto componentwise_min = [d](const std::vector<Point>& pts) {
    Point lo(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < pts.size(); ++i) lo[j] = i == 0 ? pts[i][j] : std::min(lo[j], pts[i][j]);
    }
    return lo;
  };
  if (const auto* m = as_monomial(s)) return componentwise_min(m->generators.generators());
  if (const auto* pr = std::get_if<PresentedData>(&s.data)) return componentwise_min(pr->generator_degrees);
  const auto& v = std::get<ResidueData>(s.data);
  Point lo = support_lower_bound(ring, *v.base);
  for (std::size_t j = 0; j < d; ++j) lo[j] = ceil_div(lo[j] - v.residue[j], v.modulus);
  return lo;
}

std::vector<Point> generator_candidates(const RingSpec& ring, const Summand& s) {
  if (const auto* m = as_monomial(s)) {
    std::vector<Point> out;
    for (const auto& g : m->generators.generators()) {
      if (!in_closure(ring.monoid(), m->relations, g)) out.push_back(g);
    }
    return out;
  }
  if (const auto* pr = std::get_if<PresentedData>(&s.data)) {
    std::vector<Point> out = pr->generator_degrees;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  const auto& v = std::get<ResidueData>(s.data);
  const std::vector<Point> base = generator_candidates(ring, *v.base);
  if (base.empty()) return {};
  const auto [lo, hi] = residue_generator_box(ring, base, v.modulus, v.residue);
  if (box_volume(lo, hi) > kBoxCap) throw ResourceError("residue generator box too large");
  std::vector<Point> out;
  for_each_in_box(lo, hi, [&](const Point& z) { out.push_back(z); });
  return out;
}

std::optional<std::pair<Point, Point>> support_box(const RingSpec& ring, const Summand& s) {
  const std::size_t d = ring.dim();
  if (const auto* m = as_monomial(s)) {
    if (m->generators.empty()) return std::pair<Point, Point>{Point(d, 0), Point(d, -1)};
    if (!difference_count(ring.monoid(), m->generators, m->relations).finite) return std::nullopt;
    Point lo = support_lower_bound(ring, s);
    Point hi(d, INT64_MIN);
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto* set : {&m->generators, &m->relations}) {
        for (const auto& g : set->generators()) hi[j] = std::max(hi[j], g[j]);
      }
      hi[j] += ring.monoid().factor(j).conductor() - 1;
    }
    return std::pair<Point, Point>{lo, hi};
  }
  if (const auto* pr = std::get_if<PresentedData>(&s.data)) {
    if (pr->generator_degrees.empty()) return std::pair<Point, Point>{Point(d, 0), Point(d, -1)};
    const Point lo = support_lower_bound(ring, s);
    auto weight = [&](const Point& z) {
      std::int64_t w = 0;
      for (std::size_t j = 0; j < d; ++j) w += z[j] - lo[j];
      return w;
    };
    std::int64_t top = 0;
    for (const auto& g : pr->generator_degrees) top = std::max(top, weight(g));
    std::int64_t band = 1;
    for (const auto& f : ring.monoid().factors()) band = std::max(band, f.max_generator());
    // Every element of weight >= L + band is a multiple of one in the band [L, L + band), so an
    // all-zero band bounds the support.
    for (std::int64_t L = top + 1; L <= top + 64 * band; ++L) {
      bool zero = true;
      for (std::int64_t w = L; w < L + band && zero; ++w) {
        Point hi(d);
        for (std::size_t j = 0; j < d; ++j) hi[j] = lo[j] + w;
        if (box_volume(lo, hi) > kBoxCap) {
          throw ResourceError("support of presented summand " + s.label + " exceeds the lattice-point cap");
        }
        for_each_in_box(lo, hi, [&](const Point& z) {
          if (zero && weight(z) == w && piece_dim(ring, s, z) > 0) zero = false;
        });
      }
      if (zero) {
        Point hi(d);
        for (std::size_t j = 0; j < d; ++j) hi[j] = lo[j] + L - 1;
        return std::pair<Point, Point>{lo, hi};
      }
    }
    // No zero band found: the support may be infinite or only large, so the length is unknown.
    throw ResourceError("support of presented summand " + s.label + " not bounded within " +
                        std::to_string(64 * band) + " weights past its generators");
  }
  const auto& v = std::get<ResidueData>(s.data);
  const auto base = support_box(ring, *v.base);
  if (!base) return std::nullopt;
  Point lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = ceil_div(base->first[j] - v.residue[j], v.modulus);
    hi[j] = floor_div(base->second[j] - v.residue[j], v.modulus);
  }
  return std::pair<Point, Point>{lo, hi};
}

GradedModule pushforward(const GradedModule& module, const EndomorphismSpec& phi, int e) {
  if (e < 0) throw ConfigError("pushforward needs e >= 0");
  if (e == 0) return module;
  const RingSpec& ring = module.ring_spec();
  const std::size_t d = ring.dim();
  const std::int64_t q = checked_power(phi.base, e);
  std::uint64_t factor = 1;
  for (int i = 0; i < e; ++i) factor *= phi.residue_degree;

  std::uint64_t classes = 1;
  for (std::size_t j = 0; j < d; ++j) {
    classes *= static_cast<std::uint64_t>(q);
    if (classes * module.summands().size() > kBoxCap) {
      throw ResourceError("pushforward at e = " + std::to_string(e) + " has more than " + std::to_string(kBoxCap) +
                          " residue classes");
    }
  }

  std::vector<Summand> out;
  for (const auto& s : module.summands()) {
    std::shared_ptr<const Summand> base;
    if (!s.is_monomial()) {
      if (const auto* v = std::get_if<ResidueData>(&s.data)) {
        base = v->base;
      } else {
        base = std::make_shared<const Summand>(s);
      }
    }
    Point r(d, 0);
    for (std::uint64_t c = 0; c < classes; ++c) {
      DegreeShift shift{Point(d), s.shift.denominator * q};
      for (std::size_t j = 0; j < d; ++j) shift.numerator[j] = r[j] * s.shift.denominator + s.shift.numerator[j];
      const std::string label = s.label + "[" + to_string(r) + "]";
      if (const auto* m = as_monomial(s)) {
        ExponentSet gens = residue_preimage(ring.monoid(), m->generators, q, r);
        if (!gens.empty()) {
          ExponentSet rels = residue_preimage(ring.monoid(), m->relations, q, r);
          const bool zero = std::all_of(gens.generators().begin(), gens.generators().end(),
                                        [&](const Point& g) { return in_closure(ring.monoid(), rels, g); });
          if (!zero) {
            out.push_back(Summand{MonomialData{std::move(gens), std::move(rels)}, shift, s.multiplicity * factor, label});
          }
        }
      } else {
        ResidueData view{base, q, r};
        if (const auto* v = std::get_if<ResidueData>(&s.data)) {
          view.modulus = v->modulus * q;
          for (std::size_t j = 0; j < d; ++j) view.residue[j] = v->modulus * r[j] + v->residue[j];
        }
        Summand candidate{std::move(view), shift, s.multiplicity * factor, label};
        if (!summand_generators(ring, candidate).empty()) out.push_back(std::move(candidate));
      }
      for (std::size_t j = 0; j < d && ++r[j] == q; ++j) r[j] = 0;
    }
  }
  return {ring, std::move(out)};
}

Count summand_length(const RingSpec& ring, const Summand& s) {
  Count one;
  if (const auto* m = as_monomial(s)) {
    one = difference_count(ring.monoid(), m->generators, m->relations);
  } else {
    const auto box = support_box(ring, s);
    if (!box) return Count::infinite();
    if (box_volume(box->first, box->second) > kBoxCap) throw ResourceError("support box too large for length");
    for_each_in_box(box->first, box->second, [&](const Point& z) { one.value += piece_dim(ring, s, z); });
  }
  if (!one.finite) return one;
  return {true, one.value * s.multiplicity};
}

Count length(const GradedModule& module) {
  Count total;
  for (const auto& s : module.summands()) {
    const Count c = summand_length(module.ring_spec(), s);
    if (!c.finite) return Count::infinite();
    total.value += c.value;
  }
  return total;
}

std::vector<std::pair<Point, std::uint64_t>> summand_generators(const RingSpec& ring, const Summand& s) {
  std::vector<std::pair<Point, std::uint64_t>> out;
  if (s.is_monomial()) {
    for (const auto& g : generator_candidates(ring, s)) out.emplace_back(g, 1);
    return out;
  }
  const auto gens = ring.monoid().minimal_generators();
  for (const auto& z : generator_candidates(ring, s)) {
    const std::size_t dim = piece_dim(ring, s, z);
    if (dim == 0) continue;
    // dim M_z - dim (m M)_z
    std::vector<linalg::Matrix<ModP>> blocks;
    linalg::Index cols = 0;
    for (const auto& a : gens) {
      const Point from = subtract(z, a);
      if (piece_dim(ring, s, from) == 0) continue;
      blocks.push_back(piece_action(ring, s, from, a));
      cols += blocks.back().cols();
    }
    linalg::Matrix<ModP> image(static_cast<linalg::Index>(dim), cols);
    linalg::Index at = 0;
    for (const auto& b : blocks) {
      image.middleCols(at, b.cols()) = b;
      at += b.cols();
    }
    const auto r = static_cast<std::size_t>(linalg::rank(image));
    if (dim > r) out.emplace_back(z, dim - r);
  }
  return out;
}

GeneratorCount minimal_generator_count(const GradedModule& module) {
  GeneratorCount out;
  const auto& summands = module.summands();
  for (std::size_t i = 0; i < summands.size(); ++i) {
    for (auto& [z, n] : summand_generators(module.ring_spec(), summands[i])) {
      out.count += n * summands[i].multiplicity;
      out.degrees.push_back({z, summands[i].shift, n * summands[i].multiplicity, i});
    }
  }
  return out;
}

TowerCertificate tower_certificate(const RingSpec& ring, const Point& x, int n, std::uint32_t coefficient) {
  if (n < 1) throw ConfigError("tower_certificate needs n >= 1");
  if (coefficient % ring.characteristic() == 0) throw DomainError("x = 0 has no tower");
  if (x.size() != ring.dim()) throw ConfigError("x has the wrong dimension");
  if (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; })) throw DomainError("x is a unit");
  if (!contains(ring.monoid(), x)) throw DomainError("t^" + to_string(x) + " is not an element of R");

  const MonoidSpec& monoid = ring.monoid();
  const std::size_t d = ring.dim();
  auto power_ideal = [&](int k) { return ExponentSet(monoid, {scaled(x, k)}); };
  TowerCertificate cert{x, n, {}, true};
  const Count base = complement_count(monoid, power_ideal(1));

  Point lo(d, 0), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& f = monoid.factor(j);
    hi[j] = n * x[j] + f.conductor() + f.max_generator();
  }
  if (box_volume(lo, hi) > kBoxCap) throw ResourceError("tower check box too large");

  Count previous{true, 0};
  for (int k = 1; k <= n; ++k) {
    TowerStep step;
    step.k = k;
    step.length_base = base;
    step.length_previous = previous;
    step.length_current = complement_count(monoid, power_ideal(k));
    if (step.length_current.finite && previous.finite && base.finite) {
      step.lengths_add = step.length_current.value == previous.value + base.value;
    } else {
      step.lengths_add = !step.length_current.finite && !base.finite;
    }
    const ExponentSet cur = power_ideal(k);
    const ExponentSet prev = power_ideal(k - 1);
    const ExponentSet one = power_ideal(1);
    const Point offset = scaled(x, k - 1);
    step.hilbert_add = true;
    for_each_in_box(lo, hi, [&](const Point& z) {
      if (!step.hilbert_add || !contains(monoid, z)) return;
      const int h_cur = in_closure(monoid, cur, z) ? 0 : 1;
      const int h_prev = k == 1 ? 0 : (in_closure(monoid, prev, z) ? 0 : 1);
      const Point w = subtract(z, offset);
      const int h_base = contains(monoid, w) && !in_closure(monoid, one, w) ? 1 : 0;
      if (h_cur != h_prev + h_base) step.hilbert_add = false;
    });
    cert.valid = cert.valid && step.lengths_add && step.hilbert_add;
    previous = step.length_current;
    cert.steps.push_back(step);
  }
  return cert;
}

}  // namespace frobent
