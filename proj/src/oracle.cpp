#include "frobent/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "frobent/error.hpp"

namespace frobent::oracle {

namespace {

using Vec = std::vector<std::uint32_t>;

std::uint64_t volume(const std::vector<std::int64_t>& extent) {
  std::uint64_t v = 1;
  for (auto e : extent) {
    v *= static_cast<std::uint64_t>(std::max<std::int64_t>(e, 0));
    if (v > kEnumerationCap) throw ResourceError("oracle box exceeds " + std::to_string(kEnumerationCap) + " points");
  }
  return v;
}

// All points of [0, extent) in odometer order, first coordinate fastest.
std::vector<Point> box_points(const std::vector<std::int64_t>& extent) {
  const std::uint64_t n = volume(extent);
  std::vector<Point> out;
  out.reserve(n);
  Point w(extent.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(w);
    for (std::size_t j = 0; j < w.size() && ++w[j] == extent[j]; ++j) w[j] = 0;
  }
  return out;
}

// Membership in Gamma and in closures of finite sets, from per-axis tables.
class Lattice {
 public:
  Lattice(const MonoidSpec& monoid, std::int64_t upto) {
    for (const auto& f : monoid.factors()) tables_.push_back(semigroup_members(f.generators(), upto));
  }

  bool in_gamma(const Point& w) const {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] < 0) return false;
      if (w[j] >= static_cast<std::int64_t>(tables_[j].size())) throw ResourceError("oracle membership table too small");
      if (!tables_[j][static_cast<std::size_t>(w[j])]) return false;
    }
    return true;
  }

  bool in_closure(const std::vector<Point>& set, const Point& w) const {
    Point diff(w.size());
    for (const auto& g : set) {
      for (std::size_t j = 0; j < w.size(); ++j) diff[j] = w[j] - g[j];
      if (in_gamma(diff)) return true;
    }
    return false;
  }

 private:
  std::vector<std::vector<bool>> tables_;
};

std::int64_t max_coordinate(const std::vector<Point>& pts) {
  std::int64_t m = 0;
  for (const auto& p : pts) {
    for (auto x : p) m = std::max(m, x);
  }
  return m;
}

std::int64_t max_conductor(const MonoidSpec& monoid) {
  std::int64_t c = 0;
  for (const auto& f : monoid.factors()) c = std::max(c, f.conductor());
  return c;
}

// Minimal generators of Gamma_+ from the per-axis generator lists.
std::vector<Point> positive_generators(const MonoidSpec& monoid) {
  std::vector<Point> out;
  for (std::size_t j = 0; j < monoid.dim(); ++j) {
    for (auto a : monoid.factor(j).generators()) {
      Point g(monoid.dim(), 0);
      g[j] = a;
      out.push_back(g);
    }
  }
  return out;
}

// Incremental row echelon form over F_p.
class Echelon {
 public:
  explicit Echelon(std::uint32_t p) : p_(p) {}

  // Reduces v against the basis; adds it and returns true if it was independent.
  bool insert(Vec v) {
    reduce(v);
    const auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
    if (it == v.end()) return false;
    const auto col = static_cast<std::size_t>(it - v.begin());
    const std::uint64_t inv = inverse(v[col]);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % p_);
    rows_.push_back({col, std::move(v)});
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(Vec& v) const {
    for (const auto& [col, row] : rows_) {
      const std::uint64_t f = v[col];
      if (f == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (row[k] != 0) v[k] = static_cast<std::uint32_t>((v[k] + (p_ - f) * row[k]) % p_);
      }
    }
  }

  std::uint64_t inverse(std::uint64_t a) const {
    std::uint64_t r = 1, n = p_ - 2;
    while (n > 0) {
      if (n & 1U) r = r * a % p_;
      a = a * a % p_;
      n >>= 1U;
    }
    return r;
  }

  std::uint32_t p_;
  std::vector<std::pair<std::size_t, Vec>> rows_;
};

// Reduced row echelon form of a dense rows x cols matrix; returns the pivot columns.
std::vector<std::size_t> rref(std::vector<Vec>& a, std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  auto inv = [p](std::uint64_t x) {
    std::uint64_t res = 1, n = p - 2;
    while (n > 0) {
      if (n & 1U) res = res * x % p;
      x = x * x % p;
      n >>= 1U;
    }
    return res;
  };
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const std::uint64_t s = inv(a[r][c]);
    for (auto& x : a[r]) x = static_cast<std::uint32_t>(x * s % p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) {
        if (a[r][k] != 0) a[i][k] = static_cast<std::uint32_t>((a[i][k] + (p - f) * a[r][k]) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t dense_rank(std::vector<Vec> a, std::size_t cols, std::uint32_t p) { return rref(a, cols, p).size(); }

void check_dense(std::size_t rows, std::size_t cols) {
  if (rows > kDenseCap || cols > kDenseCap) {
    throw ResourceError("oracle dense matrix " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds cap " +
                        std::to_string(kDenseCap));
  }
}

// A graded vector space truncated to [0, D]^d with the action of monomials t^s.
struct Space {
  std::int64_t D = 0;
  std::vector<Point> degree;
  std::vector<std::size_t> generator;  // free modules: generator of each basis element
  std::map<std::pair<std::size_t, Point>, std::size_t> index;

  std::optional<std::size_t> find(std::size_t gen, const Point& w) const {
    const auto it = index.find({gen, w});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  void add(std::size_t gen, const Point& w) {
    index[{gen, w}] = degree.size();
    degree.push_back(w);
    generator.push_back(gen);
  }
};

Point plus(const Point& a, const Point& b) {
  Point c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[j] + b[j];
  return c;
}

Point minus(const Point& a, const Point& b) {
  Point c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) c[j] = a[j] - b[j];
  return c;
}

// t^s * v; nullopt when the product leaves the box. v is homogeneous.
std::optional<Vec> multiply(const Space& space, const Vec& v, const Point& s) {
  Vec out(space.degree.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const Point w = plus(space.degree[i], s);
    if (std::any_of(w.begin(), w.end(), [&](std::int64_t x) { return x > space.D; })) return std::nullopt;
    // Inside the box a missing degree is a product killed by the relations.
    if (const auto target = space.find(space.generator[i], w)) out[*target] = v[i];
  }
  return out;
}

Point degree_of(const Space& space, const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return space.degree[i];
  }
  throw Error("oracle: degree of the zero vector");
}

bool degree_less(const Point& a, const Point& b) {
  const auto sa = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  const auto sb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
  return sa != sb ? sa < sb : a < b;
}

// closure(I) \ closure(J) inside the box.
Space module_space(const Lattice& lat, const MonomialModule& m, std::int64_t D, std::size_t d) {
  Space s;
  s.D = D;
  for (const auto& w : box_points(std::vector<std::int64_t>(d, D + 1))) {
    if (lat.in_closure(m.generators, w) && !lat.in_closure(m.relations, w)) s.add(0, w);
  }
  return s;
}

Space free_space(const Lattice& lat, const std::vector<Point>& gens, std::int64_t D, std::size_t d) {
  Space s;
  s.D = D;
  const auto box = box_points(std::vector<std::int64_t>(d, D + 1));
  for (std::size_t h = 0; h < gens.size(); ++h) {
    for (const auto& w : box) {
      if (lat.in_gamma(minus(w, gens[h]))) s.add(h, w);
    }
  }
  return s;
}

// Homogeneous vectors of `candidates` completing span(base) to span(base + candidates).
std::vector<Vec> complete_basis(const Space& space, const std::vector<Vec>& base, std::vector<Vec> candidates,
                                std::uint32_t p) {
  Echelon ech(p);
  for (const auto& b : base) ech.insert(b);
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Vec& a, const Vec& b) {
    return degree_less(degree_of(space, a), degree_of(space, b));
  });
  std::vector<Vec> out;
  for (auto& c : candidates) {
    if (ech.insert(c)) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Vec> maximal_ideal_times(const Space& space, const std::vector<Vec>& vs, const std::vector<Point>& mgens) {
  std::vector<Vec> out;
  for (const auto& v : vs) {
    for (const auto& a : mgens) {
      if (auto w = multiply(space, v, a)) out.push_back(std::move(*w));
    }
  }
  return out;
}

Resolution resolve_in_box(const MonoidSpec& monoid, std::uint32_t p, const MonomialModule& module, int steps,
                          std::int64_t D) {
  const std::size_t d = monoid.dim();
  const Lattice lat(monoid, D + 1);
  const auto mgens = positive_generators(monoid);
  Resolution res;

  Space target = module_space(lat, module, D, d);
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < target.degree.size(); ++i) {
    Vec v(target.degree.size(), 0);
    v[i] = 1;
    basis.push_back(std::move(v));
  }
  std::vector<Vec> gens = complete_basis(target, maximal_ideal_times(target, basis, mgens), basis, p);

  for (int step = 0;; ++step) {
    std::vector<Point> degs;
    for (const auto& g : gens) degs.push_back(degree_of(target, g));
    std::vector<Point> sorted = degs;
    std::sort(sorted.begin(), sorted.end());
    res.betti.push_back(sorted.size());
    res.degrees.push_back(sorted);
    if (step == steps) break;

    // d : F -> target, F free on gens; columns are the basis of F.
    Space F = free_space(lat, degs, D, d);
    check_dense(target.degree.size(), F.degree.size());
    std::vector<Vec> a(target.degree.size(), Vec(F.degree.size(), 0));
    for (std::size_t col = 0; col < F.degree.size(); ++col) {
      const std::size_t h = F.generator[col];
      const auto image = multiply(target, gens[h], minus(F.degree[col], degs[h]));
      if (!image) throw Error("oracle: image left the box");
      for (std::size_t row = 0; row < image->size(); ++row) a[row][col] = (*image)[row];
    }
    const auto pivots = rref(a, F.degree.size(), p);
    std::vector<bool> is_pivot(F.degree.size(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> kernel;
    for (std::size_t free_col = 0; free_col < F.degree.size(); ++free_col) {
      if (is_pivot[free_col]) continue;
      Vec v(F.degree.size(), 0);
      v[free_col] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (a[r][free_col] != 0) v[pivots[r]] = p - a[r][free_col];
      }
      const Point z = F.degree[free_col];
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0 && F.degree[i] != z) throw Error("oracle: inhomogeneous kernel vector");
      }
      kernel.push_back(std::move(v));
    }
    gens = complete_basis(F, maximal_ideal_times(F, kernel, mgens), kernel, p);
    target = std::move(F);
  }
  return res;
}

std::vector<std::uint64_t> koszul_in_box(const MonoidSpec& monoid, std::uint32_t p, const MonomialModule& module,
                                         const std::vector<Point>& seq, std::int64_t D) {
  const std::size_t d = monoid.dim();
  const std::size_t n = seq.size();
  const Lattice lat(monoid, D + 1);
  const Space M = module_space(lat, module, D, d);

  // K_i has basis (S, w) with |S| = i, w in the box and w - a_S a basis degree of M.
  std::vector<std::vector<std::pair<unsigned, Point>>> basis(n + 1);
  std::vector<std::map<std::pair<unsigned, Point>, std::size_t>> index(n + 1);
  for (unsigned S = 0; S < (1U << n); ++S) {
    Point a(d, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (S >> j & 1U) a = plus(a, seq[j]);
    }
    const std::size_t i = static_cast<std::size_t>(__builtin_popcount(S));
    for (const auto& m : M.degree) {
      const Point w = plus(m, a);
      if (std::any_of(w.begin(), w.end(), [D](std::int64_t x) { return x > D; })) continue;
      index[i][{S, w}] = basis[i].size();
      basis[i].push_back({S, w});
    }
  }
  // rank of d_i : K_i -> K_{i-1}, i = 1..n
  std::vector<std::size_t> rank(n + 2, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    check_dense(basis[i - 1].size(), basis[i].size());
    std::vector<Vec> a(basis[i - 1].size(), Vec(basis[i].size(), 0));
    for (std::size_t col = 0; col < basis[i].size(); ++col) {
      const auto& [S, w] = basis[i][col];
      int position = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(S >> j & 1U)) continue;
        const unsigned T = S & ~(1U << j);
        const auto it = index[i - 1].find({T, w});
        // The image lies in the basis unless x_j pushes the element into the relations.
        if (it != index[i - 1].end()) a[it->second][col] = position % 2 == 0 ? 1 : p - 1;
        ++position;
      }
    }
    rank[i] = dense_rank(std::move(a), basis[i].size(), p);
  }
  std::vector<std::uint64_t> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = basis[i].size() - rank[i] - rank[i + 1];
  return out;
}

std::int64_t default_box(const MonoidSpec& monoid, const MonomialModule& module, const std::vector<Point>& extra,
                         int rounds) {
  const std::int64_t top = std::max(max_coordinate(module.generators), max_coordinate(module.relations));
  std::int64_t a = 1;
  for (const auto& f : monoid.factors()) a = std::max(a, f.max_generator());
  for (const auto& x : extra) a += max_coordinate({x});
  return top + static_cast<std::int64_t>(rounds) * (a + max_conductor(monoid)) + 4;
}

}  // namespace

std::vector<bool> semigroup_members(const std::vector<std::int64_t>& generators, std::int64_t upto) {
  if (upto < 0) return {};
  if (static_cast<std::uint64_t>(upto) >= kEnumerationCap) throw ResourceError("oracle table exceeds cap");
  std::vector<bool> member(static_cast<std::size_t>(upto) + 1, false);
  // Breadth-first over sums of generators.
  std::vector<std::int64_t> frontier{0};
  member[0] = true;
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (auto s : frontier) {
      for (auto g : generators) {
        const std::int64_t t = s + g;
        if (t <= upto && !member[static_cast<std::size_t>(t)]) {
          member[static_cast<std::size_t>(t)] = true;
          next.push_back(t);
        }
      }
    }
    frontier = std::move(next);
  }
  return member;
}

Gaps gaps(const std::vector<std::int64_t>& generators) {
  if (generators.empty()) throw ConfigError("oracle gaps needs generators");
  const auto [lo, hi] = std::minmax_element(generators.begin(), generators.end());
  if (*lo <= 0) throw ConfigError("oracle gaps needs positive generators");
  // Every integer >= (a-1)(b-1) lies in <a, b> for any two coprime members; a*b is a safe bound.
  const std::int64_t bound = (*lo) * (*hi) + 1;
  const auto member = semigroup_members(generators, bound);
  Gaps g;
  for (std::int64_t x = 0; x <= bound; ++x) {
    if (!member[static_cast<std::size_t>(x)]) g.gaps.push_back(x);
  }
  if (!g.gaps.empty()) g.frobenius_number = g.gaps.back();
  return g;
}

Complement complement(const MonoidSpec& monoid, const std::vector<Point>& ideal) {
  const std::size_t d = monoid.dim();
  Complement out;
  std::vector<std::int64_t> extent(d);
  for (std::size_t j = 0; j < d; ++j) {
    // A pure power a e_j in the ideal bounds the complement by a + c_j on axis j.
    std::optional<std::int64_t> pure;
    for (const auto& g : ideal) {
      bool only_j = true;
      for (std::size_t i = 0; i < d; ++i) only_j = only_j && (i == j || g[i] == 0);
      if (only_j) pure = pure ? std::min(*pure, g[j]) : g[j];
    }
    if (!pure) {
      out.finite = false;
      return out;
    }
    extent[j] = *pure + monoid.factor(j).conductor() + 1;
  }
  const Lattice lat(monoid, *std::max_element(extent.begin(), extent.end()) + 1);
  for (const auto& w : box_points(extent)) {
    if (lat.in_gamma(w) && !lat.in_closure(ideal, w)) out.elements.push_back(w);
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

std::vector<ResidueClass> pushforward_decompose(const MonoidSpec& monoid, const std::vector<Point>& set,
                                                std::int64_t q) {
  const std::size_t d = monoid.dim();
  if (q < 1) throw ConfigError("oracle pushforward needs q >= 1");
  // Minimal generators w of a class satisfy w_j < c_j + G_j + a_j.
  std::vector<std::int64_t> extent(d);
  std::int64_t top = 0;
  for (std::size_t j = 0; j < d; ++j) {
    std::int64_t G = 0;
    for (const auto& g : set) G = std::max(G, g[j]);
    extent[j] = monoid.factor(j).conductor() + G + monoid.factor(j).min_generator();
    top = std::max(top, q * extent[j] + q);
  }
  const auto box = box_points(extent);
  const auto residues = box_points(std::vector<std::int64_t>(d, q));
  if (static_cast<std::uint64_t>(box.size()) * residues.size() > kEnumerationCap) {
    throw ResourceError("oracle pushforward exceeds " + std::to_string(kEnumerationCap) + " evaluations");
  }
  const Lattice lat(monoid, top);
  const auto mgens = positive_generators(monoid);
  std::vector<ResidueClass> out;
  for (const auto& r : residues) {
    auto member = [&](const Point& w) {
      Point x(d);
      for (std::size_t j = 0; j < d; ++j) {
        if (w[j] < 0) return false;
        x[j] = q * w[j] + r[j];
      }
      return lat.in_closure(set, x);
    };
    ResidueClass c{r, {}};
    for (const auto& w : box) {
      if (!member(w)) continue;
      const bool minimal = std::none_of(mgens.begin(), mgens.end(), [&](const Point& a) { return member(minus(w, a)); });
      if (minimal) c.generators.push_back(w);
    }
    std::sort(c.generators.begin(), c.generators.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::uint64_t> koszul_lengths(const MonoidSpec& monoid, std::uint32_t p, const MonomialModule& module,
                                          const std::vector<Point>& sequence, std::int64_t box) {
  if (sequence.size() > 8) throw ResourceError("oracle Koszul complex limited to 8 elements");
  const std::int64_t D = box > 0 ? box : default_box(monoid, module, sequence, 2);
  const auto first = koszul_in_box(monoid, p, module, sequence, D);
  const auto second = koszul_in_box(monoid, p, module, sequence, D + D / 2 + 1);
  if (first != second) throw ResourceError("oracle Koszul lengths not stable at box " + std::to_string(D));
  return first;
}

Resolution resolution(const MonoidSpec& monoid, std::uint32_t p, const MonomialModule& module, int steps,
                      std::int64_t box) {
  if (steps < 0) throw ConfigError("oracle resolution needs steps >= 0");
  const std::int64_t D = box > 0 ? box : default_box(monoid, module, {}, steps + 1);
  auto first = resolve_in_box(monoid, p, module, steps, D);
  const auto second = resolve_in_box(monoid, p, module, steps, D + D / 2 + 1);
  if (first.betti != second.betti || first.degrees != second.degrees) {
    throw ResourceError("oracle resolution not stable at box " + std::to_string(D));
  }
  return first;
}

}  // namespace frobent::oracle
