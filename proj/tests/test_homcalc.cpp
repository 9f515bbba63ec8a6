#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "frobent/error.hpp"
#include "frobent/homcalc.hpp"

using namespace frobent;

namespace {

RingSpec cusp() { return {FieldSpec::prime(2), MonoidSpec::numerical({2, 3})}; }

std::vector<std::uint64_t> koszul(const GradedModule& m) {
  return koszul_homology_lengths(m, KoszulComplex::on_maximal_ideal(m.ring_spec())).lengths;
}

std::vector<std::uint64_t> betti(const GradedModule& m, int steps) {
  const BettiTable t = minimal_resolution(m, steps);
  std::vector<std::uint64_t> out;
  for (int i = 0; i <= steps; ++i) out.push_back(t.beta(static_cast<std::size_t>(i)));
  return out;
}

}  // namespace

TEST_CASE("Koszul examples") {
  const RingSpec r = cusp();
  const KoszulHomology h = koszul_homology_lengths(GradedModule::ring(r), KoszulComplex(r, {{2}, {3}}));
  CHECK(h.lengths == std::vector<std::uint64_t>{1, 1, 0});
  CHECK(h.euler_characteristic() == 0);
  CHECK(h.certified);

  CHECK(koszul(GradedModule::residue_field(r)) == std::vector<std::uint64_t>{1, 2, 1});
  const RingSpec r3{FieldSpec::prime(2), MonoidSpec::numerical({3, 5, 7})};
  CHECK(koszul(GradedModule::residue_field(r3)) == std::vector<std::uint64_t>{1, 3, 3, 1});

  const RingSpec plane{FieldSpec::prime(3), MonoidSpec::free(2)};
  CHECK(koszul(GradedModule::free(plane, {{0, 0}, {1, 2}, {0, 3}})) == std::vector<std::uint64_t>{3, 0, 0});
}

TEST_CASE("Koszul sequences must generate an m-primary ideal") {
  const RingSpec plane{FieldSpec::prime(2), MonoidSpec::free(2)};
  CHECK_THROWS_AS(KoszulComplex(plane, {{1, 0}}), ConfigError);
  CHECK_THROWS_AS(KoszulComplex(plane, {{0, 0}, {1, 0}, {0, 1}}), ConfigError);
  CHECK_NOTHROW(KoszulComplex(plane, {{2, 0}, {0, 3}}));
}

TEST_CASE("Koszul constants") {
  const RingSpec r = cusp();
  const auto x = KoszulComplex::on_maximal_ideal(r);
  const BoundConstants k = bound_constants(GradedModule::residue_field(r), x);
  CHECK(k.N == 2);
  CHECK(k.B == 2);
  const RingSpec plane{FieldSpec::prime(3), MonoidSpec::free(2)};
  const BoundConstants free = bound_constants(GradedModule::ring(plane), KoszulComplex::on_maximal_ideal(plane));
  CHECK(free.N == 0);
  CHECK(free.B == 1);

  const GradedModule G = GradedModule::ring(r)
                             .direct_sum(GradedModule::principal_quotient(r, {2}))
                             .direct_sum(GradedModule::residue_field(r));
  const BoundConstants g = bound_constants(G, x);
  CHECK(g.N <= 2);
  const auto a = koszul(GradedModule::ring(r));
  const auto b = koszul(GradedModule::principal_quotient(r, {2}));
  const auto c = koszul(GradedModule::residue_field(r));
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(g.lengths[i] == a[i] + b[i] + c[i]);
    top = std::max(top, g.lengths[i]);
  }
  CHECK(g.B == top);
}

TEST_CASE("Betti examples") {
  const RingSpec r = cusp();
  const BettiTable t = minimal_resolution(GradedModule::residue_field(r), 2);
  CHECK(betti(GradedModule::residue_field(r), 2) == std::vector<std::uint64_t>{1, 2, 2});
  CHECK(t.exact);
  CHECK(t.stabilized());
  REQUIRE(t.columns[2].degrees.size() == 2);
  CHECK(t.columns[2].degrees[0].lattice == Point{5});
  CHECK(t.columns[2].degrees[1].lattice == Point{6});

  CHECK(betti(GradedModule::free(r, {{0}, {2}, {3}}), 2) == std::vector<std::uint64_t>{3, 0, 0});
  const auto F = EndomorphismSpec::frobenius(r);
  for (int e = 0; e <= 6; ++e) {
    CHECK(minimal_resolution(pushforward(GradedModule::ring(r), F, e), 0).beta(0) == (e == 0 ? 1 : 2ULL << e));
  }
  const RingSpec plane{FieldSpec::prime(3), MonoidSpec::free(2)};
  CHECK(betti(GradedModule::residue_field(plane), 3) == std::vector<std::uint64_t>{1, 2, 1, 0});
}

TEST_CASE("annihilator elements") {
  CHECK(annihilator_element(cusp()) == Point{2});
  CHECK(annihilator_element({FieldSpec::prime(2), MonoidSpec::numerical({3, 5})}) == Point{8});
  CHECK(annihilator_element({FieldSpec::prime(2), MonoidSpec::numerical({1})}) == Point{1});
  CHECK_THROWS_AS(annihilator_element({FieldSpec::prime(2), MonoidSpec::free(2)}), UnsupportedError);
}

TEST_CASE("Euler characteristic vanishes when nu > d") {
  std::mt19937_64 rng(7);
  int tested = 0;
  while (tested < 20) {
    const RingSpec r{FieldSpec::prime(2), testing::random_monoid(rng)};
    if (r.is_regular()) continue;
    const GradedModule M = testing::random_module(rng, r);
    const KoszulHomology h = koszul_homology_lengths(M, KoszulComplex::on_maximal_ideal(r));
    CHECK(h.euler_characteristic() == 0);
    ++tested;
  }
  // regular: chi(R^r) = r
  const RingSpec plane{FieldSpec::prime(2), MonoidSpec::free(2)};
  const KoszulHomology h = koszul_homology_lengths(GradedModule::free(plane, {{0, 0}, {1, 1}}),
                                                   KoszulComplex::on_maximal_ideal(plane));
  CHECK(h.euler_characteristic() == 2);
}

TEST_CASE("beta_0 equals the minimal number of generators") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const RingSpec r{FieldSpec::prime(3), testing::random_monoid(rng)};
    const GradedModule M = testing::random_module(rng, r);
    const BettiTable t = minimal_resolution(M, 1);
    CHECK(t.beta(0) == minimal_generator_count(M).count);
    CHECK(t.exact);
  }
}

TEST_CASE("resolutions are exact and periodic on hypersurfaces") {
  const RingSpec r = cusp();
  const SummandResolution res = resolve_summand(r, GradedModule::residue_field(r).summands()[0], 4);
  CHECK(res.exact);
  REQUIRE(res.degrees.size() == 5);
  for (std::size_t i = 1; i <= 4; ++i) CHECK(res.degrees[i].size() == 2);
  // 2-periodic up to the shift by the degree 8 of t^2 t^3 t^3
  CHECK(res.degrees[3] == std::vector<Point>{{8}, {9}});
  CHECK(res.degrees[4] == std::vector<Point>{{11}, {12}});
}

TEST_CASE("workers do not change Betti tables") {
  const RingSpec r{FieldSpec::prime(2), MonoidSpec::numerical({3, 5})};
  const GradedModule eR = pushforward(GradedModule::ring(r), EndomorphismSpec::frobenius(r), 4);
  const BettiTable one = minimal_resolution(eR, 2, {}, 1);
  const BettiTable four = minimal_resolution(eR, 2, {}, 4);
  for (std::size_t i = 0; i <= 2; ++i) CHECK(one.beta(i) == four.beta(i));
}

TEST_CASE("presented modules") {
  const RingSpec r = cusp();
  std::vector<Relation> rels{{{2}, {{0, 1}}}, {{3}, {{0, 1}}}};
  const GradedModule k = GradedModule::presented(r, {{0}}, rels, "k");
  CHECK(betti(k, 2) == std::vector<std::uint64_t>{1, 2, 2});
  CHECK(koszul(k) == std::vector<std::uint64_t>{1, 2, 1});
}

TEST_CASE("window overrides that cut into homology are rejected") {
  const RingSpec r{FieldSpec::prime(2), MonoidSpec::numerical({3, 5})};
  TruncationWindow w;
  w.degree = 1;
  w.retries = 0;
  CHECK_THROWS_AS(koszul_homology_lengths(GradedModule::ring(r), KoszulComplex::on_maximal_ideal(r), w), WindowError);
}
