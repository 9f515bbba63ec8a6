#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "frobent/error.hpp"
#include "frobent/grmod.hpp"

using namespace frobent;

namespace {

RingSpec cusp(const FieldSpec& k = FieldSpec::prime(2)) { return {k, MonoidSpec::numerical({2, 3})}; }

const MonomialData& monomial(const Summand& s) { return std::get<MonomialData>(s.data); }

GradedModule presented_k(const RingSpec& r) {
  std::vector<Relation> rels;
  for (const auto& g : r.monoid().minimal_generators()) rels.push_back({g, {{0, 1}}});
  return GradedModule::presented(r, {Point(r.dim(), 0)}, rels, "k");
}

}  // namespace

TEST_CASE("pushforward of the cusp splits into two residue classes") {
  const RingSpec r = cusp();
  const GradedModule one = pushforward(GradedModule::ring(r), EndomorphismSpec::frobenius(r), 1);
  REQUIRE(one.summands().size() == 2);
  const MonoidSpec& m = r.monoid();
  CHECK(monomial(one.summands()[0]).generators == ExponentSet(m, {{0}, {1}}));
  CHECK(monomial(one.summands()[1]).generators == ExponentSet(m, {{1}, {2}}));
  CHECK(one.summands()[1].shift.numerator == Point{1});
  CHECK(one.summands()[1].shift.denominator == 2);
  CHECK(minimal_generator_count(one).count == 4);
}

TEST_CASE("pushforward of the residue field") {
  for (const FieldSpec& k : {FieldSpec::prime(2), FieldSpec::rational(2, 1), FieldSpec::rational(3, 1)}) {
    const RingSpec r = cusp(k);
    for (int e = 0; e <= 4; ++e) {
      const GradedModule ek = pushforward(GradedModule::residue_field(r), EndomorphismSpec::frobenius(r), e);
      std::uint64_t expect = 1;
      for (int i = 0; i < e; ++i) expect *= p_degree(k);
      // e k = k^{[k : k^p]^e}: a single generator in degree 0 with that many copies
      CHECK(length(ek).value == expect);
      const GeneratorCount mu = minimal_generator_count(ek);
      CHECK(mu.count == expect);
      REQUIRE(mu.degrees.size() == 1);
      CHECK(mu.degrees[0].copies == expect);
      CHECK(mu.degrees[0].lattice == Point{0});
    }
  }
}

TEST_CASE("regular pushforwards are free of rank p^{de}") {
  const RingSpec r{FieldSpec::prime(3), MonoidSpec::free(2)};
  for (int e = 0; e <= 3; ++e) {
    const GradedModule eR = pushforward(GradedModule::ring(r), EndomorphismSpec::frobenius(r), e);
    std::uint64_t rank = 1;
    for (int i = 0; i < 2 * e; ++i) rank *= 3;
    CHECK(eR.summands().size() == rank);
    CHECK(minimal_generator_count(eR).count == rank);
    for (const auto& s : eR.summands()) CHECK(monomial(s).generators.size() == 1);
  }
}

TEST_CASE("length examples") {
  const RingSpec r = cusp();
  CHECK(length(GradedModule::residue_field(r)).value == 1);
  CHECK_FALSE(length(GradedModule::ring(r)).finite);
  CHECK(length(GradedModule::ring(RingSpec{FieldSpec::prime(2), MonoidSpec::free(0)})).value == 1);

  const RingSpec ru = cusp(FieldSpec::rational(2, 1));
  const GradedModule q = GradedModule::quotient(ru, ExponentSet(ru.monoid(), {{4}, {6}}));
  CHECK(length(q).value == 4);
  CHECK(length(pushforward(q, EndomorphismSpec::frobenius(ru), 1)).value == 8);
  CHECK(length(presented_k(r)).value == 1);
  CHECK(length(pushforward(presented_k(r), EndomorphismSpec::frobenius(r), 2)).value == 1);
}

TEST_CASE("minimal generator examples") {
  const RingSpec r = cusp();
  CHECK(minimal_generator_count(GradedModule::maximal_ideal(r)).count == 2);
  CHECK(minimal_generator_count(GradedModule::free(r, {{0}, {3}, {7}})).count == 3);
  const auto F = EndomorphismSpec::frobenius(r);
  for (int e = 1; e <= 8; ++e) {
    CHECK(minimal_generator_count(pushforward(GradedModule::ring(r), F, e)).count == (std::uint64_t{1} << (e + 1)));
  }
  CHECK(minimal_generator_count(presented_k(r)).count == 1);
}

TEST_CASE("pushforward scales length by the residue degree") {
  std::mt19937_64 rng(0);
  const std::vector<FieldSpec> fields{FieldSpec::prime(2), FieldSpec::finite(2, 2), FieldSpec::rational(2, 1)};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const FieldSpec& k = fields[static_cast<std::size_t>(trial) % fields.size()];
    const RingSpec r{k, testing::random_monoid(rng)};
    const GradedModule M = testing::random_finite_module(rng, r);
    const Count base = length(M);
    REQUIRE(base.finite);
    const auto F = EndomorphismSpec::frobenius(r);
    for (int e = 0; e <= 3; ++e) {
      std::uint64_t factor = 1;
      for (int i = 0; i < e; ++i) factor *= F.residue_degree;
      const Count pushed = length(pushforward(M, F, e));
      CHECK(pushed.finite);
      CHECK(pushed.value == factor * base.value);
    }
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("mu(eR) = [k : k^p]^e L_e") {
  for (const FieldSpec& k : {FieldSpec::prime(2), FieldSpec::rational(2, 1), FieldSpec::prime(3)}) {
    for (const MonoidSpec& m : {MonoidSpec::numerical({2, 3}), MonoidSpec::numerical({3, 5}), MonoidSpec::free(1),
                                MonoidSpec::free(2), MonoidSpec::product({2, 3}, 1)}) {
      const RingSpec r{k, m};
      const auto F = EndomorphismSpec::frobenius(r);
      const int e_max = m.dim() == 2 ? (k.characteristic() == 3 ? 3 : 4) : 6;
      const auto L = length_sequence(r, F, e_max);
      std::uint64_t rp = 1;
      for (int e = 0; e <= e_max; ++e) {
        CHECK(minimal_generator_count(pushforward(GradedModule::ring(r), F, e)).count ==
              rp * L[static_cast<std::size_t>(e)]);
        rp *= F.residue_degree;
      }
    }
  }
}

TEST_CASE("iterated pushforwards compose") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const RingSpec r{trial % 2 ? FieldSpec::rational(2, 1) : FieldSpec::prime(3), testing::random_monoid(rng)};
    const GradedModule M = testing::random_module(rng, r);
    const auto F = EndomorphismSpec::frobenius(r);
    const int a = static_cast<int>(testing::uniform(rng, 0, 2)), b = static_cast<int>(testing::uniform(rng, 0, 2));
    const GradedModule twice = pushforward(pushforward(M, F, a), F, b);
    const GradedModule once = pushforward(M, F, a + b);
    CHECK(length(twice) == length(once));
    CHECK(minimal_generator_count(twice).count == minimal_generator_count(once).count);
  }
  // presented modules go through residue views
  const RingSpec r = cusp(FieldSpec::rational(2, 1));
  const auto F = EndomorphismSpec::frobenius(r);
  const GradedModule k = presented_k(r);
  CHECK(length(pushforward(pushforward(k, F, 1), F, 2)) == length(pushforward(k, F, 3)));
  CHECK(length(pushforward(k, F, 3)).value == 8);
}

TEST_CASE("tower certificates") {
  const RingSpec r = cusp();
  const TowerCertificate two = tower_certificate(r, {2}, 2);
  CHECK(two.valid);
  REQUIRE(two.steps.size() == 2);
  CHECK(two.steps[0].length_current.value == 2);
  CHECK(two.steps[1].length_current.value == 4);
  const TowerCertificate one = tower_certificate(r, {2}, 1);
  CHECK(one.valid);
  CHECK(one.steps.size() == 1);
  CHECK(tower_certificate(r, {8}, 6).valid);
  CHECK(tower_certificate({FieldSpec::prime(2), MonoidSpec::free(2)}, {1, 0}, 3).steps.back().length_current ==
        Count::infinite());
  CHECK_THROWS_AS(tower_certificate(r, {2}, 2, 0), DomainError);
  CHECK_THROWS_AS(tower_certificate(r, {0}, 2), DomainError);
  CHECK_THROWS_AS(tower_certificate(r, {1}, 2), DomainError);
}

TEST_CASE("pushforward caps") {
  const RingSpec r{FieldSpec::prime(3), MonoidSpec::free(3)};
  CHECK_THROWS_AS(pushforward(GradedModule::ring(r), EndomorphismSpec::frobenius(r), 6), ResourceError);
}
