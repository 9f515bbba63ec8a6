#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobent/error.hpp"
#include "frobent/grring.hpp"

using namespace frobent;

namespace {

RingSpec cusp(std::uint32_t p = 2) { return {FieldSpec::prime(p), MonoidSpec::numerical({2, 3})}; }

}  // namespace

TEST_CASE("phi power ideals") {
  const RingSpec r = cusp();
  const MonoidSpec& m = r.monoid();
  const auto F = EndomorphismSpec::frobenius(r);
  CHECK(phi_power_ideal(r, F, 1) == ExponentSet(m, {{4}, {6}}));
  CHECK(phi_power_ideal(r, F, 0) == ExponentSet(m, {{2}, {3}}));
  const RingSpec line{FieldSpec::prime(2), MonoidSpec::numerical({1})};
  CHECK(phi_power_ideal(line, EndomorphismSpec::scale(line, 3), 2) == ExponentSet(line.monoid(), {{9}}));
}

TEST_CASE("endomorphism data") {
  const RingSpec r{FieldSpec::rational(3, 2), MonoidSpec::numerical({2, 3})};
  const auto F = EndomorphismSpec::frobenius(r);
  CHECK(F.base == 3);
  CHECK(F.residue_degree == 9);
  const auto S = EndomorphismSpec::scale(r, 5);
  CHECK(S.base == 5);
  CHECK(S.residue_degree == 1);
  CHECK_THROWS_AS(EndomorphismSpec::scale(r, 0), ConfigError);
}

TEST_CASE("length sequence of the cusp") {
  const auto L = length_sequence(cusp(), EndomorphismSpec::frobenius(cusp()), 16);
  CHECK(L[0] == 1);
  CHECK(L[1] == 4);
  CHECK(L[2] == 8);
  for (int e = 1; e <= 16; ++e) CHECK(L[static_cast<std::size_t>(e)] == (std::uint64_t{1} << (e + 1)));
}

TEST_CASE("length sequences are nondecreasing and worker independent") {
  for (const RingSpec& r : {cusp(), cusp(3), RingSpec{FieldSpec::prime(2), MonoidSpec::numerical({3, 5})},
                            RingSpec{FieldSpec::prime(3), MonoidSpec::free(2)},
                            RingSpec{FieldSpec::prime(2), MonoidSpec::product({2, 3}, 1)}}) {
    const auto F = EndomorphismSpec::frobenius(r);
    const auto one = length_sequence(r, F, 6, 1);
    CHECK(length_sequence(r, F, 6, 4) == one);
    CHECK(one[0] == 1);
    for (std::size_t e = 1; e < one.size(); ++e) CHECK(one[e] >= one[e - 1]);
  }
}

TEST_CASE("free monoids give box counts") {
  const RingSpec r{FieldSpec::prime(3), MonoidSpec::free(2)};
  const auto L = length_sequence(r, EndomorphismSpec::frobenius(r), 5);
  std::uint64_t q = 1;
  for (int e = 0; e <= 5; ++e) {
    CHECK(L[static_cast<std::size_t>(e)] == q * q);
    q *= 3;
  }
}

TEST_CASE("Hilbert-Samuel functions and multiplicities") {
  const RingSpec r = cusp();
  for (std::int64_t n = 1; n <= 20; ++n) CHECK(hilbert_samuel(r, n) == static_cast<std::uint64_t>(2 * n - 1));
  const auto m = multiplicity(r);
  CHECK(m.stabilized);
  CHECK(m.rounded == 2);
  const auto m35 = multiplicity({FieldSpec::prime(2), MonoidSpec::numerical({3, 5})});
  CHECK(m35.stabilized);
  CHECK(m35.rounded == 3);
  const auto plane = multiplicity({FieldSpec::prime(2), MonoidSpec::free(2)});
  CHECK(plane.rounded == 1);
  for (const RingSpec& s : {cusp(), RingSpec{FieldSpec::prime(2), MonoidSpec::free(2)},
                            RingSpec{FieldSpec::prime(2), MonoidSpec::product({3, 5}, 1)}}) {
    for (std::int64_t n = 1; n < 12; ++n) CHECK(hilbert_samuel(s, n + 1) > hilbert_samuel(s, n));
  }
}

TEST_CASE("order") {
  const RingSpec r = cusp();
  CHECK(order(r, {0}) == 0);
  CHECK(order(r, {1}) == -1);
  CHECK(order(r, {6}) == 3);
  CHECK(order(r, {7}) == 3);
}

TEST_CASE("sandwich containments") {
  const RingSpec r = cusp();
  CHECK(sandwich_check(r, EndomorphismSpec::frobenius(r), 1));
  for (const RingSpec& s : {cusp(), cusp(3), RingSpec{FieldSpec::prime(2), MonoidSpec::numerical({3, 5})},
                            RingSpec{FieldSpec::prime(2), MonoidSpec::free(2)},
                            RingSpec{FieldSpec::prime(2), MonoidSpec::product({2, 3}, 1)}}) {
    for (int e = 1; e <= 8; ++e) CHECK(sandwich_check(s, EndomorphismSpec::frobenius(s), e));
    for (int e = 1; e <= 4; ++e) CHECK(sandwich_check(s, EndomorphismSpec::scale(s, 3), e));
  }
}

TEST_CASE("overflow is detected") {
  CHECK(checked_power(2, 10) == 1024);
  CHECK_THROWS_AS(checked_power(10, 40), ResourceError);
}
