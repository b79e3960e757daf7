#include <doctest.h>

#include "afdg/duality.hpp"
#include "afdg/dimension_group.hpp"
#include "afdg/models.hpp"

using namespace afdg;

namespace {

SupernaturalScale power_scale(Int base, std::size_t depth) {
  IntVector units;
  Int u = 1;
  for (std::size_t n = 0; n < depth; ++n) {
    u *= base;
    units.push_back(u);
  }
  return SupernaturalScale::from_tail(std::move(units));
}

SupernaturalScale factorial_scale(std::size_t depth) {
  IntVector units;
  Int u = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    u *= Int(n);
    units.push_back(u);
  }
  return SupernaturalScale::from_tail(std::move(units));
}

} // namespace

TEST_CASE("scales enforce the divisibility chain") {
  CHECK_THROWS_AS((void)SupernaturalScale::from_tail({2, 3}), Error);
  CHECK_THROWS_AS((void)SupernaturalScale::from_tail({0}), Error);
  SupernaturalScale s = SupernaturalScale::from_tail({2, 4, 8});
  CHECK(s.unit(0) == 1);
  CHECK(s.unit(3) == 8);
  CHECK(s.ratio(3) == 2);
  CHECK_THROWS_AS((void)s.unit(4), Error);

  SupernaturalScale ext = SupernaturalScale::from_tail({2, 4}, true);
  CHECK(ext.unit(5) == 32);
}

TEST_CASE("character approximations validate residue towers") {
  SupernaturalScale s = SupernaturalScale::from_tail({2, 4, 8});
  CharacterApprox c = CharacterApprox::of(s, {1, 3, 3});
  CHECK(c.residue(2) == 3);
  CHECK_THROWS_AS((void)CharacterApprox::of(s, {1, 2, 2}), Error); // 2 != 1 mod 2
  CHECK_THROWS_AS((void)CharacterApprox::of(s, {5}), Error);       // out of range

  // truncation preserves validity
  CharacterApprox t = c.truncated(2);
  CHECK(t == CharacterApprox::of(s, {1, 3}));
}

TEST_CASE("translation characters populate every residue") {
  SupernaturalScale car = power_scale(2, 3);
  CHECK(tau_translation(car, {1, 1, 1}).residues() == (IntVector{0, 0, 0}));
  CHECK(tau_translation(car, {2, 1}).residue(2) == 1);

  SupernaturalScale fact = factorial_scale(4);
  CHECK(tau_translation(fact, {1, 2, 3}).residue(3) == 5);

  // bijectivity at depth 3: all u_3 residues arise exactly once
  std::set<Int> seen;
  for (std::size_t s1 = 1; s1 <= 1; ++s1)
    for (std::size_t s2 = 1; s2 <= 2; ++s2)
      for (std::size_t s3 = 1; s3 <= 3; ++s3)
        seen.insert(tau_translation(fact, {s1, s2, s3}).residue(3));
  CHECK(seen.size() == 6);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 5);

  CHECK_THROWS_AS((void)tau_translation(car, {3, 1}), Error);
}

TEST_CASE("dual systems pass the structural conditions") {
  SupernaturalScale fact = factorial_scale(5);
  GeneratorSystem sys = build_dual_system(fact, 5);
  CHECK(check_conditions(sys, 5).pass());
  for (std::size_t n = 1; n <= 5; ++n)
    CHECK(Int(sys.family_size(n, 0)) == fact.ratio(n));

  // quotient one collapses to a single identity generator
  SupernaturalScale constant = SupernaturalScale::from_tail({1, 1, 1});
  GeneratorSystem trivial = build_dual_system(constant, 3);
  CHECK(check_conditions(trivial, 3).pass());
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(trivial.family_size(n, 0) == 1);
    CHECK(trivial.sigma(n, 0, 0).is_identity());
  }
}

TEST_CASE("the dyadic scale reproduces the canonical rank-1 system") {
  SupernaturalScale car = power_scale(2, 3);
  GeneratorSystem dual = build_dual_system(car, 3);
  GeneratorSystem canonical = canonical_system(make_car_diagram(3), 3);
  REQUIRE(dual.levels() == canonical.levels());
  for (std::size_t n = 1; n <= 3; ++n) {
    REQUIRE(dual.family_size(n, 0) == canonical.family_size(n, 0));
    for (std::size_t s = 0; s < dual.family_size(n, 0); ++s)
      CHECK(dual.sigma(n, 0, s).rules() == canonical.sigma(n, 0, s).rules());
  }
}

TEST_CASE("reconstruction round trips") {
  CHECK(verify_reconstruction(power_scale(2, 6), 6));
  CHECK(verify_reconstruction(SupernaturalScale::from_tail({1, 1, 1}), 3));
  CHECK(verify_reconstruction(factorial_scale(5), 5));

  SupernaturalScale fact = factorial_scale(5);
  GeneratorSystem sys = build_dual_system(fact, 5);
  DirectLimitGroup g = from_system(sys, 5);
  for (std::size_t n = 0; n + 1 <= 5; ++n)
    CHECK(g.connecting(n).at(0, 0) == fact.ratio(n + 1));
  CHECK(g.unit(5) == IntVector{120});
}

TEST_CASE("random divisibility chains build valid systems") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    IntVector units;
    Int u = 1;
    std::size_t depth = 3 + rng() % 3;
    for (std::size_t n = 0; n < depth; ++n) {
      u *= 1 + rng() % 4;
      units.push_back(u);
    }
    SupernaturalScale scale = SupernaturalScale::from_tail(units);
    GeneratorSystem sys = build_dual_system(scale, depth);
    CHECK(check_conditions(sys, depth).pass());
    CHECK(verify_reconstruction(scale, depth));
  }
}

TEST_CASE("coset partition of each base set") {
  SupernaturalScale fact = factorial_scale(4);
  GeneratorSystem sys = build_dual_system(fact, 4);
  for (std::size_t n = 1; n <= 4; ++n) {
    ClopenSet covered = ClopenSet::empty(sys.diagram());
    for (std::size_t s = 0; s < sys.family_size(n, 0); ++s) {
      ClopenSet image = sys.sigma(n, 0, s).range();
      CHECK(clopen_disjoint(image, covered));
      covered = clopen_union(covered, image);
    }
    CHECK(clopen_equals(covered, sys.base_clopen(n - 1, 0)));
  }
}
