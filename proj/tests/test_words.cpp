#include <doctest.h>

#include "afdg/models.hpp"
#include "afdg/words.hpp"

using namespace afdg;

namespace {

Cylinder digit_cylinder(const BratteliDiagram& d,
                        std::vector<std::size_t> digits) {
  PathPrefix p;
  for (std::size_t e : digits) p = p.extended(d, e);
  return Cylinder{p};
}

} // namespace

TEST_CASE("odometer increments with carry, little-endian") {
  GeneratorFamily fam = GeneratorFamily::odometer({2, 2, 2});
  const BratteliDiagram& d = *fam.diagram();

  // 110 -> 001 (3 + 1 = 4)
  auto out = word_image(fam, {{"phi", false}}, digit_cylinder(d, {1, 1, 0}));
  CHECK(out.image == digit_cylinder(d, {0, 0, 1}));
  CHECK(out.tail_identity);

  // phi^2 on (a,0,0) -> (a,1,0)
  for (std::size_t a : {0u, 1u}) {
    auto sq = word_image(fam, {{"phi", false}, {"phi", false}},
                         digit_cylinder(d, {a, 0, 0}));
    CHECK(sq.image == digit_cylinder(d, {a, 1, 0}));
    CHECK(sq.tail_identity);
  }

  // phi then phi^-1 cancels exactly, even where phi alone carries
  auto cancel = word_image(fam, {{"phi", false}, {"phi", true}},
                           digit_cylinder(d, {1, 1, 1}));
  CHECK(cancel.image == digit_cylinder(d, {1, 1, 1}));
  CHECK(cancel.tail_identity);

  // carry past the working depth wraps the prefix and drops the flag
  auto wrap = word_image(fam, {{"phi", false}}, digit_cylinder(d, {1, 1, 1}));
  CHECK(wrap.image == digit_cylinder(d, {0, 0, 0}));
  CHECK(!wrap.tail_identity);
}

TEST_CASE("word evaluation catches bad input") {
  GeneratorFamily fam = GeneratorFamily::odometer({2, 2});
  const BratteliDiagram& d = *fam.diagram();
  CHECK_THROWS_AS(
      (void)word_image(fam, {{"psi", false}}, digit_cylinder(d, {0})), Error);
  CHECK_THROWS_AS((void)word_image(fam, {}, digit_cylinder(d, {0})), Error);
}

TEST_CASE("mixed swap letters act on covered cylinders only") {
  auto car = make_car_diagram(3);
  GeneratorSystem sys = canonical_system(car, 2);
  GeneratorFamily fam = GeneratorFamily::of_system(sys);
  const BratteliDiagram& d = *car;

  // sigma(1,1,2) swaps the level-1 cylinders
  auto moved = word_image(fam, {{"sigma(1,1,2)", false}},
                          digit_cylinder(d, {0, 1}));
  CHECK(moved.image == digit_cylinder(d, {1, 1}));
  CHECK(moved.tail_identity);

  // not defined anywhere on (1,...)
  CHECK_THROWS_AS((void)word_image(fam, {{"sigma(1,1,2)", false}},
                                   digit_cylinder(d, {1, 1})),
                  Error);
}

TEST_CASE("base-2 odometer yields the square-word certificate") {
  GeneratorFamily fam = GeneratorFamily::odometer({2, 2, 2});
  const BratteliDiagram& d = *fam.diagram();
  SearchOutcome outcome = find_non_af_certificate(fam, 2, 3);
  REQUIRE(outcome.found());
  const NonAFCertificate& cert = *outcome.certificate;
  CHECK(cert.word == Word{{"phi", false}, {"phi", false}});
  CHECK(clopen_equals(cert.b_set,
                      ClopenSet::single(fam.diagram(),
                                        digit_cylinder(d, {0}))));
  CHECK(cert.witness == digit_cylinder(d, {0, 0, 0}));
  CHECK(cert.witness_image == digit_cylinder(d, {0, 1, 0}));
  CHECK(validate_certificate(fam, cert));
}

TEST_CASE("mixed-base odometer also fails to be AF") {
  GeneratorFamily fam = GeneratorFamily::odometer({2, 3, 2});
  SearchOutcome outcome = find_non_af_certificate(fam, 3, 3);
  REQUIRE(outcome.found());
  CHECK(validate_certificate(fam, *outcome.certificate));
}

TEST_CASE("canonical systems admit no certificate") {
  auto car = make_car_diagram(4);
  GeneratorFamily fam =
      GeneratorFamily::of_system(canonical_system(car, 4));
  SearchOutcome outcome = find_non_af_certificate(fam, 3, 4);
  CHECK(!outcome.found());
  CHECK(outcome.max_word_len == 3);
  CHECK(outcome.max_depth == 4);
}

TEST_CASE("the identity generator alone never certifies") {
  auto car = make_car_diagram(3);
  GeneratorFamily fam(car);
  fam.add("e", PartialMap::identity_on(ClopenSet::whole_space(car)));
  CHECK(!find_non_af_certificate(fam, 3, 3).found());
}

TEST_CASE("certificates survive re-validation, forgeries do not") {
  GeneratorFamily fam = GeneratorFamily::odometer({2, 2, 2});
  const BratteliDiagram& d = *fam.diagram();
  NonAFCertificate cert{Word{{"phi", false}, {"phi", false}},
                        ClopenSet::single(fam.diagram(),
                                          digit_cylinder(d, {0})),
                        digit_cylinder(d, {0, 0, 0}),
                        digit_cylinder(d, {0, 1, 0})};
  CHECK(validate_certificate(fam, cert));

  // phi does not fix the cylinder (0), so the single-letter word fails
  NonAFCertificate bad = cert;
  bad.word = Word{{"phi", false}};
  CHECK(!validate_certificate(fam, bad));

  // a witness outside B fails
  NonAFCertificate outside = cert;
  outside.witness = digit_cylinder(d, {1, 0, 0});
  CHECK(!validate_certificate(fam, outside));

  // phi phi^-1 fixes B but moves nothing
  NonAFCertificate lazy = cert;
  lazy.word = Word{{"phi", false}, {"phi", true}};
  CHECK(!validate_certificate(fam, lazy));
}
