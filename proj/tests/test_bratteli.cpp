#include <doctest.h>

#include "afdg/models.hpp"
#include "oracles.hpp"

using namespace afdg;

TEST_CASE("validate accepts the stationary and Pascal diagrams") {
  CHECK(!validate(*make_car_diagram(4)));
  CHECK(!validate(*make_gicar_diagram(6)));
  CHECK(!validate(*make_cantor_diagram(4)));
}

TEST_CASE("validate reports the first defect with its location") {
  IntMatrix zero(1, 1);
  auto d = BratteliDiagram::make({zero});
  auto defect = validate(*d);
  REQUIRE(defect);
  CHECK(defect->kind == DiagramDefect::Kind::ZeroColumn);
  CHECK(defect->level == 1);

  IntMatrix neg(1, 1);
  neg.at(0, 0) = -1;
  auto defect2 = validate(BratteliDiagram({neg}));
  REQUIRE(defect2);
  CHECK(defect2->kind == DiagramDefect::Kind::NegativeEntry);

  IntMatrix a(1, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 1;
  IntMatrix b(3, 1); // wrong row count
  b.at(0, 0) = 1;
  b.at(1, 0) = 1;
  b.at(2, 0) = 1;
  auto defect3 = validate(BratteliDiagram({a, b}));
  REQUIRE(defect3);
  CHECK(defect3->kind == DiagramDefect::Kind::ShapeMismatch);
  CHECK(defect3->level == 2);

  IntMatrix row_dead(2, 2);
  row_dead.at(0, 0) = 1;
  row_dead.at(0, 1) = 1; // second row all zero
  auto defect4 = validate(BratteliDiagram({a, row_dead}));
  REQUIRE(defect4);
  CHECK(defect4->kind == DiagramDefect::Kind::ZeroRow);
}

TEST_CASE("dim_vector follows the path counts") {
  auto car = make_car_diagram(6);
  CHECK(dim_vector(*car, 0) == IntVector{1});
  CHECK(dim_vector(*car, 5) == IntVector{32});

  auto gicar = make_gicar_diagram(6);
  CHECK(dim_vector(*gicar, 4) == IntVector{1, 4, 6, 4, 1});
  // against the recursive walker
  CHECK(dim_vector(*gicar, 4) == test::brute_force_path_counts(*gicar, 4));

  CHECK_THROWS_AS((void)dim_vector(*car, 7), Error);
}

TEST_CASE("dim_vector recurrence dim(n+1) = dim(n) * E_{n+1}") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = test::random_diagram(rng, 4);
    for (std::size_t n = 0; n + 1 <= 4; ++n) {
      IntVector lhs = dim_vector(*d, n + 1);
      IntVector cur = dim_vector(*d, n);
      const IntMatrix& e = d->edges(n + 1);
      IntVector rhs(e.cols());
      for (std::size_t j = 0; j < e.cols(); ++j)
        for (std::size_t i = 0; i < e.rows(); ++i)
          rhs[j] += cur[i] * e.at(i, j);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("enumerate_paths is lexicographic and complete") {
  auto car = make_car_diagram(3);
  auto paths = enumerate_paths(*car, 2, 0);
  REQUIRE(paths.size() == 4);
  CHECK(paths[0].steps() == std::vector<PathStep>{{0, 0}, {0, 0}});
  CHECK(paths[1].steps() == std::vector<PathStep>{{0, 0}, {0, 1}});
  CHECK(paths[2].steps() == std::vector<PathStep>{{0, 1}, {0, 0}});
  CHECK(paths[3].steps() == std::vector<PathStep>{{0, 1}, {0, 1}});

  CHECK(enumerate_paths(*car, 0, 0) == std::vector<PathPrefix>{PathPrefix{}});

  auto gicar = make_gicar_diagram(3);
  CHECK(enumerate_paths(*gicar, 2, 1).size() == 2); // middle vertex

  CHECK_THROWS_AS((void)enumerate_paths(*gicar, 2, 5), Error);
}

TEST_CASE("canonical base sets are first paths, disjoint at a level") {
  auto gicar = make_gicar_diagram(4);
  CHECK(canonical_base_set(*gicar, 0, 0).prefix.empty());

  auto car = make_car_diagram(4);
  Cylinder b3 = canonical_base_set(*car, 3, 0);
  CHECK(b3.prefix.steps() == std::vector<PathStep>{{0, 0}, {0, 0}, {0, 0}});

  // single edge into vertex 2 (0-based) at level 1
  Cylinder b = canonical_base_set(*gicar, 1, 1);
  CHECK(b.prefix.steps() == std::vector<PathStep>{{0, 1}});

  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t r = 0; r < gicar->vertices_at(n); ++r)
      for (std::size_t q = r + 1; q < gicar->vertices_at(n); ++q) {
        auto cr = ClopenSet::single(gicar, canonical_base_set(*gicar, n, r));
        auto cq = ClopenSet::single(gicar, canonical_base_set(*gicar, n, q));
        CHECK(clopen_disjoint(cr, cq));
      }
  }
}

TEST_CASE("refine splits cylinders exactly") {
  auto car = make_car_diagram(3);
  PathPrefix zero = PathPrefix::checked(*car, {{0, 0}});
  auto split = refine(ClopenSet::single(car, Cylinder{zero}), 2);
  REQUIRE(split.size() == 2);
  CHECK(split[0].prefix.steps() == std::vector<PathStep>{{0, 0}, {0, 0}});
  CHECK(split[1].prefix.steps() == std::vector<PathStep>{{0, 0}, {0, 1}});

  CHECK(refine(ClopenSet::empty(car), 3).empty());

  auto gicar = make_gicar_diagram(3);
  auto all = refine(ClopenSet::whole_space(gicar), 2);
  CHECK(all.size() == 4); // 1 + 2 + 1 paths

  CHECK_THROWS_AS((void)refine(ClopenSet::single(car, Cylinder{zero}), 0),
                  Error);
}

TEST_CASE("normal form coalesces complete sibling families") {
  auto car = make_car_diagram(3);
  auto deep = refine(ClopenSet::whole_space(car), 3);
  REQUIRE(deep.size() == 8);
  ClopenSet rebuilt = ClopenSet::of(car, deep);
  CHECK(clopen_equals(rebuilt, ClopenSet::whole_space(car)));
  CHECK(rebuilt.cylinders().size() == 1);
  CHECK(rebuilt.cylinders().front().depth() == 0);
}

TEST_CASE("refine then union is the identity on clopen values") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = test::random_diagram(rng, 4);
    auto points = test::all_points(*d, 3);
    std::vector<Cylinder> chosen;
    for (const auto& p : points)
      if (rng() % 2)
        chosen.push_back(Cylinder{PathPrefix::checked(*d, p)});
    ClopenSet s = ClopenSet::of(d, chosen);
    ClopenSet back = ClopenSet::of(d, refine(s, 4));
    CHECK(clopen_equals(back, s));
    CHECK(back.cylinders() == s.cylinders());
  }
}

TEST_CASE("clopen algebra agrees with the bitmask oracle") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    auto d = test::random_diagram(rng, 4);
    auto points = test::all_points(*d, 4);

    auto random_set = [&](std::size_t depth) {
      std::vector<Cylinder> cs;
      for (const PathPrefix& p : enumerate_all_paths(*d, depth))
        if (rng() % 3 == 0) cs.push_back(Cylinder{p});
      return ClopenSet::of(d, std::move(cs));
    };
    ClopenSet a = random_set(2);
    ClopenSet b = random_set(3);

    auto ba = test::bitmask(a, points);
    auto bb = test::bitmask(b, points);

    auto check_op = [&](const ClopenSet& result, auto combine) {
      auto bits = test::bitmask(result, points);
      for (std::size_t i = 0; i < points.size(); ++i)
        CHECK(bits[i] == combine(ba[i], bb[i]));
    };
    check_op(clopen_union(a, b), [](bool x, bool y) { return x || y; });
    check_op(clopen_intersect(a, b), [](bool x, bool y) { return x && y; });
    check_op(clopen_difference(a, b), [](bool x, bool y) { return x && !y; });

    CHECK(clopen_equals(a, b) == (ba == bb));
  }
}

TEST_CASE("basic identities of the set algebra") {
  auto car = make_car_diagram(4);
  PathPrefix zero = PathPrefix::checked(*car, {{0, 0}});
  PathPrefix zero_one = PathPrefix::checked(*car, {{0, 0}, {0, 1}});
  ClopenSet a = ClopenSet::single(car, Cylinder{zero});

  CHECK(clopen_equals(clopen_union(a, ClopenSet::empty(car)), a));
  // nesting: (0) meet (0,1) is (0,1)
  ClopenSet inner = ClopenSet::single(car, Cylinder{zero_one});
  CHECK(clopen_equals(clopen_intersect(a, inner), inner));
}

TEST_CASE("operations refuse mismatched diagrams") {
  auto car = make_car_diagram(3);
  auto gicar = make_gicar_diagram(3);
  ClopenSet a = ClopenSet::whole_space(car);
  ClopenSet b = ClopenSet::whole_space(gicar);
  CHECK_THROWS_AS((void)clopen_union(a, b), Error);
}

TEST_CASE("path prefixes validate against the diagram shape") {
  auto gicar = make_gicar_diagram(3);
  CHECK_THROWS_AS((void)PathPrefix::checked(*gicar, {{0, 5}}), Error);
  CHECK_THROWS_AS((void)PathPrefix::checked(*gicar, {{1, 0}}), Error);
  PathPrefix ok = PathPrefix::checked(*gicar, {{0, 1}, {1, 0}});
  CHECK(ok.terminal_vertex() == 1);
}
