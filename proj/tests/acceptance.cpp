// Acceptance suite: each criterion prints one pass/fail line with its
// wall-clock time and the binary exits nonzero if any of them fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <vector>

#include "afdg/cli.hpp"
#include "afdg/dimension_group.hpp"
#include "afdg/duality.hpp"
#include "afdg/models.hpp"
#include "afdg/words.hpp"
#include "mutations.hpp"
#include "oracles.hpp"

using namespace afdg;

namespace {

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

bool fail(std::string& why, const std::string& message) {
  why = message;
  return false;
}

// ---- 1: stationary rank-1 round trip -------------------------------------

bool criterion_car(std::string& why) {
  DirectLimitGroup car = car_group();
  for (std::size_t n = 0; n <= 30; ++n)
    if (!car_value(car.order_unit(n)).is_one())
      return fail(why, "order unit at level " + std::to_string(n));
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = rng() % 30;
    long a = static_cast<long>(rng() % 2000001) - 1000000;
    Verdict v = equal(car, {n, {a}}, {n + 1, {2 * a}}, 31);
    if (v.kind != Verdict::Kind::Equal)
      return fail(why, "doubling push not Equal for a=" + std::to_string(a));
  }
  DirectLimitGroup rebuilt = from_system(
      canonical_system(make_car_diagram(10), 10), 10);
  for (std::size_t n = 0; n < 10; ++n) {
    IntMatrix c = rebuilt.connecting(n);
    if (!(c.rows() == 1 && c.cols() == 1 && c.at(0, 0) == 2))
      return fail(why, "connecting matrix at " + std::to_string(n));
    if (rebuilt.unit(n) != IntVector{pow2(n)})
      return fail(why, "unit at " + std::to_string(n));
  }
  return true;
}

// ---- 2: column lemma ------------------------------------------------------

bool criterion_binomial_lemma(std::string& why) {
  for (std::size_t n = 1; n <= 12; ++n) {
    IntMatrix a = gicar_basis_change(n);
    for (std::size_t r = 1; r <= n + 1; ++r)
      if (gicar_binomial_column(n, r) != a.column(r - 1))
        return fail(why, "column " + std::to_string(r) + " at n=" +
                             std::to_string(n));
  }
  return true;
}

// ---- 3: cone round trip ---------------------------------------------------

bool criterion_cone_roundtrip(std::string& why) {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 8;
    IntVector alpha(n + 1);
    for (Int& x : alpha) x = static_cast<long>(rng() % 21);
    IntVector beta = gicar_phi(n, alpha).padded(n + 1);
    if (gicar_recover_alpha(n, beta) != alpha)
      return fail(why, "recovery differs at trial " + std::to_string(trial));
    if (!gicar_cone_member(n, beta))
      return fail(why, "image of a nonnegative vector left the cone");
  }
  int members = 0;
  for (long trial = 0; trial < 2000000 && members < 500; ++trial) {
    std::size_t n = 1 + rng() % 8;
    IntVector beta(n + 1);
    for (Int& x : beta) x = static_cast<long>(rng() % 7) - 3;
    if (!gicar_cone_member(n, beta)) continue;
    ++members;
    if (!vec_is_nonneg(gicar_recover_alpha(n, beta)))
      return fail(why, "cone member recovered a negative coordinate");
  }
  if (members < 500) return fail(why, "rejection sampling starved");
  return true;
}

// ---- 4: commuting triangles ----------------------------------------------

bool criterion_triangles(std::string& why) {
  DirectLimitGroup car = car_group();
  auto dyadic = [](std::size_t level, const IntVector& v) {
    return Dyadic::of(v.at(0), level);
  };
  if (!verify_cone_morphism(car, dyadic, 20, 5))
    return fail(why, "dyadic triangle");

  DirectLimitGroup hybrid = hybrid_group();
  auto hybrid_eval = [](std::size_t level, const IntVector& v) {
    return hybrid_value({level, v});
  };
  if (!verify_cone_morphism(hybrid, hybrid_eval, 10, 2))
    return fail(why, "hybrid triangle");

  DirectLimitGroup gicar = gicar_group();
  auto gicar_eval = [](std::size_t level, const IntVector& v) {
    return gicar_phi(level, v);
  };
  if (!verify_cone_morphism(gicar, gicar_eval, 10, 0))
    return fail(why, "nested-basis triangle");
  return true;
}

// ---- 5: odometer obstruction ----------------------------------------------

bool criterion_odometer(std::string& why) {
  GeneratorFamily odo = GeneratorFamily::odometer({2, 2, 2});
  SearchOutcome found = find_non_af_certificate(odo, 2, 3);
  if (!found.found()) return fail(why, "no certificate for the odometer");
  const NonAFCertificate& cert = *found.certificate;
  if (cert.word != Word{{"phi", false}, {"phi", false}})
    return fail(why, "unexpected word " + word_to_string(cert.word));
  if (cert.b_set.cylinders().size() != 1 ||
      cert.b_set.cylinders().front().depth() != 1)
    return fail(why, "B is not a depth-1 cylinder");
  std::size_t a1 = cert.b_set.cylinders().front().prefix.steps()[0].edge;
  const BratteliDiagram& d = *odo.diagram();
  PathPrefix expect_witness =
      PathPrefix::checked(d, {{0, a1}, {0, 0}, {0, 0}});
  PathPrefix expect_image = PathPrefix::checked(d, {{0, a1}, {0, 1}, {0, 0}});
  if (cert.witness.prefix != expect_witness)
    return fail(why, "witness " + cert.witness.to_string());
  if (cert.witness_image.prefix != expect_image)
    return fail(why, "image " + cert.witness_image.to_string());
  if (!validate_certificate(odo, cert))
    return fail(why, "certificate failed re-validation");

  GeneratorFamily car =
      GeneratorFamily::of_system(canonical_system(make_car_diagram(5), 5));
  if (find_non_af_certificate(car, 4, 5).found())
    return fail(why, "canonical system produced a certificate");
  return true;
}

// ---- shared random diagrams for 6-8 ----------------------------------------

std::vector<DiagramPtr> shared_diagrams() {
  std::mt19937_64 rng(2026);
  std::vector<DiagramPtr> diagrams;
  for (int i = 0; i < 20; ++i) diagrams.push_back(test::random_diagram(rng, 5));
  return diagrams;
}

// ---- 6: conditions checker -------------------------------------------------

bool criterion_conditions(const std::vector<DiagramPtr>& diagrams,
                          std::string& why) {
  int planted_i = 0, planted_ii = 0, planted_iii = 0;
  for (const DiagramPtr& d : diagrams) {
    GeneratorSystem sys = canonical_system(d, 5);
    if (!check_conditions(sys, 5).pass())
      return fail(why, "canonical system failed the checker");
    if (auto p = test::plant_condition_i(sys)) {
      if (!test::detects(*p)) return fail(why, "missed a planted (i)");
      ++planted_i;
    }
    if (auto p = test::plant_condition_ii(sys)) {
      if (!test::detects(*p)) return fail(why, "missed a planted (ii)");
      ++planted_ii;
    }
    if (auto p = test::plant_condition_iii(sys)) {
      if (!test::detects(*p)) return fail(why, "missed a planted (iii)");
      ++planted_iii;
    }
  }
  if (planted_i < 10 || planted_ii < 10 || planted_iii < 10)
    return fail(why, "mutation classes under-exercised: " +
                         std::to_string(planted_i) + "/" +
                         std::to_string(planted_ii) + "/" +
                         std::to_string(planted_iii));
  return true;
}

// ---- 7: groupoid filtration -------------------------------------------------

bool criterion_filtration(const std::vector<DiagramPtr>& diagrams,
                          std::string& why) {
  for (const DiagramPtr& d : diagrams) {
    GeneratorSystem sys = canonical_system(d, 4);
    for (std::size_t n = 1; n <= 3; ++n) {
      if (!verify_nesting(sys, n, 4))
        return fail(why, "nesting failed at level " + std::to_string(n));
      IntVector dims = dim_vector(*d, n);
      Int expected = 0;
      for (const Int& k : dims) expected += k * k;
      auto units = groupoid_level(sys, n);
      std::set<std::string> distinct;
      for (const PartialMap& m : units) distinct.insert(m.to_string());
      if (Int(units.size()) != expected || Int(distinct.size()) != expected)
        return fail(why, "matrix-unit count at level " + std::to_string(n));
    }
  }
  return true;
}

// ---- 8: connecting matrices vs edge matrices -------------------------------

bool criterion_matrix_oracle(const std::vector<DiagramPtr>& diagrams,
                             std::string& why) {
  for (const DiagramPtr& d : diagrams) {
    DirectLimitGroup g = from_system(canonical_system(d, 4), 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      if (g.connecting(n - 1) != d->edges(n).transposed())
        return fail(why, "matrix mismatch at level " + std::to_string(n));
      if (g.unit(n) != test::brute_force_path_counts(*d, n))
        return fail(why, "unit differs from walked path counts");
    }
  }
  return true;
}

// ---- 9: character-group reconstruction -------------------------------------

bool criterion_reconstruction(std::string& why) {
  // u_0..u_5 = 1,2,4,...,32: five connecting matrices, all [2]
  IntVector powers;
  Int u = 1;
  for (int i = 0; i < 5; ++i) {
    u *= 2;
    powers.push_back(u);
  }
  SupernaturalScale dyadic = SupernaturalScale::from_tail(powers);
  if (!verify_reconstruction(dyadic, 5)) return fail(why, "dyadic scale");
  DirectLimitGroup dg = from_system(build_dual_system(dyadic, 5), 5);
  for (std::size_t n = 0; n < 5; ++n) {
    if (dg.connecting(n).at(0, 0) != 2)
      return fail(why, "dyadic quotient at " + std::to_string(n));
    if (dg.unit(n) != IntVector{pow2(n)})
      return fail(why, "dyadic unit at " + std::to_string(n));
  }

  // u_0..u_4 = 1,2,6,24,120: connecting matrices [2],[3],[4],[5]
  IntVector factorials;
  u = 1;
  for (int i = 2; i <= 5; ++i) {
    u *= i;
    factorials.push_back(u);
  }
  SupernaturalScale factorial = SupernaturalScale::from_tail(factorials);
  if (!verify_reconstruction(factorial, 4)) return fail(why, "factorial scale");
  DirectLimitGroup g = from_system(build_dual_system(factorial, 4), 4);
  for (std::size_t n = 0; n < 4; ++n)
    if (g.connecting(n).at(0, 0) != Int(n + 2))
      return fail(why, "factorial quotient at " + std::to_string(n));
  for (std::size_t n = 0; n <= 4; ++n)
    if (g.unit(n) != IntVector{factorial.unit(n)})
      return fail(why, "factorial unit at " + std::to_string(n));

  std::mt19937_64 rng(2027);
  for (int trial = 0; trial < 10; ++trial) {
    IntVector units;
    Int acc = 1;
    std::size_t depth = 3 + rng() % 3;
    for (std::size_t n = 0; n < depth; ++n) {
      Int factor = 1 + rng() % 9;
      if (acc * factor > 1000000) factor = 1;
      acc *= factor;
      units.push_back(acc);
    }
    SupernaturalScale scale = SupernaturalScale::from_tail(units);
    if (!check_conditions(build_dual_system(scale, depth), depth).pass())
      return fail(why, "random chain failed the checker");
  }
  return true;
}

// ---- 10: semigroup laws ------------------------------------------------------

bool criterion_semigroup(std::string& why) {
  std::mt19937_64 rng(2028);
  for (int trial = 0; trial < 1000; ++trial) {
    auto d = test::random_diagram(rng, 4, 2, 2, 40);
    PartialMap f = test::random_map(rng, d);
    PartialMap g = test::random_map(rng, d);
    PartialMap h = test::random_map(rng, d);
    if (!(compose(f, compose(g, h)) == compose(compose(f, g), h)))
      return fail(why, "associativity");
    if (!(compose(f, compose(invert(f), f)) == f))
      return fail(why, "f f^-1 f = f");
    if (!(invert(compose(f, g)) == compose(invert(g), invert(f))))
      return fail(why, "inversion anti-homomorphism");

    auto points = test::all_points(*d, 4);
    PartialMap gf = compose(g, f);
    std::vector<Cylinder> cs;
    for (const PathPrefix& p : enumerate_all_paths(*d, 2))
      if (rng() % 2) cs.push_back(Cylinder{p});
    ClopenSet b = ClopenSet::of(d, std::move(cs));
    PartialMap fb = restrict(f, b);
    for (const auto& p : points) {
      auto via_f = test::apply_map(f, p);
      std::optional<test::Point> expected_gf;
      if (via_f) expected_gf = test::apply_map(g, *via_f);
      if (test::apply_map(gf, p) != expected_gf)
        return fail(why, "composition disagrees with pointwise oracle");
      std::optional<test::Point> expected_fb;
      if (test::point_in(b, p)) expected_fb = test::apply_map(f, p);
      if (test::apply_map(fb, p) != expected_fb)
        return fail(why, "restriction disagrees with pointwise oracle");
    }
  }
  return true;
}

} // namespace

int main() {
  std::vector<DiagramPtr> diagrams = shared_diagrams();
  std::vector<Criterion> criteria{
      {1, "stationary rank-1 round trip", 1.0, criterion_car},
      {2, "binomial column lemma (n <= 12)", 1.0, criterion_binomial_lemma},
      {3, "cone membership round trip", 5.0, criterion_cone_roundtrip},
      {4, "commuting evaluation triangles", 5.0, criterion_triangles},
      {5, "odometer obstruction and clean search", 10.0, criterion_odometer},
      {6, "conditions checker with planted violations", 10.0,
       [&](std::string& why) { return criterion_conditions(diagrams, why); }},
      {7, "groupoid filtration and matrix-unit counts", 10.0,
       [&](std::string& why) { return criterion_filtration(diagrams, why); }},
      {8, "connecting matrices vs path counting", 5.0,
       [&](std::string& why) { return criterion_matrix_oracle(diagrams, why); }},
      {9, "scale reconstruction round trip", 5.0, criterion_reconstruction},
      {10, "semigroup laws and pointwise oracles", 10.0, criterion_semigroup},
  };

  int failures = 0;
  for (Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string why;
    bool ok = false;
    try {
      ok = c.body(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.budget_seconds) {
      ok = false;
      why = "over time budget (" + std::to_string(c.budget_seconds) + " s)";
    }
    std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL",
                c.number, c.title, seconds, why.empty() ? "" : " - ",
                why.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
