#include "afdg/generator_system.hpp"

#include <algorithm>
#include <set>

namespace afdg {

GeneratorSystem::GeneratorSystem(
    DiagramPtr diagram, std::vector<std::vector<std::vector<PartialMap>>> sigma,
    std::vector<std::vector<Cylinder>> base_sets)
    : diagram_(std::move(diagram)),
      sigma_(std::move(sigma)),
      base_sets_(std::move(base_sets)) {
  if (!diagram_) raise(errc::invalid_diagram, "generator system needs a diagram");
  if (sigma_.size() != base_sets_.size())
    raise(errc::invalid_diagram, "generator levels and base-set levels differ");
  for (std::size_t n = 1; n <= sigma_.size(); ++n) {
    if (sigma_[n - 1].size() != diagram_->vertices_at(n) ||
        base_sets_[n - 1].size() != sigma_[n - 1].size())
      raise(errc::invalid_diagram,
            "vertex count mismatch at level " + std::to_string(n));
    for (std::size_t r = 0; r < sigma_[n - 1].size(); ++r) {
      if (sigma_[n - 1][r].size() != diagram_->in_degree(n, r))
        raise(errc::invalid_diagram,
              "family size differs from the incoming edge count at level " +
                  std::to_string(n));
      ClopenSet base = base_clopen(n, r);
      for (const PartialMap& m : sigma_[n - 1][r])
        if (!clopen_equals(m.domain(), base))
          raise(errc::invalid_diagram,
                "generator domain differs from its base set at level " +
                    std::to_string(n));
    }
    // base sets at a fixed level are pairwise disjoint
    for (std::size_t r = 0; r < base_sets_[n - 1].size(); ++r)
      for (std::size_t q = r + 1; q < base_sets_[n - 1].size(); ++q)
        if (base_sets_[n - 1][r].prefix.is_prefix_of(
                base_sets_[n - 1][q].prefix) ||
            base_sets_[n - 1][q].prefix.is_prefix_of(
                base_sets_[n - 1][r].prefix))
          raise(errc::invalid_diagram,
                "base sets overlap at level " + std::to_string(n));
  }
}

std::size_t GeneratorSystem::vertices_at(std::size_t n) const {
  if (n == 0) return 1;
  if (n > sigma_.size())
    raise(errc::level_out_of_range,
          "system has " + std::to_string(sigma_.size()) + " levels");
  return sigma_[n - 1].size();
}

std::size_t GeneratorSystem::family_size(std::size_t n, std::size_t r) const {
  if (n == 0 || n > sigma_.size())
    raise(errc::level_out_of_range, "no generators at level " + std::to_string(n));
  if (r >= sigma_[n - 1].size())
    raise(errc::vertex_out_of_range, "vertex " + std::to_string(r));
  return sigma_[n - 1][r].size();
}

const PartialMap& GeneratorSystem::sigma(std::size_t n, std::size_t r,
                                         std::size_t s) const {
  if (s >= family_size(n, r))
    raise(errc::index_out_of_range, "generator index " + std::to_string(s));
  return sigma_[n - 1][r][s];
}

Cylinder GeneratorSystem::base_set(std::size_t n, std::size_t r) const {
  if (n == 0) {
    if (r != 0) raise(errc::vertex_out_of_range, "level 0 has one vertex");
    return Cylinder{};
  }
  if (n > sigma_.size())
    raise(errc::level_out_of_range, "no base sets at level " + std::to_string(n));
  if (r >= base_sets_[n - 1].size())
    raise(errc::vertex_out_of_range, "vertex " + std::to_string(r));
  return base_sets_[n - 1][r];
}

ClopenSet GeneratorSystem::base_clopen(std::size_t n, std::size_t r) const {
  return ClopenSet::single(diagram_, base_set(n, r));
}

ClopenSet GeneratorSystem::u_set(std::size_t n) const {
  if (n == 0) return ClopenSet::whole_space(diagram_);
  std::vector<Cylinder> cs;
  for (std::size_t r = 0; r < vertices_at(n); ++r)
    cs.push_back(base_set(n, r));
  return ClopenSet::of(diagram_, std::move(cs));
}

GeneratorSystem GeneratorSystem::with_generator(std::size_t n, std::size_t r,
                                                std::size_t s,
                                                PartialMap replacement) const {
  auto sigma = sigma_;
  sigma.at(n - 1).at(r).at(s) = std::move(replacement);
  return GeneratorSystem(diagram_, std::move(sigma), base_sets_);
}

GeneratorSystem canonical_system(DiagramPtr diagram, std::size_t levels) {
  require_valid(*diagram);
  if (levels > diagram->num_levels())
    raise(errc::level_out_of_range,
          "requested " + std::to_string(levels) + " levels of a depth-" +
              std::to_string(diagram->num_levels()) + " diagram");
  std::vector<std::vector<std::vector<PartialMap>>> sigma(levels);
  std::vector<std::vector<Cylinder>> bases(levels);
  std::vector<PathPrefix> below = canonical_paths(*diagram, 0);
  for (std::size_t n = 1; n <= levels; ++n) {
    std::vector<PathPrefix> here = canonical_paths(*diagram, n);
    std::size_t m = diagram->vertices_at(n);
    sigma[n - 1].resize(m);
    bases[n - 1].reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
      bases[n - 1].push_back(Cylinder{here[r]});
      // Candidate targets: every one-edge extension of a canonical
      // level-(n-1) path that lands on r, ordered lexicographically.
      // The least candidate is the canonical path into r itself, so the
      // first generator comes out as the identity.
      std::vector<PathPrefix> targets;
      const IntMatrix& e = diagram->edges(n);
      for (std::size_t i = 0; i < e.rows(); ++i) {
        std::size_t mult = 0;
        if (e.at(i, r) > 0) mult = static_cast<std::size_t>(e.at(i, r));
        for (std::size_t slot = 0; slot < mult; ++slot) {
          std::size_t flat = diagram->flat_edge_index(n - 1, i, r, slot);
          targets.push_back(below[i].extended(*diagram, flat));
        }
      }
      std::sort(targets.begin(), targets.end());
      for (PathPrefix& t : targets)
        sigma[n - 1][r].push_back(
            PartialMap::swap(diagram, here[r], std::move(t)));
    }
    below = std::move(here);
  }
  return GeneratorSystem(std::move(diagram), std::move(sigma),
                         std::move(bases));
}

ConditionsReport check_conditions(const GeneratorSystem& system,
                                  std::size_t up_to) {
  if (up_to > system.levels())
    raise(errc::level_out_of_range,
          "system defined through level " + std::to_string(system.levels()));
  for (std::size_t n = 1; n <= up_to; ++n) {
    for (std::size_t r = 0; r < system.vertices_at(n); ++r) {
      const PartialMap identity =
          PartialMap::identity_on(system.base_clopen(n, r));
      if (!(system.sigma(n, r, 0) == identity))
        return {ConditionsViolation{
            ConditionsViolation::Which::ConditionI, n, r, 0,
            "first generator of vertex " + std::to_string(r + 1) +
                " at level " + std::to_string(n) + " is not the identity"}};
    }
    std::size_t below = system.vertices_at(n - 1);
    for (std::size_t r = 0; r < system.vertices_at(n); ++r) {
      for (std::size_t s = 0; s < system.family_size(n, r); ++s) {
        ClopenSet image = system.sigma(n, r, s).range();
        std::size_t hits = 0;
        for (std::size_t i = 0; i < below; ++i)
          if (clopen_subset(image, system.base_clopen(n - 1, i))) ++hits;
        if (hits == 0)
          return {ConditionsViolation{
              ConditionsViolation::Which::ConditionII, n, r, s,
              "image of generator " + std::to_string(s + 1) + " of vertex " +
                  std::to_string(r + 1) + " at level " + std::to_string(n) +
                  " lies in no single level-" + std::to_string(n - 1) +
                  " base set"}};
        // disjointness of the base sets makes the witness unique
      }
    }
    ClopenSet covered = ClopenSet::empty(system.diagram());
    for (std::size_t r = 0; r < system.vertices_at(n); ++r) {
      for (std::size_t s = 0; s < system.family_size(n, r); ++s) {
        ClopenSet image = system.sigma(n, r, s).range();
        if (!clopen_disjoint(image, covered))
          return {ConditionsViolation{
              ConditionsViolation::Which::ConditionIII, n, r, s,
              "image of generator " + std::to_string(s + 1) + " of vertex " +
                  std::to_string(r + 1) + " at level " + std::to_string(n) +
                  " overlaps an earlier image"}};
        covered = clopen_union(covered, image);
      }
    }
    if (!clopen_equals(covered, system.u_set(n - 1))) {
      std::size_t r = system.vertices_at(n) - 1;
      return {ConditionsViolation{
          ConditionsViolation::Which::ConditionIII, n, r,
          system.family_size(n, r) - 1,
          "generator images at level " + std::to_string(n) +
              " do not cover U_" + std::to_string(n - 1)}};
    }
  }
  return {};
}

std::vector<TauFamily> build_tau_through(const GeneratorSystem& system,
                                         std::size_t n) {
  ConditionsReport report = check_conditions(system, n);
  if (!report.pass())
    raise(errc::conditions_violated, report.violation->message);
  std::vector<TauFamily> levels;
  levels.reserve(n);
  for (std::size_t t = 1; t <= n; ++t) {
    TauFamily tau(system.vertices_at(t));
    for (std::size_t r = 0; r < system.vertices_at(t); ++r) {
      if (t == 1) {
        for (std::size_t s = 0; s < system.family_size(1, r); ++s)
          tau[r].push_back(system.sigma(1, r, s));
        continue;
      }
      const TauFamily& prev = levels.back();
      // every defined composition tau_{i,s'} o sigma_{r,s}, ordered by
      // (s', s)
      std::vector<std::pair<std::pair<std::size_t, std::size_t>, PartialMap>>
          built;
      for (std::size_t s = 0; s < system.family_size(t, r); ++s) {
        const PartialMap& sg = system.sigma(t, r, s);
        ClopenSet image = sg.range();
        for (std::size_t i = 0; i < system.vertices_at(t - 1); ++i) {
          if (!clopen_subset(image, system.base_clopen(t - 1, i))) continue;
          for (std::size_t sp = 0; sp < prev[i].size(); ++sp)
            built.emplace_back(std::make_pair(sp, s),
                               compose(prev[i][sp], sg));
          break; // the containing base set is unique
        }
      }
      std::sort(built.begin(), built.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      ClopenSet base = system.base_clopen(t, r);
      for (auto& [key, map] : built) {
        if (!clopen_equals(map.domain(), base))
          raise(errc::conditions_violated,
                "tau composition is not everywhere defined on its base set");
        tau[r].push_back(std::move(map));
      }
    }
    // the level-t images must partition the whole space
    std::vector<Cylinder> images;
    for (const auto& family : tau)
      for (const PartialMap& m : family) {
        ClopenSet range = m.range();
        for (const Cylinder& c : range.cylinders()) images.push_back(c);
      }
    std::vector<Cylinder> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i - 1].prefix.is_prefix_of(sorted[i].prefix))
        raise(errc::conditions_violated,
              "tau images overlap at level " + std::to_string(t));
    if (!clopen_equals(ClopenSet::of(system.diagram(), std::move(images)),
                       ClopenSet::whole_space(system.diagram())))
      raise(errc::conditions_violated,
            "tau images do not cover the space at level " + std::to_string(t));
    levels.push_back(std::move(tau));
  }
  return levels;
}

TauFamily build_tau(const GeneratorSystem& system, std::size_t n) {
  return build_tau_through(system, n).back();
}

std::vector<PartialMap> groupoid_level(const GeneratorSystem& system,
                                       std::size_t n) {
  TauFamily tau = build_tau(system, n);
  std::vector<PartialMap> units;
  for (const auto& family : tau)
    for (const PartialMap& a : family)
      for (const PartialMap& b : family) units.push_back(compose(a, invert(b)));
  return units;
}

namespace {

using GraphPair = std::pair<std::vector<PathStep>, std::vector<PathStep>>;

std::set<GraphPair> graph_pairs(const BratteliDiagram& diagram,
                                const std::vector<PartialMap>& maps,
                                std::size_t depth) {
  std::set<GraphPair> pairs;
  for (const PartialMap& m : maps) {
    if (m.max_rule_depth() > depth)
      raise(errc::depth_too_shallow,
            "graph comparison depth below rule depth");
    for (const PrefixSwap& r : m.rules()) {
      for (const PathPrefix& x :
           refine_prefix(diagram, r.source, depth)) {
        PathPrefix y = PathPrefix::grafted(r.target, x, r.depth());
        pairs.emplace(x.steps(), y.steps());
      }
    }
  }
  return pairs;
}

} // namespace

bool verify_nesting(const GeneratorSystem& system, std::size_t n,
                    std::size_t depth) {
  auto lower = graph_pairs(*system.diagram(), groupoid_level(system, n), depth);
  auto upper =
      graph_pairs(*system.diagram(), groupoid_level(system, n + 1), depth);
  return std::includes(upper.begin(), upper.end(), lower.begin(), lower.end());
}

} // namespace afdg
