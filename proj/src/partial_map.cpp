#include "afdg/partial_map.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace afdg {

namespace {

void require_rule_shape(const PrefixSwap& rule) {
  if (rule.source.level() != rule.target.level())
    raise(errc::invalid_path, "prefix swap with mismatched depths");
  if (rule.source.terminal_vertex() != rule.target.terminal_vertex())
    raise(errc::invalid_path, "prefix swap with mismatched terminal vertices");
}

// Replace every complete tail-identical sibling family { (sp·e, tp·e) }
// over the full out-bundle of sp's terminal by the parent rule (sp, tp).
// Returns true when anything changed; iterated to a fixpoint by the
// caller so freshly created parents can coalesce again.
bool coalesce_pass(const BratteliDiagram& diagram,
                   std::vector<PrefixSwap>& rules) {
  bool changed = false;
  std::size_t max_depth = 0;
  for (const PrefixSwap& r : rules) max_depth = std::max(max_depth, r.depth());
  for (std::size_t d = max_depth; d >= 1; --d) {
    using Key = std::pair<std::vector<PathStep>, std::vector<PathStep>>;
    std::map<Key, std::vector<std::size_t>> families;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const PrefixSwap& r = rules[i];
      if (r.depth() != d) continue;
      if (r.source.steps().back().edge != r.target.steps().back().edge)
        continue;
      PathPrefix sp = r.source.truncated(d - 1);
      PathPrefix tp = r.target.truncated(d - 1);
      if (sp.terminal_vertex() != tp.terminal_vertex()) continue;
      families[{sp.steps(), tp.steps()}].push_back(i);
    }
    std::vector<bool> dead(rules.size(), false);
    std::vector<PrefixSwap> created;
    for (auto& [key, members] : families) {
      const PrefixSwap& first = rules[members.front()];
      PathPrefix sp = first.source.truncated(d - 1);
      PathPrefix tp = first.target.truncated(d - 1);
      std::size_t bundle =
          diagram.out_degree(d - 1, sp.terminal_vertex());
      std::vector<std::size_t> edges;
      for (std::size_t i : members)
        edges.push_back(rules[i].source.steps().back().edge);
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      if (bundle > 0 && edges.size() == bundle) {
        for (std::size_t i : members) dead[i] = true;
        created.push_back(PrefixSwap{std::move(sp), std::move(tp)});
        changed = true;
      }
    }
    if (!created.empty()) {
      std::vector<PrefixSwap> next;
      for (std::size_t i = 0; i < rules.size(); ++i)
        if (!dead[i]) next.push_back(std::move(rules[i]));
      next.insert(next.end(), created.begin(), created.end());
      rules = std::move(next);
    }
  }
  return changed;
}

void require_disjoint_sources_and_targets(std::vector<PrefixSwap>& rules) {
  for (std::size_t i = 1; i < rules.size(); ++i)
    if (rules[i - 1].source.is_prefix_of(rules[i].source))
      raise(errc::invalid_path, "rule sources overlap: " +
                                    rules[i - 1].source.to_string() + " and " +
                                    rules[i].source.to_string());
  std::vector<const PrefixSwap*> by_target;
  for (const PrefixSwap& r : rules) by_target.push_back(&r);
  std::sort(by_target.begin(), by_target.end(),
            [](const PrefixSwap* a, const PrefixSwap* b) {
              return a->target < b->target;
            });
  for (std::size_t i = 1; i < by_target.size(); ++i)
    if (by_target[i - 1]->target.is_prefix_of(by_target[i]->target))
      raise(errc::invalid_path, "rule targets overlap: " +
                                    by_target[i - 1]->target.to_string() +
                                    " and " + by_target[i]->target.to_string());
}

} // namespace

PartialMap PartialMap::empty(DiagramPtr diagram) {
  PartialMap m;
  m.diagram_ = std::move(diagram);
  return m;
}

PartialMap PartialMap::of(DiagramPtr diagram, std::vector<PrefixSwap> rules) {
  for (const PrefixSwap& r : rules) require_rule_shape(r);
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  if (diagram)
    while (coalesce_pass(*diagram, rules)) {
    }
  std::sort(rules.begin(), rules.end());
  require_disjoint_sources_and_targets(rules);
  PartialMap m;
  m.diagram_ = std::move(diagram);
  m.rules_ = std::move(rules);
  return m;
}

PartialMap PartialMap::swap(DiagramPtr diagram, PathPrefix source,
                            PathPrefix target) {
  return of(std::move(diagram),
            {PrefixSwap{std::move(source), std::move(target)}});
}

PartialMap PartialMap::identity_on(const ClopenSet& set) {
  std::vector<PrefixSwap> rules;
  for (const Cylinder& c : set.cylinders())
    rules.push_back(PrefixSwap{c.prefix, c.prefix});
  return of(set.diagram(), std::move(rules));
}

bool PartialMap::is_identity() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const PrefixSwap& r) { return r.is_identity(); });
}

ClopenSet PartialMap::domain() const {
  std::vector<Cylinder> cs;
  for (const PrefixSwap& r : rules_) cs.push_back(Cylinder{r.source});
  return ClopenSet::of(diagram_, std::move(cs));
}

ClopenSet PartialMap::range() const {
  std::vector<Cylinder> cs;
  for (const PrefixSwap& r : rules_) cs.push_back(Cylinder{r.target});
  return ClopenSet::of(diagram_, std::move(cs));
}

ClopenSet PartialMap::image_of(const ClopenSet& set) const {
  return restrict(*this, set).range();
}

PartialMap::CylinderImage PartialMap::apply_to_cylinder(
    const Cylinder& c) const {
  bool partial = false;
  for (const PrefixSwap& r : rules_) {
    if (r.source.is_prefix_of(c.prefix))
      return {Coverage::Full,
              Cylinder{PathPrefix::grafted(r.target, c.prefix, r.depth())}};
    if (c.prefix.is_prefix_of(r.source)) partial = true;
  }
  return {partial ? Coverage::Partial : Coverage::None, Cylinder{}};
}

std::size_t PartialMap::max_rule_depth() const {
  std::size_t d = 0;
  for (const PrefixSwap& r : rules_) d = std::max(d, r.depth());
  return d;
}

std::string PartialMap::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (i) os << ',';
    os << rules_[i].source.to_string() << "->" << rules_[i].target.to_string();
  }
  os << '}';
  return os.str();
}

PartialMap compose(const PartialMap& g, const PartialMap& f) {
  if (!same_diagram(g.diagram(), f.diagram()))
    raise(errc::diagram_mismatch, "composing maps over different diagrams");
  DiagramPtr diagram = f.diagram() ? f.diagram() : g.diagram();
  std::vector<PrefixSwap> rules;
  for (const PrefixSwap& rf : f.rules()) {
    for (const PrefixSwap& rg : g.rules()) {
      if (rg.source.is_prefix_of(rf.target)) {
        // all of rf's image feeds through rg
        rules.push_back(PrefixSwap{
            rf.source,
            PathPrefix::grafted(rg.target, rf.target, rg.depth())});
      } else if (rf.target.is_prefix_of(rg.source)) {
        // only the sub-cylinder of rf's source matching rg's domain
        rules.push_back(PrefixSwap{
            PathPrefix::grafted(rf.source, rg.source, rf.depth()),
            rg.target});
      }
    }
  }
  return PartialMap::of(std::move(diagram), std::move(rules));
}

PartialMap invert(const PartialMap& f) {
  std::vector<PrefixSwap> rules;
  for (const PrefixSwap& r : f.rules())
    rules.push_back(PrefixSwap{r.target, r.source});
  return PartialMap::of(f.diagram(), std::move(rules));
}

PartialMap restrict(const PartialMap& f, const ClopenSet& b) {
  if (!same_diagram(f.diagram(), b.diagram()))
    raise(errc::diagram_mismatch, "restricting to a set over another diagram");
  DiagramPtr diagram = f.diagram() ? f.diagram() : b.diagram();
  std::vector<PrefixSwap> rules;
  for (const PrefixSwap& r : f.rules()) {
    ClopenSet part = clopen_intersect(
        ClopenSet::single(diagram, Cylinder{r.source}), b);
    for (const Cylinder& u : part.cylinders()) {
      // Normalization can coalesce along multiplicity-one bundles, so u
      // may sit above r.source; split it back to the rule depth first.
      for (const PathPrefix& v :
           refine_prefix(*diagram, u.prefix, std::max(u.depth(), r.depth()))) {
        rules.push_back(
            PrefixSwap{v, PathPrefix::grafted(r.target, v, r.depth())});
      }
    }
  }
  return PartialMap::of(std::move(diagram), std::move(rules));
}

} // namespace afdg
