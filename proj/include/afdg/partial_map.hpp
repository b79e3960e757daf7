#ifndef AFDG_PARTIAL_MAP_HPP
#define AFDG_PARTIAL_MAP_HPP

#include <string>
#include <vector>

#include "afdg/bratteli.hpp"

namespace afdg {

/// One tail-identical rewriting rule on path space: replace the
/// `source` prefix by `target` and keep the remaining tail. Source and
/// target have the same depth and terminal vertex, which is what makes
/// the rewrite well defined on infinite paths.
struct PrefixSwap {
  PathPrefix source;
  PathPrefix target;

  std::size_t depth() const { return source.level(); }
  bool is_identity() const { return source == target; }
  auto operator<=>(const PrefixSwap&) const = default;
};

/// A partial homeomorphism of path space given by finitely many prefix
/// swaps with pairwise disjoint sources and pairwise disjoint targets.
/// The empty map is a legal value (it absorbs under composition).
///
/// Values are kept in a canonical normal form: rules sorted by source,
/// with every complete tail-identical sibling family coalesced into its
/// one-level-shallower parent rule. Two maps are equal as partial
/// bijections iff their normal forms are identical.
class PartialMap {
public:
  PartialMap() = default; // empty map, no diagram attached

  static PartialMap empty(DiagramPtr diagram);
  static PartialMap of(DiagramPtr diagram, std::vector<PrefixSwap> rules);
  static PartialMap swap(DiagramPtr diagram, PathPrefix source,
                         PathPrefix target);
  static PartialMap identity_on(const ClopenSet& set);

  const std::vector<PrefixSwap>& rules() const { return rules_; }
  const DiagramPtr& diagram() const { return diagram_; }
  bool is_empty() const { return rules_.empty(); }
  bool is_identity() const;

  ClopenSet domain() const;
  ClopenSet range() const;

  /// Exact image of a clopen set (the range of the restriction).
  ClopenSet image_of(const ClopenSet& set) const;

  /// How the map acts on one cylinder.
  enum class Coverage { Full, Partial, None };
  struct CylinderImage {
    Coverage coverage;
    Cylinder image; // meaningful only when coverage == Full
  };
  /// Full when some rule source prefixes the cylinder (the image is then
  /// again a cylinder of the same depth), Partial when the map is only
  /// defined on proper sub-cylinders, None when the domain misses it.
  CylinderImage apply_to_cylinder(const Cylinder& c) const;

  std::size_t max_rule_depth() const;

  bool operator==(const PartialMap& other) const {
    return rules_ == other.rules_;
  }

  std::string to_string() const;

private:
  DiagramPtr diagram_;
  std::vector<PrefixSwap> rules_;
};

/// g after f, defined exactly on f^{-1}(Ran(f) ∩ Dom(g)).
PartialMap compose(const PartialMap& g, const PartialMap& f);

PartialMap invert(const PartialMap& f);

/// f restricted to Dom(f) ∩ b.
PartialMap restrict(const PartialMap& f, const ClopenSet& b);

} // namespace afdg

#endif
