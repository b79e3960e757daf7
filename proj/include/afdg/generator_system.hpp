#ifndef AFDG_GENERATOR_SYSTEM_HPP
#define AFDG_GENERATOR_SYSTEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "afdg/partial_map.hpp"

namespace afdg {

/// The organized family of generators sigma_{r,s}^{(n)}: for every level
/// n >= 1 and vertex r an ordered family of partial maps sharing the
/// common domain B(r,n). Construction enforces the domain invariant and
/// the pairwise disjointness of the base sets; everything the three
/// structural conditions say is left to check_conditions, so defective
/// systems can be built and reported on.
class GeneratorSystem {
public:
  /// sigma[n-1][r][s] is sigma_{r,s+1}^{(n)}; base[n-1][r] is B(r,n).
  GeneratorSystem(DiagramPtr diagram,
                  std::vector<std::vector<std::vector<PartialMap>>> sigma,
                  std::vector<std::vector<Cylinder>> base_sets);

  const DiagramPtr& diagram() const { return diagram_; }

  /// Number of generator levels available (n runs 1..levels()).
  std::size_t levels() const { return sigma_.size(); }

  std::size_t vertices_at(std::size_t n) const;

  /// kappa(r,n): generators sharing the domain B(r,n).
  std::size_t family_size(std::size_t n, std::size_t r) const;

  const PartialMap& sigma(std::size_t n, std::size_t r, std::size_t s) const;

  /// B(r,n); level 0 is the whole space.
  Cylinder base_set(std::size_t n, std::size_t r) const;
  ClopenSet base_clopen(std::size_t n, std::size_t r) const;

  /// U_n, the union of the level-n base sets.
  ClopenSet u_set(std::size_t n) const;

  /// Copy with one generator replaced; used to plant violations.
  GeneratorSystem with_generator(std::size_t n, std::size_t r, std::size_t s,
                                 PartialMap replacement) const;

private:
  DiagramPtr diagram_;
  std::vector<std::vector<std::vector<PartialMap>>> sigma_;
  std::vector<std::vector<Cylinder>> base_sets_;
};

/// The system whose generators move the canonical base cylinder of
/// vertex (r,n) onto each one-edge extension of a level-(n-1) canonical
/// base cylinder, ordered so that the first generator is the identity.
/// Passes check_conditions by construction.
GeneratorSystem canonical_system(DiagramPtr diagram, std::size_t levels);

struct ConditionsViolation {
  enum class Which { ConditionI, ConditionII, ConditionIII };
  Which which;
  std::size_t level;     // n, 1-based
  std::size_t vertex;    // r, 0-based
  std::size_t generator; // s, 0-based
  std::string message;
};

struct ConditionsReport {
  std::optional<ConditionsViolation> violation;
  bool pass() const { return !violation.has_value(); }
};

/// Verifies, for each n <= up_to: (i) the first generator of every
/// family is the identity on its base set; (ii) every generator image
/// sits inside a single level-(n-1) base set; (iii) the images taken
/// together partition U_{n-1}. Violations are data, not errors.
ConditionsReport check_conditions(const GeneratorSystem& system,
                                  std::size_t up_to);

/// tau families per vertex: tau(n)[r][s] has domain B(r,n); the family
/// sizes k(r,n) follow the path-count recurrence and the images of the
/// level-n family partition the whole space.
using TauFamily = std::vector<std::vector<PartialMap>>;

TauFamily build_tau(const GeneratorSystem& system, std::size_t n);

/// tau families for every level 1..n (one pass; build_tau(n) is the
/// last entry).
std::vector<TauFamily> build_tau_through(const GeneratorSystem& system,
                                         std::size_t n);

/// The matrix-unit maps tau_{r,s} o tau_{r,s'}^{-1} in (r, s, s') order;
/// the union of their graphs is the level-n groupoid.
std::vector<PartialMap> groupoid_level(const GeneratorSystem& system,
                                       std::size_t n);

/// True iff every depth-`depth` graph pair of the level-n groupoid also
/// belongs to the level-(n+1) groupoid.
bool verify_nesting(const GeneratorSystem& system, std::size_t n,
                    std::size_t depth);

} // namespace afdg

#endif
