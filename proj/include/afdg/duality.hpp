#ifndef AFDG_DUALITY_HPP
#define AFDG_DUALITY_HPP

#include <cstddef>
#include <vector>

#include "afdg/generator_system.hpp"
#include "afdg/ints.hpp"

namespace afdg {

/// A divisibility chain u_0 = 1 | u_1 | u_2 | ... of positive integers,
/// finitely truncated, optionally extended by repeating the last
/// quotient.
class SupernaturalScale {
public:
  /// units[0] must be 1 and each unit must divide the next.
  static SupernaturalScale of(IntVector units, bool extend_by_last_ratio = false);

  /// Units u_1, u_2, ... with u_0 = 1 prepended.
  static SupernaturalScale from_tail(IntVector tail,
                                     bool extend_by_last_ratio = false);

  /// Number of explicitly listed units beyond u_0.
  std::size_t depth() const { return units_.size() - 1; }
  bool extendable() const { return extend_; }

  Int unit(std::size_t n) const;

  /// s(n) = u_n / u_{n-1}, n >= 1.
  Int ratio(std::size_t n) const;

private:
  SupernaturalScale() = default;

  IntVector units_;
  bool extend_ = false;
};

/// A depth-N point of the profinite limit: residues r_n modulo u_n with
/// r_{n+1} = r_n (mod u_n).
class CharacterApprox {
public:
  static CharacterApprox of(const SupernaturalScale& scale, IntVector residues);

  std::size_t depth() const { return residues_.size(); }
  const IntVector& residues() const { return residues_; }
  const Int& residue(std::size_t n) const;

  /// Dropping trailing residues preserves validity.
  CharacterApprox truncated(std::size_t depth) const;

  bool operator==(const CharacterApprox&) const = default;

private:
  CharacterApprox() = default;

  IntVector residues_;
};

/// The generator system of the scale's character group: the rank-1
/// diagram with multiplicities s(n), base sets the zero residue classes,
/// and one translation generator per coset representative (s-1)*u_{n-1}.
/// Passes check_conditions by construction.
GeneratorSystem build_dual_system(const SupernaturalScale& scale,
                                  std::size_t depth);

/// The translating character of a tuple (s_1,...,s_n), additively:
/// residues of sum_i (s_i - 1) u_{i-1}. Bijective onto depth-n points.
CharacterApprox tau_translation(const SupernaturalScale& scale,
                                const std::vector<std::size_t>& tuple);

/// True iff the dimension group rebuilt from the dual system is exactly
/// the scale's direct limit: rank one throughout, connecting matrices
/// [u_{n+1}/u_n], order units [u_n]. Checked through min(depth, horizon).
bool verify_reconstruction(const SupernaturalScale& scale, std::size_t depth,
                           std::size_t horizon = static_cast<std::size_t>(-1));

} // namespace afdg

#endif
