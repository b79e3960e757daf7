#ifndef AFDG_DIMENSION_GROUP_HPP
#define AFDG_DIMENSION_GROUP_HPP

#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "afdg/generator_system.hpp"
#include "afdg/ints.hpp"

namespace afdg {

/// An element presented at a finite stage: the class of `vector` in the
/// level-`level` lattice.
struct LimitElement {
  std::size_t level;
  IntVector vector;
};

/// Answers to semi-decidable limit queries, each carrying the level it
/// was decided at (or the horizon that was exhausted).
struct Verdict {
  enum class Kind { Equal, Distinct, Positive, NotPositive, Zero, Unknown };
  Kind kind;
  std::size_t level;

  bool operator==(const Verdict&) const = default;
  std::string to_string() const;
};

/// Direct limit of integer lattices Z^{m_0} -> Z^{m_1} -> ... with a
/// distinguished order unit at every level (u_{n+1} = C_n u_n by
/// construction). A value is a finite list of connecting matrices plus
/// an extension rule; levels materialize lazily and materialization is
/// synchronized, so a shared group can be queried concurrently.
class DirectLimitGroup {
public:
  enum class Extension { None, RepeatLast, Callback };

  DirectLimitGroup(std::vector<IntMatrix> matrices, IntVector unit0,
                   Extension extension = Extension::None,
                   std::function<IntMatrix(std::size_t)> callback = nullptr);

  DirectLimitGroup(const DirectLimitGroup& other);
  DirectLimitGroup& operator=(const DirectLimitGroup&) = delete;

  /// m_n. Materializes matrices as needed; LevelUnavailable when the
  /// group is not extendable past its listed matrices.
  std::size_t rank_at(std::size_t level) const;

  /// C_level, mapping level to level+1.
  IntMatrix connecting(std::size_t level) const;

  /// u_level.
  IntVector unit(std::size_t level) const;

  LimitElement order_unit(std::size_t level) const;

  /// True when every materialized connecting matrix has full column
  /// rank; with RepeatLast extension this decides all later levels too.
  bool injective_forever() const;

  /// Number of explicitly listed matrices.
  std::size_t listed_levels() const { return listed_; }

  bool extendable() const { return extension_ != Extension::None; }

  /// Largest level usable for pushes given a caller's horizon.
  std::size_t last_available(std::size_t horizon) const;

private:
  void ensure(std::size_t levels) const; // callers hold mu_

  Extension extension_;
  std::function<IntMatrix(std::size_t)> callback_;
  std::size_t listed_;

  mutable std::mutex mu_;
  mutable std::vector<IntMatrix> matrices_;
  mutable std::vector<IntVector> units_;
  mutable bool injective_;
};

/// C_{to-1} ... C_{e.level} e.vector, exactly.
IntVector push(const DirectLimitGroup& group, const LimitElement& e,
               std::size_t to);

/// Equal(L) when the pushed difference vanishes at some L <= horizon;
/// Distinct at the elements' common level when it does not vanish there
/// and every connecting step is injective; Unknown otherwise.
Verdict equal(const DirectLimitGroup& group, const LimitElement& a,
              const LimitElement& b, std::size_t horizon);

/// Zero / Positive(L) / NotPositive(L) / Unknown over the level cones:
/// an element is in the limit cone iff some push is componentwise
/// nonnegative.
Verdict positive(const DirectLimitGroup& group, const LimitElement& e,
                 std::size_t horizon);

LimitElement order_unit(const DirectLimitGroup& group, std::size_t level);

/// Builds the dimension group of a generator system: one coordinate per
/// base set, connecting matrices from the partition-refinement counts of
/// the tau images, order units from the tau family sizes. Requires the
/// structural basis certificate (every tau image a single depth-n
/// cylinder, jointly exhausting level n).
DirectLimitGroup from_system(const GeneratorSystem& system,
                             std::size_t levels);

/// Checks that per-level evaluations commute with every connecting map,
/// on all standard basis vectors, the order unit, and `samples` seeded
/// random vectors per level. Eval: (level, vector) -> value with
/// operator==.
template <class Eval>
bool verify_cone_morphism(const DirectLimitGroup& group, Eval&& eval,
                          std::size_t levels, std::size_t samples = 0,
                          std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (std::size_t n = 0; n < levels; ++n) {
    IntMatrix c = group.connecting(n);
    std::size_t rank = group.rank_at(n);
    for (std::size_t j = 0; j < rank; ++j) {
      IntVector basis(rank);
      basis[j] = 1;
      if (!(eval(n + 1, c.column(j)) == eval(n, basis))) return false;
    }
    IntVector u = group.unit(n);
    if (!(eval(n + 1, c.mul_vec(u)) == eval(n, u))) return false;
    for (std::size_t k = 0; k < samples; ++k) {
      IntVector v(rank);
      for (Int& x : v) x = coeff(rng);
      if (!(eval(n + 1, c.mul_vec(v)) == eval(n, v))) return false;
    }
  }
  return true;
}

} // namespace afdg

#endif
