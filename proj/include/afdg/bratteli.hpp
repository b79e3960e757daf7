#ifndef AFDG_BRATTELI_HPP
#define AFDG_BRATTELI_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "afdg/errors.hpp"
#include "afdg/ints.hpp"

namespace afdg {

class BratteliDiagram;
using DiagramPtr = std::shared_ptr<const BratteliDiagram>;

/// Layered multigraph: edge_matrices()[t] has shape m_t x m_{t+1} and entry
/// (i, j) counts the edges from vertex i at level t to vertex j at level
/// t+1. Level 0 always has the single root vertex.
///
/// A diagram value is a finite truncation; construction does not validate
/// (see validate()), so a defective diagram can be built, inspected and
/// reported on.
class BratteliDiagram {
public:
  explicit BratteliDiagram(std::vector<IntMatrix> edge_matrices);

  static DiagramPtr make(std::vector<IntMatrix> edge_matrices);

  /// Number of edge matrices; vertices live at levels 0..num_levels().
  std::size_t num_levels() const { return matrices_.size(); }

  /// m_n, the number of vertices at a level.
  std::size_t vertices_at(std::size_t level) const;

  /// Edge matrix between level-1 and level, for 1 <= level <= num_levels().
  const IntMatrix& edges(std::size_t level) const;

  /// Total number of edges leaving `vertex` at `level` (the flat bundle
  /// a path step indexes into). Requires level < num_levels().
  std::size_t out_degree(std::size_t level, std::size_t vertex) const;

  /// Number of edges entering `vertex` at `level` >= 1 (column sum).
  std::size_t in_degree(std::size_t level, std::size_t vertex) const;

  /// Resolve a flat out-edge index to (target vertex, parallel slot).
  /// Edges leaving a vertex are ordered by target vertex, then slot.
  std::pair<std::size_t, std::size_t> resolve_edge(std::size_t level,
                                                   std::size_t source,
                                                   std::size_t flat_edge) const;

  /// Flat out-edge index of the slot-th parallel edge source -> target.
  std::size_t flat_edge_index(std::size_t level, std::size_t source,
                              std::size_t target, std::size_t slot) const;

  bool operator==(const BratteliDiagram& other) const {
    return matrices_ == other.matrices_;
  }

private:
  std::vector<IntMatrix> matrices_;
};

/// True when both pointers denote structurally equal diagrams. Null is
/// treated as a wildcard (the empty clopen set has no diagram of its own).
bool same_diagram(const DiagramPtr& a, const DiagramPtr& b);

struct DiagramDefect {
  enum class Kind { ShapeMismatch, ZeroColumn, ZeroRow, NegativeEntry };
  Kind kind;
  std::size_t level; // 1-based level of the offending matrix
  std::size_t index; // row or column within it
  std::string message;
};

/// Checks every diagram invariant; nullopt means the diagram is valid.
std::optional<DiagramDefect> validate(const BratteliDiagram& diagram);

/// Throwing form of validate(), for call sites that require validity.
void require_valid(const BratteliDiagram& diagram);

/// Path counts per vertex: dim_vector(d, n)[r] is the number of length-n
/// root paths ending at vertex r. Satisfies the exact recurrence
/// dim_vector(n+1) = dim_vector(n) * edges(n+1), with dim_vector(0) = [1].
IntVector dim_vector(const BratteliDiagram& diagram, std::size_t n);

/// One step of a path: the vertex it leaves and the flat index of the
/// edge taken within that vertex's out-bundle.
struct PathStep {
  std::size_t source;
  std::size_t edge;
  auto operator<=>(const PathStep&) const = default;
};

/// A finite initial segment of an infinite path. The empty prefix (the
/// root) denotes the whole space.
class PathPrefix {
public:
  PathPrefix() = default;

  /// Validates the step chain against the diagram shape.
  static PathPrefix checked(const BratteliDiagram& diagram,
                            std::vector<PathStep> steps);

  std::size_t level() const { return steps_.size(); }
  const std::vector<PathStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

  /// Vertex this prefix ends at (root for the empty prefix).
  std::size_t terminal_vertex() const { return terminal_; }

  PathPrefix extended(const BratteliDiagram& diagram,
                      std::size_t flat_edge) const;

  /// First `depth` steps.
  PathPrefix truncated(std::size_t depth) const;

  /// Steps strictly after `depth`, for grafting onto another prefix.
  std::vector<PathStep> tail_from(std::size_t depth) const;

  /// base followed by donor's steps after `cut`. The caller guarantees
  /// the chain is consistent (base ends where donor's step `cut` starts).
  static PathPrefix grafted(const PathPrefix& base, const PathPrefix& donor,
                            std::size_t cut);

  bool is_prefix_of(const PathPrefix& other) const;

  auto operator<=>(const PathPrefix& other) const {
    return steps_ <=> other.steps_;
  }
  bool operator==(const PathPrefix& other) const {
    return steps_ == other.steps_;
  }

  std::string to_string() const;

private:
  std::vector<PathStep> steps_;
  std::size_t terminal_ = 0;

  friend class BratteliDiagram;
};

/// All length-n paths of the diagram in lexicographic order.
std::vector<PathPrefix> enumerate_all_paths(const BratteliDiagram& diagram,
                                            std::size_t n);

/// All length-n paths ending at vertex r, lexicographic.
std::vector<PathPrefix> enumerate_paths(const BratteliDiagram& diagram,
                                        std::size_t n, std::size_t r);

/// Lexicographically first length-n path into each level-n vertex.
std::vector<PathPrefix> canonical_paths(const BratteliDiagram& diagram,
                                        std::size_t n);

/// The clopen set of all infinite paths extending a fixed prefix.
struct Cylinder {
  PathPrefix prefix;

  std::size_t depth() const { return prefix.level(); }
  auto operator<=>(const Cylinder&) const = default;
  std::string to_string() const { return prefix.to_string(); }
};

/// Distinguished base set B(r,n): the cylinder of the lexicographically
/// first length-n path into vertex r. For fixed n these are pairwise
/// disjoint over r.
Cylinder canonical_base_set(const BratteliDiagram& diagram, std::size_t n,
                            std::size_t r);

/// Finite union of cylinders in canonical form: a lexicographically
/// sorted antichain in which every complete sibling family has been
/// coalesced into its parent. Two clopen sets are extensionally equal
/// iff their canonical forms are identical.
class ClopenSet {
public:
  ClopenSet() = default; // empty set, no diagram attached

  static ClopenSet empty(DiagramPtr diagram);
  static ClopenSet of(DiagramPtr diagram, std::vector<Cylinder> cylinders);
  static ClopenSet single(DiagramPtr diagram, Cylinder cylinder);
  static ClopenSet whole_space(DiagramPtr diagram);

  const std::vector<Cylinder>& cylinders() const { return cylinders_; }
  bool is_empty() const { return cylinders_.empty(); }
  const DiagramPtr& diagram() const { return diagram_; }

  /// Deepest prefix length occurring in the set (0 when empty).
  std::size_t max_depth() const;

  std::string to_string() const;

private:
  DiagramPtr diagram_;
  std::vector<Cylinder> cylinders_;
};

ClopenSet clopen_union(const ClopenSet& a, const ClopenSet& b);
ClopenSet clopen_intersect(const ClopenSet& a, const ClopenSet& b);
ClopenSet clopen_difference(const ClopenSet& a, const ClopenSet& b);
bool clopen_equals(const ClopenSet& a, const ClopenSet& b);
bool clopen_subset(const ClopenSet& a, const ClopenSet& b);
bool clopen_disjoint(const ClopenSet& a, const ClopenSet& b);

/// The exact list of depth-`depth` cylinders whose union equals the set.
std::vector<Cylinder> refine(const ClopenSet& set, std::size_t depth);

/// All depth-`depth` extensions of one prefix, lexicographic.
std::vector<PathPrefix> refine_prefix(const BratteliDiagram& diagram,
                                      const PathPrefix& prefix,
                                      std::size_t depth);

} // namespace afdg

#endif
