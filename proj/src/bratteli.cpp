#include "afdg/bratteli.hpp"

#include <algorithm>
#include <sstream>

namespace afdg {

namespace {

std::size_t to_size(const Int& v, const char* what) {
  if (v < 0 || v > Int(std::numeric_limits<long long>::max()))
    raise(errc::invalid_diagram, std::string(what) + " out of machine range");
  return static_cast<std::size_t>(v.convert_to<long long>());
}

} // namespace

BratteliDiagram::BratteliDiagram(std::vector<IntMatrix> edge_matrices)
    : matrices_(std::move(edge_matrices)) {}

DiagramPtr BratteliDiagram::make(std::vector<IntMatrix> edge_matrices) {
  return std::make_shared<const BratteliDiagram>(std::move(edge_matrices));
}

std::size_t BratteliDiagram::vertices_at(std::size_t level) const {
  if (level == 0) return 1;
  if (level > matrices_.size())
    raise(errc::level_out_of_range,
          "level " + std::to_string(level) + " beyond truncation depth " +
              std::to_string(matrices_.size()));
  return matrices_[level - 1].cols();
}

const IntMatrix& BratteliDiagram::edges(std::size_t level) const {
  if (level == 0 || level > matrices_.size())
    raise(errc::level_out_of_range,
          "no edge matrix at level " + std::to_string(level));
  return matrices_[level - 1];
}

std::size_t BratteliDiagram::out_degree(std::size_t level,
                                        std::size_t vertex) const {
  const IntMatrix& m = edges(level + 1);
  if (vertex >= m.rows())
    raise(errc::vertex_out_of_range,
          "vertex " + std::to_string(vertex) + " at level " +
              std::to_string(level));
  Int total = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) total += m.at(vertex, j);
  return to_size(total, "out-degree");
}

std::size_t BratteliDiagram::in_degree(std::size_t level,
                                       std::size_t vertex) const {
  const IntMatrix& m = edges(level);
  if (vertex >= m.cols())
    raise(errc::vertex_out_of_range,
          "vertex " + std::to_string(vertex) + " at level " +
              std::to_string(level));
  Int total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) total += m.at(i, vertex);
  return to_size(total, "in-degree");
}

std::pair<std::size_t, std::size_t> BratteliDiagram::resolve_edge(
    std::size_t level, std::size_t source, std::size_t flat_edge) const {
  const IntMatrix& m = edges(level + 1);
  if (source >= m.rows())
    raise(errc::vertex_out_of_range,
          "vertex " + std::to_string(source) + " at level " +
              std::to_string(level));
  Int cursor = flat_edge;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (cursor < m.at(source, j))
      return {j, to_size(cursor, "edge slot")};
    cursor -= m.at(source, j);
  }
  raise(errc::invalid_path, "flat edge index " + std::to_string(flat_edge) +
                                " exceeds out-degree of vertex " +
                                std::to_string(source));
}

std::size_t BratteliDiagram::flat_edge_index(std::size_t level,
                                             std::size_t source,
                                             std::size_t target,
                                             std::size_t slot) const {
  const IntMatrix& m = edges(level + 1);
  Int offset = 0;
  for (std::size_t j = 0; j < target; ++j) offset += m.at(source, j);
  if (Int(slot) >= m.at(source, target))
    raise(errc::invalid_path, "edge slot exceeds multiplicity");
  return to_size(offset + slot, "flat edge index");
}

bool same_diagram(const DiagramPtr& a, const DiagramPtr& b) {
  if (!a || !b) return true;
  if (a == b) return true;
  return *a == *b;
}

std::optional<DiagramDefect> validate(const BratteliDiagram& diagram) {
  std::size_t prev_cols = 1;
  for (std::size_t n = 1; n <= diagram.num_levels(); ++n) {
    const IntMatrix& m = diagram.edges(n);
    if (m.rows() != prev_cols || m.cols() == 0)
      return DiagramDefect{DiagramDefect::Kind::ShapeMismatch, n, 0,
                           "matrix at level " + std::to_string(n) + " is " +
                               std::to_string(m.rows()) + "x" +
                               std::to_string(m.cols()) + ", expected " +
                               std::to_string(prev_cols) + " rows"};
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.at(i, j) < 0)
          return DiagramDefect{DiagramDefect::Kind::NegativeEntry, n,
                               i * m.cols() + j,
                               "negative entry at level " + std::to_string(n) +
                                   " position (" + std::to_string(i + 1) +
                                   "," + std::to_string(j + 1) + ")"};
    for (std::size_t j = 0; j < m.cols(); ++j) {
      bool nonzero = false;
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (m.at(i, j) != 0) nonzero = true;
      if (!nonzero)
        return DiagramDefect{DiagramDefect::Kind::ZeroColumn, n, j,
                             "vertex " + std::to_string(j + 1) + " at level " +
                                 std::to_string(n) + " has no incoming edge"};
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.at(i, j) != 0) nonzero = true;
      if (!nonzero)
        return DiagramDefect{DiagramDefect::Kind::ZeroRow, n, i,
                             "vertex " + std::to_string(i + 1) + " at level " +
                                 std::to_string(n - 1) +
                                 " has no outgoing edge"};
    }
    prev_cols = m.cols();
  }
  return std::nullopt;
}

void require_valid(const BratteliDiagram& diagram) {
  if (auto defect = validate(diagram))
    raise(errc::invalid_diagram, defect->message);
}

IntVector dim_vector(const BratteliDiagram& diagram, std::size_t n) {
  if (n > diagram.num_levels())
    raise(errc::level_out_of_range,
          "dim_vector at level " + std::to_string(n) + " of a depth-" +
              std::to_string(diagram.num_levels()) + " truncation");
  IntVector dims{1};
  for (std::size_t t = 1; t <= n; ++t) {
    const IntMatrix& m = diagram.edges(t);
    IntVector next(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        next[j] += dims[i] * m.at(i, j);
    dims = std::move(next);
  }
  return dims;
}

PathPrefix PathPrefix::checked(const BratteliDiagram& diagram,
                               std::vector<PathStep> steps) {
  PathPrefix p;
  for (const PathStep& s : steps) {
    if (s.source != p.terminal_)
      raise(errc::invalid_path,
            "step source " + std::to_string(s.source) +
                " does not continue from vertex " + std::to_string(p.terminal_));
    p = p.extended(diagram, s.edge);
  }
  return p;
}

PathPrefix PathPrefix::extended(const BratteliDiagram& diagram,
                                std::size_t flat_edge) const {
  if (flat_edge >= diagram.out_degree(level(), terminal_))
    raise(errc::invalid_path, "flat edge index out of range");
  PathPrefix p = *this;
  p.steps_.push_back(PathStep{terminal_, flat_edge});
  p.terminal_ = diagram.resolve_edge(level(), terminal_, flat_edge).first;
  return p;
}

PathPrefix PathPrefix::truncated(std::size_t depth) const {
  if (depth >= level()) return *this;
  PathPrefix p;
  p.steps_.assign(steps_.begin(), steps_.begin() + depth);
  p.terminal_ = depth == 0 ? 0 : steps_[depth].source;
  return p;
}

std::vector<PathStep> PathPrefix::tail_from(std::size_t depth) const {
  return std::vector<PathStep>(steps_.begin() + depth, steps_.end());
}

PathPrefix PathPrefix::grafted(const PathPrefix& base, const PathPrefix& donor,
                               std::size_t cut) {
  if (cut >= donor.level()) return base;
  PathPrefix p = base;
  p.steps_.insert(p.steps_.end(), donor.steps_.begin() + cut,
                  donor.steps_.end());
  p.terminal_ = donor.terminal_;
  return p;
}

bool PathPrefix::is_prefix_of(const PathPrefix& other) const {
  if (level() > other.level()) return false;
  return std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

std::string PathPrefix::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i) os << ',';
    os << steps_[i].edge;
  }
  os << ')';
  return os.str();
}

std::vector<PathPrefix> enumerate_all_paths(const BratteliDiagram& diagram,
                                            std::size_t n) {
  if (n > diagram.num_levels())
    raise(errc::level_out_of_range,
          "paths of length " + std::to_string(n) + " of a depth-" +
              std::to_string(diagram.num_levels()) + " truncation");
  std::vector<PathPrefix> paths{PathPrefix{}};
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<PathPrefix> next;
    for (const PathPrefix& p : paths) {
      std::size_t degree = diagram.out_degree(t, p.terminal_vertex());
      for (std::size_t e = 0; e < degree; ++e)
        next.push_back(p.extended(diagram, e));
    }
    paths = std::move(next);
  }
  return paths; // lexicographic by construction
}

std::vector<PathPrefix> enumerate_paths(const BratteliDiagram& diagram,
                                        std::size_t n, std::size_t r) {
  if (r >= diagram.vertices_at(n))
    raise(errc::vertex_out_of_range,
          "vertex " + std::to_string(r) + " at level " + std::to_string(n));
  std::vector<PathPrefix> into_r;
  for (PathPrefix& p : enumerate_all_paths(diagram, n))
    if (p.terminal_vertex() == r) into_r.push_back(std::move(p));
  return into_r;
}

std::vector<PathPrefix> canonical_paths(const BratteliDiagram& diagram,
                                        std::size_t n) {
  if (n > diagram.num_levels())
    raise(errc::level_out_of_range,
          "canonical paths at level " + std::to_string(n));
  // DP over levels: the lex-least path into r extends the lex-least path
  // into one of its parents, so comparing the finitely many one-step
  // extensions suffices.
  std::vector<PathPrefix> best{PathPrefix{}};
  for (std::size_t t = 1; t <= n; ++t) {
    std::vector<std::optional<PathPrefix>> next(diagram.vertices_at(t));
    for (const PathPrefix& p : best) {
      std::size_t degree = diagram.out_degree(t - 1, p.terminal_vertex());
      for (std::size_t e = 0; e < degree; ++e) {
        PathPrefix q = p.extended(diagram, e);
        std::size_t v = q.terminal_vertex();
        if (!next[v] || q < *next[v]) next[v] = std::move(q);
      }
    }
    best.clear();
    for (auto& q : next) {
      if (!q)
        raise(errc::invalid_diagram,
              "vertex without incoming path at level " + std::to_string(t));
      best.push_back(std::move(*q));
    }
  }
  return best;
}

Cylinder canonical_base_set(const BratteliDiagram& diagram, std::size_t n,
                            std::size_t r) {
  if (r >= diagram.vertices_at(n))
    raise(errc::vertex_out_of_range,
          "vertex " + std::to_string(r) + " at level " + std::to_string(n));
  return Cylinder{canonical_paths(diagram, n)[r]};
}

ClopenSet ClopenSet::empty(DiagramPtr diagram) {
  ClopenSet s;
  s.diagram_ = std::move(diagram);
  return s;
}

ClopenSet ClopenSet::single(DiagramPtr diagram, Cylinder cylinder) {
  return of(std::move(diagram), {std::move(cylinder)});
}

ClopenSet ClopenSet::whole_space(DiagramPtr diagram) {
  return of(std::move(diagram), {Cylinder{}});
}

std::size_t ClopenSet::max_depth() const {
  std::size_t d = 0;
  for (const Cylinder& c : cylinders_) d = std::max(d, c.depth());
  return d;
}

ClopenSet ClopenSet::of(DiagramPtr diagram, std::vector<Cylinder> cylinders) {
  ClopenSet s;
  s.diagram_ = std::move(diagram);
  std::sort(cylinders.begin(), cylinders.end());
  cylinders.erase(std::unique(cylinders.begin(), cylinders.end()),
                  cylinders.end());

  // Drop cylinders nested inside an earlier one; extensions of a prefix
  // are contiguous after it in lexicographic order.
  std::vector<Cylinder> antichain;
  for (Cylinder& c : cylinders) {
    if (!antichain.empty() &&
        antichain.back().prefix.is_prefix_of(c.prefix))
      continue;
    antichain.push_back(std::move(c));
  }

  // Coalesce complete sibling families into their parent until stable;
  // this is what makes the normal form canonical under extensional
  // equality.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Cylinder> merged;
    std::size_t i = 0;
    while (i < antichain.size()) {
      const Cylinder& c = antichain[i];
      if (c.depth() == 0) {
        merged.push_back(c);
        ++i;
        continue;
      }
      PathPrefix parent = c.prefix.truncated(c.depth() - 1);
      std::size_t family = 0;
      while (i + family < antichain.size() &&
             antichain[i + family].depth() == c.depth() &&
             parent.is_prefix_of(antichain[i + family].prefix))
        ++family;
      std::size_t full = s.diagram_
                             ? s.diagram_->out_degree(parent.level(),
                                                      parent.terminal_vertex())
                             : 0;
      if (s.diagram_ && family == full && full > 0) {
        merged.push_back(Cylinder{parent});
        changed = true;
        i += family;
      } else {
        merged.push_back(c);
        ++i;
      }
    }
    antichain = std::move(merged);
    std::sort(antichain.begin(), antichain.end());
  }
  s.cylinders_ = std::move(antichain);
  return s;
}

std::string ClopenSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < cylinders_.size(); ++i) {
    if (i) os << ',';
    os << cylinders_[i].to_string();
  }
  os << '}';
  return os.str();
}

namespace {

DiagramPtr merged_diagram(const ClopenSet& a, const ClopenSet& b,
                          const char* op) {
  if (!same_diagram(a.diagram(), b.diagram()))
    raise(errc::diagram_mismatch,
          std::string(op) + " of clopen sets over different diagrams");
  return a.diagram() ? a.diagram() : b.diagram();
}

std::vector<PathPrefix> refined_prefixes(const ClopenSet& s,
                                         std::size_t depth) {
  std::vector<PathPrefix> out;
  for (const Cylinder& c : s.cylinders()) {
    auto ext = refine_prefix(*s.diagram(), c.prefix, depth);
    out.insert(out.end(), ext.begin(), ext.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClopenSet from_prefixes(DiagramPtr diagram, std::vector<PathPrefix> prefixes) {
  std::vector<Cylinder> cylinders;
  cylinders.reserve(prefixes.size());
  for (PathPrefix& p : prefixes) cylinders.push_back(Cylinder{std::move(p)});
  return ClopenSet::of(std::move(diagram), std::move(cylinders));
}

} // namespace

ClopenSet clopen_union(const ClopenSet& a, const ClopenSet& b) {
  DiagramPtr d = merged_diagram(a, b, "union");
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  std::vector<Cylinder> all = a.cylinders();
  all.insert(all.end(), b.cylinders().begin(), b.cylinders().end());
  return ClopenSet::of(std::move(d), std::move(all));
}

ClopenSet clopen_intersect(const ClopenSet& a, const ClopenSet& b) {
  DiagramPtr d = merged_diagram(a, b, "intersection");
  if (a.is_empty() || b.is_empty()) return ClopenSet::empty(d);
  std::size_t depth = std::max(a.max_depth(), b.max_depth());
  auto pa = refined_prefixes(a, depth);
  auto pb = refined_prefixes(b, depth);
  std::vector<PathPrefix> out;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                        std::back_inserter(out));
  return from_prefixes(std::move(d), std::move(out));
}

ClopenSet clopen_difference(const ClopenSet& a, const ClopenSet& b) {
  DiagramPtr d = merged_diagram(a, b, "difference");
  if (a.is_empty() || b.is_empty()) return a;
  std::size_t depth = std::max(a.max_depth(), b.max_depth());
  auto pa = refined_prefixes(a, depth);
  auto pb = refined_prefixes(b, depth);
  std::vector<PathPrefix> out;
  std::set_difference(pa.begin(), pa.end(), pb.begin(), pb.end(),
                      std::back_inserter(out));
  return from_prefixes(std::move(d), std::move(out));
}

bool clopen_equals(const ClopenSet& a, const ClopenSet& b) {
  merged_diagram(a, b, "comparison");
  return a.cylinders() == b.cylinders();
}

bool clopen_subset(const ClopenSet& a, const ClopenSet& b) {
  return clopen_difference(a, b).is_empty();
}

bool clopen_disjoint(const ClopenSet& a, const ClopenSet& b) {
  return clopen_intersect(a, b).is_empty();
}

std::vector<Cylinder> refine(const ClopenSet& set, std::size_t depth) {
  if (set.is_empty()) return {};
  if (depth < set.max_depth())
    raise(errc::depth_too_shallow,
          "refinement depth " + std::to_string(depth) +
              " below cylinder depth " + std::to_string(set.max_depth()));
  std::vector<Cylinder> out;
  for (const PathPrefix& p : refined_prefixes(set, depth))
    out.push_back(Cylinder{p});
  return out;
}

std::vector<PathPrefix> refine_prefix(const BratteliDiagram& diagram,
                                      const PathPrefix& prefix,
                                      std::size_t depth) {
  if (depth < prefix.level())
    raise(errc::depth_too_shallow, "cannot refine below a prefix's own depth");
  std::vector<PathPrefix> frontier{prefix};
  for (std::size_t t = prefix.level(); t < depth; ++t) {
    std::vector<PathPrefix> next;
    for (const PathPrefix& p : frontier) {
      std::size_t degree = diagram.out_degree(t, p.terminal_vertex());
      for (std::size_t e = 0; e < degree; ++e)
        next.push_back(p.extended(diagram, e));
    }
    frontier = std::move(next);
  }
  return frontier;
}

} // namespace afdg
