#include "afdg/dimension_group.hpp"

#include <algorithm>

namespace afdg {

std::string Verdict::to_string() const {
  switch (kind) {
    case Kind::Equal: return "Equal(" + std::to_string(level) + ")";
    case Kind::Distinct: return "Distinct(" + std::to_string(level) + ")";
    case Kind::Positive: return "Positive(" + std::to_string(level) + ")";
    case Kind::NotPositive:
      return "NotPositive(" + std::to_string(level) + ")";
    case Kind::Zero: return "Zero";
    case Kind::Unknown: return "Unknown(" + std::to_string(level) + ")";
  }
  return "?";
}

DirectLimitGroup::DirectLimitGroup(
    std::vector<IntMatrix> matrices, IntVector unit0, Extension extension,
    std::function<IntMatrix(std::size_t)> callback)
    : extension_(extension),
      callback_(std::move(callback)),
      listed_(matrices.size()),
      matrices_(std::move(matrices)),
      injective_(true) {
  if (unit0.empty())
    raise(errc::invalid_diagram, "order unit at level 0 is empty");
  if (extension_ == Extension::Callback && !callback_)
    raise(errc::invalid_diagram, "callback extension without a callback");
  if (extension_ == Extension::RepeatLast) {
    if (matrices_.empty())
      raise(errc::invalid_diagram, "repeat-last extension needs a matrix");
    if (matrices_.back().rows() != matrices_.back().cols())
      raise(errc::invalid_diagram,
            "repeat-last extension needs a square last matrix");
  }
  units_.push_back(std::move(unit0));
  std::size_t prev = units_[0].size();
  for (const IntMatrix& m : matrices_) {
    if (m.cols() != prev)
      raise(errc::invalid_diagram, "connecting matrix shapes do not chain");
    prev = m.rows();
    if (!m.full_column_rank()) injective_ = false;
  }
  for (std::size_t n = 0; n < matrices_.size(); ++n) {
    units_.push_back(matrices_[n].mul_vec(units_[n]));
    for (const Int& x : units_.back())
      if (x <= 0)
        raise(errc::invalid_diagram,
              "order unit loses positivity at level " + std::to_string(n + 1));
  }
}

DirectLimitGroup::DirectLimitGroup(const DirectLimitGroup& other)
    : extension_(other.extension_), callback_(other.callback_) {
  std::lock_guard<std::mutex> lock(other.mu_);
  listed_ = other.listed_;
  matrices_ = other.matrices_;
  units_ = other.units_;
  injective_ = other.injective_;
}

void DirectLimitGroup::ensure(std::size_t levels) const {
  while (matrices_.size() < levels) {
    IntMatrix next;
    switch (extension_) {
      case Extension::None:
        raise(errc::level_unavailable,
              "group lists " + std::to_string(matrices_.size()) +
                  " connecting matrices and is not extendable");
      case Extension::RepeatLast:
        next = matrices_.back();
        break;
      case Extension::Callback:
        next = callback_(matrices_.size());
        break;
    }
    if (next.cols() != units_.back().size())
      raise(errc::invalid_diagram, "extension matrix does not chain");
    if (!next.full_column_rank()) injective_ = false;
    units_.push_back(next.mul_vec(units_.back()));
    for (const Int& x : units_.back())
      if (x <= 0) raise(errc::invalid_diagram, "extension breaks the unit");
    matrices_.push_back(std::move(next));
  }
}

std::size_t DirectLimitGroup::rank_at(std::size_t level) const {
  std::lock_guard<std::mutex> lock(mu_);
  ensure(level);
  return units_[level].size();
}

IntMatrix DirectLimitGroup::connecting(std::size_t level) const {
  std::lock_guard<std::mutex> lock(mu_);
  ensure(level + 1);
  return matrices_[level];
}

IntVector DirectLimitGroup::unit(std::size_t level) const {
  std::lock_guard<std::mutex> lock(mu_);
  ensure(level);
  return units_[level];
}

LimitElement DirectLimitGroup::order_unit(std::size_t level) const {
  return LimitElement{level, unit(level)};
}

bool DirectLimitGroup::injective_forever() const {
  std::lock_guard<std::mutex> lock(mu_);
  return injective_;
}

std::size_t DirectLimitGroup::last_available(std::size_t horizon) const {
  if (extendable()) return horizon;
  return std::min(horizon, listed_);
}

LimitElement order_unit(const DirectLimitGroup& group, std::size_t level) {
  return group.order_unit(level);
}

IntVector push(const DirectLimitGroup& group, const LimitElement& e,
               std::size_t to) {
  if (to < e.level)
    raise(errc::level_unavailable, "cannot push an element downward");
  if (e.vector.size() != group.rank_at(e.level))
    raise(errc::length_mismatch, "element vector length differs from rank");
  IntVector v = e.vector;
  for (std::size_t n = e.level; n < to; ++n)
    v = group.connecting(n).mul_vec(v);
  return v;
}

Verdict equal(const DirectLimitGroup& group, const LimitElement& a,
              const LimitElement& b, std::size_t horizon) {
  std::size_t base = std::max(a.level, b.level);
  if (horizon < base)
    raise(errc::level_unavailable, "horizon below the elements' levels");
  std::size_t limit = group.last_available(horizon);
  IntVector diff = vec_sub(push(group, a, base), push(group, b, base));
  if (vec_is_zero(diff)) return {Verdict::Kind::Equal, base};
  if (group.injective_forever()) return {Verdict::Kind::Distinct, base};
  for (std::size_t level = base; level < limit; ++level) {
    diff = group.connecting(level).mul_vec(diff);
    if (vec_is_zero(diff)) return {Verdict::Kind::Equal, level + 1};
  }
  return {Verdict::Kind::Unknown, limit};
}

Verdict positive(const DirectLimitGroup& group, const LimitElement& e,
                 std::size_t horizon) {
  if (horizon < e.level)
    raise(errc::level_unavailable, "horizon below the element's level");
  IntVector zero(e.vector.size());
  if (equal(group, e, LimitElement{e.level, zero}, horizon).kind ==
      Verdict::Kind::Equal)
    return {Verdict::Kind::Zero, e.level};
  std::size_t limit = group.last_available(horizon);
  IntVector v = e.vector;
  for (std::size_t level = e.level;; ++level) {
    if (vec_is_nonneg(v)) return {Verdict::Kind::Positive, level};
    if (level >= limit) break;
    v = group.connecting(level).mul_vec(v);
  }
  IntVector neg(e.vector.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -e.vector[i];
  v = std::move(neg);
  for (std::size_t level = e.level;; ++level) {
    if (vec_is_nonneg(v)) return {Verdict::Kind::NotPositive, level};
    if (level >= limit) break;
    v = group.connecting(level).mul_vec(v);
  }
  return {Verdict::Kind::Unknown, limit};
}

DirectLimitGroup from_system(const GeneratorSystem& system,
                             std::size_t levels) {
  std::vector<TauFamily> tau = build_tau_through(system, levels);
  const DiagramPtr& diagram = system.diagram();

  // Structural form of the topology-basis hypothesis: the level-n tau
  // images must be exactly the depth-n cylinders (compared in clopen
  // normal form, since multiplicity-one bundles coalesce to shallower
  // prefixes). Canonical systems have this shape; for anything else the
  // hypothesis is uncertified and the reduction to coefficient vectors
  // is not justified.
  for (std::size_t n = 1; n <= levels; ++n) {
    std::vector<PathPrefix> images;
    for (const auto& family : tau[n - 1])
      for (const PartialMap& m : family) {
        ClopenSet range = m.range();
        if (range.cylinders().size() != 1)
          raise(errc::basis_assumption_unverified,
                "tau image at level " + std::to_string(n) +
                    " is not a single cylinder");
        images.push_back(range.cylinders().front().prefix);
      }
    std::sort(images.begin(), images.end());
    std::vector<PathPrefix> expected;
    for (const PathPrefix& p : enumerate_all_paths(*diagram, n))
      expected.push_back(ClopenSet::single(diagram, Cylinder{p})
                             .cylinders()
                             .front()
                             .prefix);
    std::sort(expected.begin(), expected.end());
    if (images != expected)
      raise(errc::basis_assumption_unverified,
            "tau images at level " + std::to_string(n) +
                " do not enumerate the depth-" + std::to_string(n) +
                " cylinders");
  }

  std::vector<IntMatrix> matrices;
  for (std::size_t n = 1; n <= levels; ++n) {
    std::size_t rows = system.vertices_at(n);
    std::size_t cols = system.vertices_at(n - 1);
    IntMatrix c(rows, cols);
    for (std::size_t rp = 0; rp < rows; ++rp) {
      for (const PartialMap& t : tau[n - 1][rp]) {
        ClopenSet image = t.range();
        for (std::size_t r = 0; r < cols; ++r) {
          if (clopen_subset(image, system.base_clopen(n - 1, r))) {
            c.at(rp, r) += 1;
            break;
          }
        }
      }
    }
    matrices.push_back(std::move(c));
  }

  DirectLimitGroup group(std::move(matrices), IntVector{1});
  // Cross-check: the derived units are the tau family sizes, which in
  // turn are the path counts.
  for (std::size_t n = 1; n <= levels; ++n) {
    IntVector expected(system.vertices_at(n));
    for (std::size_t r = 0; r < expected.size(); ++r)
      expected[r] = Int(tau[n - 1][r].size());
    if (group.unit(n) != expected)
      raise(errc::conditions_violated,
            "order units disagree with tau family sizes at level " +
                std::to_string(n));
  }
  return group;
}

} // namespace afdg
