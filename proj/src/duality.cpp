#include "afdg/duality.hpp"

#include <algorithm>

#include "afdg/dimension_group.hpp"

namespace afdg {

SupernaturalScale SupernaturalScale::of(IntVector units,
                                        bool extend_by_last_ratio) {
  if (units.empty() || units[0] != 1)
    raise(errc::divisibility_violated, "a scale starts with u_0 = 1");
  for (std::size_t n = 1; n < units.size(); ++n) {
    if (units[n] <= 0)
      raise(errc::divisibility_violated,
            "unit u_" + std::to_string(n) + " is not positive");
    if (units[n] % units[n - 1] != 0)
      raise(errc::divisibility_violated,
            "u_" + std::to_string(n - 1) + " does not divide u_" +
                std::to_string(n));
  }
  if (extend_by_last_ratio && units.size() < 2)
    raise(errc::divisibility_violated,
          "extension by last ratio needs at least u_1");
  SupernaturalScale s;
  s.units_ = std::move(units);
  s.extend_ = extend_by_last_ratio;
  return s;
}

SupernaturalScale SupernaturalScale::from_tail(IntVector tail,
                                               bool extend_by_last_ratio) {
  IntVector units{1};
  units.insert(units.end(), tail.begin(), tail.end());
  return of(std::move(units), extend_by_last_ratio);
}

Int SupernaturalScale::unit(std::size_t n) const {
  if (n < units_.size()) return units_[n];
  if (!extend_)
    raise(errc::level_unavailable,
          "scale lists " + std::to_string(units_.size() - 1) + " units");
  Int last_ratio = units_.back() / units_[units_.size() - 2];
  Int u = units_.back();
  for (std::size_t k = units_.size() - 1; k < n; ++k) u *= last_ratio;
  return u;
}

Int SupernaturalScale::ratio(std::size_t n) const {
  if (n == 0) raise(errc::index_out_of_range, "ratios start at s(1)");
  return unit(n) / unit(n - 1);
}

CharacterApprox CharacterApprox::of(const SupernaturalScale& scale,
                                    IntVector residues) {
  for (std::size_t n = 1; n <= residues.size(); ++n) {
    const Int& r = residues[n - 1];
    if (r < 0 || r >= scale.unit(n))
      raise(errc::index_out_of_range,
            "residue r_" + std::to_string(n) + " outside [0, u_" +
                std::to_string(n) + ")");
    if (n >= 2 && (r - residues[n - 2]) % scale.unit(n - 1) != 0)
      raise(errc::divisibility_violated,
            "residues incompatible between levels " + std::to_string(n - 1) +
                " and " + std::to_string(n));
  }
  CharacterApprox c;
  c.residues_ = std::move(residues);
  return c;
}

const Int& CharacterApprox::residue(std::size_t n) const {
  if (n == 0 || n > residues_.size())
    raise(errc::index_out_of_range, "residue index " + std::to_string(n));
  return residues_[n - 1];
}

CharacterApprox CharacterApprox::truncated(std::size_t depth) const {
  CharacterApprox c;
  c.residues_.assign(residues_.begin(),
                     residues_.begin() + std::min(depth, residues_.size()));
  return c;
}

namespace {

std::size_t ratio_as_size(const SupernaturalScale& scale, std::size_t n) {
  Int r = scale.ratio(n);
  if (r > Int(1) << 20)
    raise(errc::divisibility_violated,
          "quotient s(" + std::to_string(n) + ") too large for a path bundle");
  return static_cast<std::size_t>(r);
}

} // namespace

GeneratorSystem build_dual_system(const SupernaturalScale& scale,
                                  std::size_t depth) {
  if (!scale.extendable() && depth > scale.depth())
    raise(errc::level_unavailable,
          "scale lists " + std::to_string(scale.depth()) + " units");
  std::vector<IntMatrix> mats;
  for (std::size_t n = 1; n <= depth; ++n) {
    IntMatrix m(1, 1);
    m.at(0, 0) = scale.ratio(n);
    mats.push_back(std::move(m));
  }
  DiagramPtr diagram = BratteliDiagram::make(std::move(mats));

  std::vector<std::vector<std::vector<PartialMap>>> sigma(depth);
  std::vector<std::vector<Cylinder>> bases(depth);
  PathPrefix zeros; // the zero residue class at the current level
  for (std::size_t n = 1; n <= depth; ++n) {
    PathPrefix below = zeros;
    zeros = zeros.extended(*diagram, 0);
    bases[n - 1].push_back(Cylinder{zeros});
    sigma[n - 1].resize(1);
    std::size_t quotient = ratio_as_size(scale, n);
    for (std::size_t s = 0; s < quotient; ++s) {
      // translation by (s-1) u_{n-1}: digits below stay zero, digit n
      // becomes the coset index
      PathPrefix target = below.extended(*diagram, s);
      sigma[n - 1][0].push_back(PartialMap::swap(diagram, zeros, target));
    }
  }
  return GeneratorSystem(std::move(diagram), std::move(sigma),
                         std::move(bases));
}

CharacterApprox tau_translation(const SupernaturalScale& scale,
                                const std::vector<std::size_t>& tuple) {
  IntVector residues;
  Int total = 0;
  for (std::size_t i = 1; i <= tuple.size(); ++i) {
    if (tuple[i - 1] < 1 || Int(tuple[i - 1]) > scale.ratio(i))
      raise(errc::index_out_of_range,
            "tuple entry s_" + std::to_string(i) + " outside [1, u_" +
                std::to_string(i) + "/u_" + std::to_string(i - 1) + "]");
    total += Int(tuple[i - 1] - 1) * scale.unit(i - 1);
    residues.push_back(total % scale.unit(i));
  }
  return CharacterApprox::of(scale, std::move(residues));
}

bool verify_reconstruction(const SupernaturalScale& scale, std::size_t depth,
                           std::size_t horizon) {
  std::size_t levels = std::min(depth, horizon);
  GeneratorSystem system = build_dual_system(scale, levels);
  DirectLimitGroup group = from_system(system, levels);
  for (std::size_t n = 0; n <= levels; ++n) {
    if (group.rank_at(n) != 1) return false;
    if (group.unit(n) != IntVector{scale.unit(n)}) return false;
  }
  for (std::size_t n = 0; n + 1 <= levels; ++n) {
    IntMatrix c = group.connecting(n);
    if (c.rows() != 1 || c.cols() != 1) return false;
    if (c.at(0, 0) != scale.ratio(n + 1)) return false;
  }
  return true;
}

} // namespace afdg
