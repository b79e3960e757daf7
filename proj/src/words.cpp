#include "afdg/words.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace afdg {

AddingMachine::AddingMachine(std::vector<std::size_t> bases, Int increment)
    : bases_(std::move(bases)), increment_(std::move(increment)) {
  for (std::size_t b : bases_)
    if (b < 2) raise(errc::invalid_diagram, "adding machine base below 2");
}

DiagramPtr AddingMachine::diagram() const {
  std::vector<IntMatrix> mats;
  mats.reserve(bases_.size());
  for (std::size_t b : bases_) {
    IntMatrix m(1, 1);
    m.at(0, 0) = Int(b);
    mats.push_back(std::move(m));
  }
  return BratteliDiagram::make(std::move(mats));
}

Int AddingMachine::prefix_value(const PathPrefix& p) const {
  if (p.level() > bases_.size())
    raise(errc::level_unavailable,
          "machine truncated at depth " + std::to_string(bases_.size()));
  Int value = 0;
  Int weight = 1;
  for (std::size_t t = 0; t < p.level(); ++t) {
    value += Int(p.steps()[t].edge) * weight;
    weight *= Int(bases_[t]);
  }
  return value;
}

Int AddingMachine::modulus(std::size_t depth) const {
  if (depth > bases_.size())
    raise(errc::level_unavailable,
          "machine truncated at depth " + std::to_string(bases_.size()));
  Int m = 1;
  for (std::size_t t = 0; t < depth; ++t) m *= Int(bases_[t]);
  return m;
}

PathPrefix AddingMachine::value_prefix(const BratteliDiagram& diagram,
                                       Int value, std::size_t depth) const {
  PathPrefix p;
  for (std::size_t t = 0; t < depth; ++t) {
    Int digit = value % Int(bases_[t]);
    value /= Int(bases_[t]);
    p = p.extended(diagram, static_cast<std::size_t>(digit));
  }
  return p;
}

GeneratorFamily GeneratorFamily::of_system(const GeneratorSystem& system) {
  GeneratorFamily family(system.diagram());
  for (std::size_t n = 1; n <= system.levels(); ++n)
    for (std::size_t r = 0; r < system.vertices_at(n); ++r)
      for (std::size_t s = 0; s < system.family_size(n, r); ++s) {
        std::ostringstream name;
        name << "sigma(" << n << ',' << r + 1 << ',' << s + 1 << ')';
        family.add(name.str(), system.sigma(n, r, s));
      }
  return family;
}

GeneratorFamily GeneratorFamily::odometer(std::vector<std::size_t> bases) {
  AddingMachine machine(std::move(bases), 1);
  GeneratorFamily family(machine.diagram());
  family.add("phi", std::move(machine));
  return family;
}

void GeneratorFamily::add(std::string name, Action action) {
  for (const auto& [existing, a] : entries_)
    if (existing == name)
      raise(errc::unknown_generator, "duplicate generator name " + name);
  if (const auto* machine = std::get_if<AddingMachine>(&action)) {
    // the machine's digit space must be the family's path space
    for (std::size_t t = 0; t < machine->depth(); ++t) {
      if (t >= diagram_->num_levels() || diagram_->vertices_at(t) != 1 ||
          diagram_->out_degree(t, 0) != machine->bases()[t])
        raise(errc::diagram_mismatch,
              "adding machine bases do not match the family diagram");
    }
  } else if (const auto* map = std::get_if<PartialMap>(&action)) {
    if (!same_diagram(map->diagram(), diagram_))
      raise(errc::diagram_mismatch,
            "generator map lives on another diagram");
  }
  entries_.emplace_back(std::move(name), std::move(action));
}

const GeneratorFamily::Action& GeneratorFamily::by_name(
    const std::string& name) const {
  for (const auto& [n, action] : entries_)
    if (n == name) return action;
  raise(errc::unknown_generator, name);
}

std::string word_to_string(const Word& word) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) os << ' ';
    os << word[i].to_string();
  }
  return os.str();
}

namespace {

Int floor_mod(Int v, const Int& m) {
  Int r = v % m;
  if (r < 0) r += m;
  return r;
}

struct MachineRun {
  const AddingMachine* machine;
  Int net; // signed sum of increments over the run
};

// A word as an alternation of prefix-swap letters and same-machine runs;
// net increments inside a run make phi phi^-1 provably the identity.
std::vector<std::variant<PartialMap, MachineRun>> word_stages(
    const GeneratorFamily& family, const Word& word) {
  std::vector<std::variant<PartialMap, MachineRun>> stages;
  for (const WordLetter& letter : word) {
    const GeneratorFamily::Action& action = family.by_name(letter.name);
    if (const auto* machine = std::get_if<AddingMachine>(&action)) {
      Int delta = letter.inverse ? -machine->increment() : machine->increment();
      if (!stages.empty()) {
        if (auto* run = std::get_if<MachineRun>(&stages.back());
            run && run->machine == machine) {
          run->net += delta;
          continue;
        }
      }
      stages.push_back(MachineRun{machine, delta});
    } else {
      const auto& map = std::get<PartialMap>(action);
      stages.push_back(letter.inverse ? invert(map) : map);
    }
  }
  return stages;
}

} // namespace

WordImage word_image(const GeneratorFamily& family, const Word& word,
                     const Cylinder& c) {
  if (word.empty()) raise(errc::usage_error, "empty word");
  Cylinder current = c;
  bool tail_identity = true;
  for (const auto& stage : word_stages(family, word)) {
    if (const auto* run = std::get_if<MachineRun>(&stage)) {
      std::size_t d = current.depth();
      Int value = run->machine->prefix_value(current.prefix);
      Int modulus = run->machine->modulus(d);
      Int shifted = value + run->net;
      if (shifted < 0 || shifted >= modulus) tail_identity = false;
      current = Cylinder{run->machine->value_prefix(
          *family.diagram(), floor_mod(shifted, modulus), d)};
    } else {
      const auto& map = std::get<PartialMap>(stage);
      auto applied = map.apply_to_cylinder(current);
      if (applied.coverage == PartialMap::Coverage::None)
        raise(errc::undefined_on_cylinder,
              "word undefined on cylinder " + current.to_string());
      if (applied.coverage == PartialMap::Coverage::Partial)
        raise(errc::undefined_on_cylinder,
              "word only partially defined on cylinder " +
                  current.to_string());
      current = applied.image;
    }
  }
  return {current, tail_identity};
}

namespace {

std::optional<PartialMap> compose_word(const GeneratorFamily& family,
                                       const Word& word) {
  PartialMap composed =
      PartialMap::identity_on(ClopenSet::whole_space(family.diagram()));
  for (const WordLetter& letter : word) {
    const GeneratorFamily::Action& action = family.by_name(letter.name);
    const auto* map = std::get_if<PartialMap>(&action);
    if (!map) return std::nullopt;
    composed = compose(letter.inverse ? invert(*map) : *map, composed);
  }
  return composed;
}

bool cylinders_disjoint(const Cylinder& a, const Cylinder& b) {
  return !a.prefix.is_prefix_of(b.prefix) && !b.prefix.is_prefix_of(a.prefix);
}

std::optional<NonAFCertificate> check_swap_word(
    const GeneratorFamily& family, const Word& word, const PartialMap& map,
    const std::vector<Cylinder>& base_candidates, std::size_t witness_depth) {
  const DiagramPtr& diagram = family.diagram();
  for (const Cylinder& b : base_candidates) {
    ClopenSet b_set = ClopenSet::single(diagram, b);
    PartialMap on_b = restrict(map, b_set);
    if (!clopen_equals(on_b.domain(), b_set)) continue; // not defined on all of B
    if (!clopen_equals(on_b.range(), b_set)) continue;
    for (const PathPrefix& w :
         refine_prefix(*diagram, b.prefix, witness_depth)) {
      Cylinder witness{w};
      ClopenSet image = map.image_of(ClopenSet::single(diagram, witness));
      if (image.cylinders().size() != 1) continue;
      const Cylinder& moved = image.cylinders().front();
      if (cylinders_disjoint(witness, moved))
        return NonAFCertificate{word, b_set, witness, moved};
    }
  }
  return std::nullopt;
}

std::optional<NonAFCertificate> check_mixed_word(
    const GeneratorFamily& family, const Word& word,
    const std::vector<Cylinder>& base_candidates, std::size_t witness_depth) {
  const DiagramPtr& diagram = family.diagram();
  for (const Cylinder& b : base_candidates) {
    Cylinder image;
    try {
      image = word_image(family, word, b).image;
    } catch (const Error& e) {
      if (e.code() == errc::undefined_on_cylinder) continue;
      throw;
    }
    if (!(image == b)) continue;
    for (const PathPrefix& w :
         refine_prefix(*diagram, b.prefix, witness_depth)) {
      Cylinder witness{w};
      Cylinder moved;
      try {
        moved = word_image(family, word, witness).image;
      } catch (const Error& e) {
        if (e.code() == errc::undefined_on_cylinder) continue;
        throw;
      }
      if (cylinders_disjoint(witness, moved))
        return NonAFCertificate{word, ClopenSet::single(diagram, b), witness,
                                moved};
    }
  }
  return std::nullopt;
}

} // namespace

SearchOutcome find_non_af_certificate(const GeneratorFamily& family,
                                      std::size_t max_word_len,
                                      std::size_t max_depth) {
  if (max_word_len < 1 || max_depth < 1)
    raise(errc::usage_error, "search bounds must be at least 1");
  const DiagramPtr& diagram = family.diagram();

  std::vector<Cylinder> base_candidates;
  for (std::size_t d = 1; d <= max_depth; ++d)
    for (const PathPrefix& p : enumerate_all_paths(*diagram, d))
      base_candidates.push_back(Cylinder{p});

  struct State {
    Word word;
    bool swap_only;
    PartialMap composed; // meaningful only when swap_only
  };
  std::vector<State> frontier{
      {Word{}, true,
       PartialMap::identity_on(ClopenSet::whole_space(diagram))}};
  std::set<std::string> seen_maps;

  for (std::size_t len = 1; len <= max_word_len; ++len) {
    std::vector<State> next;
    for (const State& state : frontier) {
      for (std::size_t i = 0; i < family.size(); ++i) {
        for (bool inverse : {false, true}) {
          Word word = state.word;
          word.push_back(WordLetter{family.name_at(i), inverse});
          const auto& action = family.action_at(i);
          const auto* map = std::get_if<PartialMap>(&action);
          if (state.swap_only && map) {
            PartialMap composed =
                compose(inverse ? invert(*map) : *map, state.composed);
            if (composed.is_empty()) continue; // absorbs; no B can survive
            if (!seen_maps.insert(composed.to_string()).second) continue;
            if (auto cert = check_swap_word(family, word, composed,
                                            base_candidates, max_depth))
              return {std::move(cert), max_word_len, max_depth};
            next.push_back(State{std::move(word), true, std::move(composed)});
          } else {
            if (auto cert = check_mixed_word(family, word, base_candidates,
                                             max_depth))
              return {std::move(cert), max_word_len, max_depth};
            next.push_back(State{std::move(word), false, PartialMap{}});
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return {std::nullopt, max_word_len, max_depth};
}

bool validate_certificate(const GeneratorFamily& family,
                          const NonAFCertificate& certificate) {
  const DiagramPtr& diagram = family.diagram();
  ClopenSet witness_set =
      ClopenSet::single(diagram, certificate.witness);
  if (!clopen_subset(witness_set, certificate.b_set)) return false;
  if (auto composed = compose_word(family, certificate.word)) {
    PartialMap on_b = restrict(*composed, certificate.b_set);
    if (!clopen_equals(on_b.domain(), certificate.b_set)) return false;
    if (!clopen_equals(on_b.range(), certificate.b_set)) return false;
    ClopenSet image = composed->image_of(witness_set);
    return !image.is_empty() && clopen_disjoint(image, witness_set);
  }
  // machine letters present: evaluate cylinder-wise
  std::vector<Cylinder> images;
  try {
    for (const Cylinder& c : certificate.b_set.cylinders())
      images.push_back(word_image(family, certificate.word, c).image);
    ClopenSet image_set = ClopenSet::of(diagram, std::move(images));
    if (!clopen_equals(image_set, certificate.b_set)) return false;
    Cylinder moved = word_image(family, certificate.word, certificate.witness)
                         .image;
    return !certificate.witness.prefix.is_prefix_of(moved.prefix) &&
           !moved.prefix.is_prefix_of(certificate.witness.prefix);
  } catch (const Error& e) {
    if (e.code() == errc::undefined_on_cylinder) return false;
    throw;
  }
}

} // namespace afdg
