#ifndef AFDG_WORDS_HPP
#define AFDG_WORDS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afdg/generator_system.hpp"
#include "afdg/partial_map.hpp"

namespace afdg {

/// Add-with-carry map phi^k on a product of finite digit sets,
/// truncated at a working depth. Digits are little-endian: the first
/// path edge is the least significant digit.
class AddingMachine {
public:
  AddingMachine(std::vector<std::size_t> bases, Int increment);

  const std::vector<std::size_t>& bases() const { return bases_; }
  const Int& increment() const { return increment_; }
  std::size_t depth() const { return bases_.size(); }

  /// The rank-1 diagram whose path space the machine acts on.
  DiagramPtr diagram() const;

  /// Value of a depth-d digit prefix, 0 <= value < modulus(d).
  Int prefix_value(const PathPrefix& p) const;
  Int modulus(std::size_t depth) const;

  /// Digits of `value` mod modulus(depth) as a path prefix.
  PathPrefix value_prefix(const BratteliDiagram& diagram, Int value,
                          std::size_t depth) const;

private:
  std::vector<std::size_t> bases_;
  Int increment_;
};

/// A named, ordered alphabet of word generators over one diagram. The
/// order fixes the lexicographic word ordering of the certificate
/// search.
class GeneratorFamily {
public:
  using Action = std::variant<PartialMap, AddingMachine>;

  explicit GeneratorFamily(DiagramPtr diagram) : diagram_(std::move(diagram)) {}

  /// All generators of a system, named sigma(n,r,s) with 1-based
  /// indices, in (n, r, s) order.
  static GeneratorFamily of_system(const GeneratorSystem& system);

  /// The single generator "phi" on the machine's own digit diagram.
  static GeneratorFamily odometer(std::vector<std::size_t> bases);

  void add(std::string name, Action action);

  const DiagramPtr& diagram() const { return diagram_; }
  std::size_t size() const { return entries_.size(); }
  const std::string& name_at(std::size_t i) const { return entries_[i].first; }
  const Action& action_at(std::size_t i) const { return entries_[i].second; }
  const Action& by_name(const std::string& name) const;

private:
  DiagramPtr diagram_;
  std::vector<std::pair<std::string, Action>> entries_;
};

struct WordLetter {
  std::string name;
  bool inverse = false;

  std::string to_string() const { return inverse ? name + "^-1" : name; }
  bool operator==(const WordLetter&) const = default;
};

/// Letters are applied to points in sequence order: the word [a, b]
/// acts as b(a(x)).
using Word = std::vector<WordLetter>;

std::string word_to_string(const Word& word);

struct WordImage {
  Cylinder image;
  /// True when the restriction of the word to the input cylinder
  /// provably moves no tail: prefix swaps always qualify, a run of the
  /// same machine qualifies iff its net increment does not carry past
  /// the cylinder depth, and anything mixed is reported conservatively.
  bool tail_identity;
};

/// Depth-d cylinder image of c under the word. Machines map depth-d
/// cylinders to depth-d cylinders outright; a prefix-swap letter must
/// cover the current cylinder with one of its rules, otherwise the word
/// is not defined on it as a cylinder map.
WordImage word_image(const GeneratorFamily& family, const Word& word,
                     const Cylinder& c);

/// Lemma-style obstruction datum: a word fixing the clopen set B setwise
/// while moving the witness sub-cylinder clean off itself.
struct NonAFCertificate {
  Word word;
  ClopenSet b_set;
  Cylinder witness;
  Cylinder witness_image;
};

struct SearchOutcome {
  std::optional<NonAFCertificate> certificate;
  std::size_t max_word_len;
  std::size_t max_depth;

  bool found() const { return certificate.has_value(); }
};

/// Breadth-first search over words of length <= max_word_len (shorter
/// first, then lexicographic in alphabet order) and base sets drawn
/// from single cylinders of depth 1..max_depth (shallower first, then
/// lexicographic). Witnesses are scanned among the depth-max_depth
/// refinements of B. A miss is NotFound for the searched range only,
/// never a proof of AF-ness.
SearchOutcome find_non_af_certificate(const GeneratorFamily& family,
                                      std::size_t max_word_len,
                                      std::size_t max_depth);

/// Recomputes the three certificate facts: the word fixes B, the
/// witness lies in B, and the witness image is disjoint from it.
bool validate_certificate(const GeneratorFamily& family,
                          const NonAFCertificate& certificate);

} // namespace afdg

#endif
