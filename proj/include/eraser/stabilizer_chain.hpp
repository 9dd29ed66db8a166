#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "eraser/perm.hpp"

namespace eraser {

struct GenLetter {
  int label;     // index into the declared generator list
  int exponent;  // +1 or -1

  bool operator==(const GenLetter&) const = default;
};

/// A word in labelled generators, read left to right (left letter applied first).
using GenWord = std::vector<GenLetter>;

GenWord inverse(const GenWord& w);
/// Cancels adjacent x x^-1 pairs.
GenWord free_reduce(const GenWord& w);

struct LabeledPerm {
  int label;
  Permutation perm;
};

/// Evaluates a word over `gens`; labels are looked up by value.
Permutation evaluate(const GenWord& word, const std::vector<LabeledPerm>& gens);

/// Stabilizer chain with a word attached to every stored permutation.
///
/// Built by deterministic Schreier-Sims with base points taken in natural
/// order. Transversals are Schreier trees grown breadth-first, so each
/// transversal word is a shortest path over that level's strong generators.
/// Invariant: every stored (perm, word) pair satisfies
/// evaluate(word, generators()) == perm.
class StabilizerChain {
 public:
  struct Element {
    Permutation perm;
    GenWord word;
  };

  /// Throws Errc::InvalidArgument for an empty list or mixed degrees.
  static StabilizerChain build(std::vector<LabeledPerm> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<LabeledPerm>& generators() const { return generators_; }
  std::vector<std::size_t> base() const;
  /// Orbit length at each level; their product is the group order.
  std::vector<std::size_t> orbit_sizes() const;
  /// Points of the basic orbit at `level` (empty past the last level).
  std::vector<std::size_t> orbit(std::size_t level) const;
  /// Throws Errc::SizeGuard if the order does not fit in 64 bits.
  std::uint64_t order() const;

  bool contains(const Permutation& g) const;
  std::optional<GenWord> try_factor(const Permutation& g) const;
  /// Word evaluating exactly to g; throws Errc::NotInGroup.
  GenWord factor(const Permutation& g) const;

  /// Longest transversal word, in generator letters, over all levels.
  std::size_t max_transversal_length() const;

  /// Minkwitz-style shortening: sifts random short products through the
  /// chain and keeps any transversal entry with a shorter word. Membership
  /// and the word invariant are unaffected.
  void shorten(std::mt19937_64& rng, std::size_t rounds);

  /// Checks the word invariant on every stored element (test hook).
  bool verify_words() const;

 private:
  struct Level {
    std::size_t point;
    std::vector<Element> strong;
    std::vector<std::optional<Element>> transversal;  // indexed by orbit point
  };

  StabilizerChain() = default;
  void rebuild_orbit(std::size_t level);
  // Sifts from `from` downward; returns the residue and the level it stopped at.
  std::pair<Element, std::size_t> sift(Element e, std::size_t from) const;
  void schreier_sims();

  std::size_t degree_ = 0;
  std::vector<LabeledPerm> generators_;
  std::vector<Level> levels_;
};

}  // namespace eraser
