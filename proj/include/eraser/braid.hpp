#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "eraser/field.hpp"
#include "eraser/matrix.hpp"
#include "eraser/perm.hpp"

namespace eraser {

/// Word in the Artin generators: letter +i is sigma_i, -i its inverse
/// (1 <= i <= n-1).
///
/// A BraidWord is an immutable, shared node: a flat run of letters, a
/// concatenation of sub-words, or a repetition (body)^count. Concatenation
/// and repetition never copy letters, so witness words built by products of
/// long pure words stay small in memory however long they expand.
class BraidWord {
 public:
  using Letter = std::int16_t;

  struct Node {
    enum class Kind { Flat, Concat, Repeat } kind;
    std::vector<Letter> letters;   // Flat
    std::vector<BraidWord> parts;  // Concat: parts; Repeat: parts[0] is the body
    std::uint64_t count = 1;       // Repeat
    std::uint64_t length = 0;      // expanded length
    int max_index = 0;             // largest |letter|
  };

  BraidWord();
  explicit BraidWord(std::vector<Letter> letters);
  BraidWord(std::initializer_list<int> letters);

  static BraidWord concat(const BraidWord& a, const BraidWord& b);
  static BraidWord concat(std::span<const BraidWord> parts);
  static BraidWord repeat(const BraidWord& body, std::uint64_t count);

  std::uint64_t length() const { return node_->length; }
  bool empty() const { return node_->length == 0; }
  int max_index() const { return node_->max_index; }
  const Node& node() const { return *node_; }
  bool is_flat() const { return node_->kind == Node::Kind::Flat; }

  BraidWord inverse() const;
  std::vector<Letter> flatten() const;

  /// Streams the expanded word as contiguous runs of letters.
  template <class F>
  void for_each_run(F&& f) const {
    switch (node_->kind) {
      case Node::Kind::Flat:
        if (!node_->letters.empty()) f(std::span<const Letter>(node_->letters));
        break;
      case Node::Kind::Concat:
        for (const auto& p : node_->parts) p.for_each_run(f);
        break;
      case Node::Kind::Repeat:
        for (std::uint64_t k = 0; k < node_->count; ++k) node_->parts[0].for_each_run(f);
        break;
    }
  }

  /// Letter-wise equality of the expansions.
  bool operator==(const BraidWord& rhs) const;

 private:
  explicit BraidWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Cancels adjacent sigma_i sigma_i^-1 pairs; no braid relations applied.
BraidWord word_free_reduce(const BraidWord& w);

/// w^r written as P (x)^r P^-1, where w = P x P^-1 freely and x is cyclically
/// reduced, so consecutive copies of w do not produce cancelling letters.
BraidWord word_power(const BraidWord& w, std::uint64_t r);

/// Permutation part of psi: sigma_i -> transposition (i, i+1), in word order.
Permutation word_perm(const BraidWord& w, std::size_t n);

/// Uniform freely-reduced random word with letters from +-{lo..hi}.
/// `avoid_first` forbids the first letter (used to prevent cancellation at a
/// junction); pass 0 to allow anything.
BraidWord random_word(std::mt19937_64& rng, std::size_t length, int lo, int hi, int avoid_first = 0);

/// Free reduction of a product of `draws` uniformly chosen words or their inverses.
BraidWord random_product(const std::vector<BraidWord>& gens, std::size_t draws, std::mt19937_64& rng);

/// Evaluation data: the field, the number of strands and the values tau_i
/// substituted for the indeterminates t_i.
struct EvalParams {
  FieldPtr field;
  std::size_t n = 0;
  std::vector<Elem> tau;

  /// Throws Errc::InvalidArgument for n < 2, a length mismatch, or a zero tau.
  static EvalParams make(FieldPtr field, std::vector<Elem> tau);
};

/// Element of Omega = GL_n(F) x S_n.
struct OmegaElement {
  Matrix mat;
  Permutation perm;

  static OmegaElement one(const EvalParams& params);
  bool operator==(const OmegaElement&) const = default;
};

/// x . (s, g) = (x s, g).
OmegaElement left_act(const Matrix& x, const OmegaElement& w);

/// (s, g) * psi(w): E-multiplication, streamed letter by letter.
///
/// The colored Burau generator x_i(t) is the identity except row i, which
/// holds t_i at column i-1, -t_i on the diagonal and 1 at column i+1. A
/// permutation g acts on indeterminates by t_j -> t_{g^-1(j)}, so at state
/// (s, g) a letter +i multiplies s on the right by x_i evaluated at
/// tau_{g^-1(i)}, and -i by the inverse generator (row i: 1, -1/t, 1/t)
/// evaluated at tau_{g^-1(i+1)}. Each step touches three columns of s.
///
/// With start = (I, h) the matrix part is phi(^h a) for (a, g_w) = psi(w).
/// Throws Errc::LetterOutOfRange, Errc::DimensionMismatch.
OmegaElement e_multiply(const OmegaElement& start, const BraidWord& w, const EvalParams& params);

/// e_multiply(1, w) = (phi(a), g).
OmegaElement word_eval_pair(const BraidWord& w, const EvalParams& params);

}  // namespace eraser
