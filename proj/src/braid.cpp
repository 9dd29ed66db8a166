#include "eraser/braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "eraser/error.hpp"

namespace eraser {
namespace {

using Letter = BraidWord::Letter;
using Node = BraidWord::Node;

std::shared_ptr<const Node> flat_node(std::vector<Letter> letters) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Flat;
  node->length = letters.size();
  for (auto l : letters) node->max_index = std::max(node->max_index, std::abs(static_cast<int>(l)));
  node->letters = std::move(letters);
  return node;
}

}  // namespace

BraidWord::BraidWord() : node_(flat_node({})) {}

BraidWord::BraidWord(std::vector<Letter> letters) : node_(flat_node(std::move(letters))) {
  for (auto l : node_->letters)
    if (l == 0) throw Error(Errc::LetterOutOfRange, "braid letter 0");
}

BraidWord::BraidWord(std::initializer_list<int> letters) {
  std::vector<Letter> ls;
  for (int l : letters) {
    if (l == 0 || std::abs(l) > 0x7fff) throw Error(Errc::LetterOutOfRange, "braid letter " + std::to_string(l));
    ls.push_back(static_cast<Letter>(l));
  }
  node_ = flat_node(std::move(ls));
}

BraidWord BraidWord::concat(const BraidWord& a, const BraidWord& b) {
  const BraidWord parts[] = {a, b};
  return concat(parts);
}

BraidWord BraidWord::concat(std::span<const BraidWord> parts) {
  std::vector<BraidWord> kept;
  for (const auto& p : parts)
    if (!p.empty()) kept.push_back(p);
  if (kept.empty()) return BraidWord();
  if (kept.size() == 1) return kept.front();
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Concat;
  for (const auto& p : kept) {
    node->length += p.length();
    node->max_index = std::max(node->max_index, p.max_index());
  }
  node->parts = std::move(kept);
  return BraidWord(std::shared_ptr<const Node>(std::move(node)));
}

BraidWord BraidWord::repeat(const BraidWord& body, std::uint64_t count) {
  if (count == 0 || body.empty()) return BraidWord();
  if (count == 1) return body;
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Repeat;
  node->parts = {body};
  node->count = count;
  node->length = body.length() * count;
  node->max_index = body.max_index();
  return BraidWord(std::shared_ptr<const Node>(std::move(node)));
}

BraidWord BraidWord::inverse() const {
  switch (node_->kind) {
    case Node::Kind::Flat: {
      std::vector<Letter> ls(node_->letters.rbegin(), node_->letters.rend());
      for (auto& l : ls) l = static_cast<Letter>(-l);
      return BraidWord(flat_node(std::move(ls)));
    }
    case Node::Kind::Concat: {
      std::vector<BraidWord> parts;
      parts.reserve(node_->parts.size());
      for (auto it = node_->parts.rbegin(); it != node_->parts.rend(); ++it) parts.push_back(it->inverse());
      return concat(parts);
    }
    case Node::Kind::Repeat:
      return repeat(node_->parts[0].inverse(), node_->count);
  }
  return BraidWord();
}

std::vector<Letter> BraidWord::flatten() const {
  std::vector<Letter> out;
  out.reserve(length());
  for_each_run([&](std::span<const Letter> run) { out.insert(out.end(), run.begin(), run.end()); });
  return out;
}

bool BraidWord::operator==(const BraidWord& rhs) const {
  if (node_ == rhs.node_) return true;
  return length() == rhs.length() && flatten() == rhs.flatten();
}

BraidWord word_free_reduce(const BraidWord& w) {
  std::vector<Letter> out;
  out.reserve(w.length());
  w.for_each_run([&](std::span<const Letter> run) {
    for (auto l : run) {
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
  });
  return BraidWord(std::move(out));
}

BraidWord word_power(const BraidWord& w, std::uint64_t r) {
  if (r == 0) return BraidWord();
  const auto letters = word_free_reduce(w).flatten();
  if (r == 1) return BraidWord(letters);
  std::size_t k = 0;
  const std::size_t len = letters.size();
  while (2 * (k + 1) < len && letters[k] == -letters[len - 1 - k]) ++k;
  BraidWord prefix(std::vector<Letter>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(k)));
  BraidWord core(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(k),
                                     letters.end() - static_cast<std::ptrdiff_t>(k)));
  const BraidWord parts[] = {prefix, BraidWord::repeat(core, r), prefix.inverse()};
  return BraidWord::concat(parts);
}

Permutation word_perm(const BraidWord& w, std::size_t n) {
  if (w.max_index() > static_cast<int>(n) - 1)
    throw Error(Errc::LetterOutOfRange, "letter exceeds n-1 = " + std::to_string(n - 1));
  // Track g^-1: right-multiplying g by s_i swaps entries i-1, i of g^-1.
  std::vector<std::uint16_t> ginv(n);
  for (std::size_t j = 0; j < n; ++j) ginv[j] = static_cast<std::uint16_t>(j);
  w.for_each_run([&](std::span<const Letter> run) {
    for (auto l : run) {
      const std::size_t r = static_cast<std::size_t>(std::abs(static_cast<int>(l))) - 1;
      std::swap(ginv[r], ginv[r + 1]);
    }
  });
  return Permutation::from_images(std::move(ginv)).inverse();
}

BraidWord random_word(std::mt19937_64& rng, std::size_t length, int lo, int hi, int avoid_first) {
  if (lo < 1 || hi < lo) throw Error(Errc::InvalidArgument, "bad generator range for random word");
  std::uniform_int_distribution<int> pick(lo, hi);
  std::bernoulli_distribution flip(0.5);
  std::vector<Letter> out;
  out.reserve(length);
  while (out.size() < length) {
    int l = pick(rng);
    if (flip(rng)) l = -l;
    const int forbidden = out.empty() ? avoid_first : -out.back();
    if (l == forbidden) continue;
    out.push_back(static_cast<Letter>(l));
  }
  return BraidWord(std::move(out));
}

BraidWord random_product(const std::vector<BraidWord>& gens, std::size_t draws, std::mt19937_64& rng) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "no generators to draw from");
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::bernoulli_distribution flip(0.5);
  std::vector<BraidWord> parts;
  parts.reserve(draws);
  for (std::size_t k = 0; k < draws; ++k) {
    const auto& g = gens[pick(rng)];
    parts.push_back(flip(rng) ? g.inverse() : g);
  }
  return word_free_reduce(BraidWord::concat(parts));
}

EvalParams EvalParams::make(FieldPtr field, std::vector<Elem> tau) {
  if (!field) throw Error(Errc::InvalidArgument, "missing field");
  if (tau.size() < 2) throw Error(Errc::InvalidArgument, "need at least two strands");
  for (Elem t : tau) {
    if (t == 0) throw Error(Errc::InvalidArgument, "tau values must be nonzero");
    if (!field->contains(t)) throw Error(Errc::InvalidArgument, "tau value outside field");
  }
  EvalParams p;
  p.field = std::move(field);
  p.n = tau.size();
  p.tau = std::move(tau);
  return p;
}

OmegaElement OmegaElement::one(const EvalParams& params) {
  return {Matrix::identity(params.field, params.n), Permutation(params.n)};
}

OmegaElement left_act(const Matrix& x, const OmegaElement& w) { return {x * w.mat, w.perm}; }

OmegaElement e_multiply(const OmegaElement& start, const BraidWord& w, const EvalParams& params) {
  const std::size_t n = params.n;
  if (start.mat.n() != n || start.perm.size() != n)
    throw Error(Errc::DimensionMismatch, "start element does not match n = " + std::to_string(n));
  if (w.max_index() > static_cast<int>(n) - 1)
    throw Error(Errc::LetterOutOfRange, "letter exceeds n-1 = " + std::to_string(n - 1));

  const Field& f = *params.field;
  const std::uint32_t q1 = f.order() - 1;
  Matrix s = start.mat;
  Elem* m = s.entries().data();

  std::vector<std::uint16_t> ginv = start.perm.inverse().images();
  // tau_log[j] = log tau_{g^-1(j)}.
  std::vector<std::uint32_t> tau_log(n);
  for (std::size_t j = 0; j < n; ++j) tau_log[j] = f.log_of(params.tau[ginv[j]]);

  w.for_each_run([&](std::span<const Letter> run) {
    for (auto l : run) {
      const std::size_t r = static_cast<std::size_t>(std::abs(static_cast<int>(l))) - 1;
      if (l > 0) {
        const std::uint32_t lt = tau_log[r];
        for (std::size_t k = 0; k < n; ++k) {
          Elem* row = m + k * n;
          const Elem v = row[r];
          if (v == 0) continue;
          const Elem vt = f.exp_of(f.log_of(v) + lt);
          if (r > 0) row[r - 1] ^= vt;
          row[r] = vt;
          row[r + 1] ^= v;
        }
      } else {
        const std::uint32_t lti = (q1 - tau_log[r + 1]) % q1;
        for (std::size_t k = 0; k < n; ++k) {
          Elem* row = m + k * n;
          const Elem v = row[r];
          if (v == 0) continue;
          const Elem vt = f.exp_of(f.log_of(v) + lti);
          if (r > 0) row[r - 1] ^= v;
          row[r] = vt;
          row[r + 1] ^= vt;
        }
      }
      std::swap(tau_log[r], tau_log[r + 1]);
      std::swap(ginv[r], ginv[r + 1]);
    }
  });
  return {std::move(s), Permutation::from_images(std::move(ginv)).inverse()};
}

OmegaElement word_eval_pair(const BraidWord& w, const EvalParams& params) {
  return e_multiply(OmegaElement::one(params), w, params);
}

}  // namespace eraser
