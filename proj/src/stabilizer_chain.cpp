#include "eraser/stabilizer_chain.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>

#include "eraser/error.hpp"

namespace eraser {

GenWord inverse(const GenWord& w) {
  GenWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->label, -it->exponent});
  return out;
}

GenWord free_reduce(const GenWord& w) {
  GenWord out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().label == l.label && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Permutation evaluate(const GenWord& word, const std::vector<LabeledPerm>& gens) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "no generators");
  std::unordered_map<int, std::size_t> index;
  for (std::size_t i = 0; i < gens.size(); ++i) index.emplace(gens[i].label, i);
  Permutation out(gens.front().perm.size());
  for (const auto& l : word) {
    auto it = index.find(l.label);
    if (it == index.end()) throw Error(Errc::InvalidArgument, "unknown generator label " + std::to_string(l.label));
    const Permutation& p = gens[it->second].perm;
    out = out * (l.exponent < 0 ? p.inverse() : p);
  }
  return out;
}

namespace {

using Element = StabilizerChain::Element;

GenWord concat(const GenWord& a, const GenWord& b) {
  GenWord w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return free_reduce(w);
}

Element multiply(const Element& a, const Element& b) { return {a.perm * b.perm, concat(a.word, b.word)}; }

Element invert(const Element& a) { return {a.perm.inverse(), inverse(a.word)}; }

std::size_t first_moved_point(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p(i) != i) return i;
  return p.size();
}

}  // namespace

StabilizerChain StabilizerChain::build(std::vector<LabeledPerm> generators) {
  if (generators.empty()) throw Error(Errc::InvalidArgument, "stabilizer chain needs at least one generator");
  StabilizerChain chain;
  chain.degree_ = generators.front().perm.size();
  for (const auto& g : generators)
    if (g.perm.size() != chain.degree_) throw Error(Errc::InvalidArgument, "generators of different degrees");
  chain.generators_ = std::move(generators);
  chain.schreier_sims();
  return chain;
}

void StabilizerChain::rebuild_orbit(std::size_t level) {
  Level& lv = levels_[level];
  // Strong generators of this level are those stored here or deeper, used
  // together with their inverses.
  std::vector<Element> edges;
  for (std::size_t l = level; l < levels_.size(); ++l)
    for (const auto& s : levels_[l].strong) {
      edges.push_back(s);
      edges.push_back(invert(s));
    }

  // Dijkstra on total word length so each transversal word is as short as
  // the current strong generators allow.
  lv.transversal.assign(degree_, std::nullopt);
  std::vector<std::size_t> dist(degree_, std::numeric_limits<std::size_t>::max());
  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  lv.transversal[lv.point] = Element{Permutation(degree_), {}};
  dist[lv.point] = 0;
  queue.push({0, lv.point});
  while (!queue.empty()) {
    auto [d, p] = queue.top();
    queue.pop();
    if (d != dist[p]) continue;
    for (const auto& s : edges) {
      const std::size_t q = s.perm(p);
      const std::size_t nd = d + s.word.size();
      if (nd >= dist[q]) continue;
      Element next = multiply(*lv.transversal[p], s);
      dist[q] = next.word.size();
      lv.transversal[q] = std::move(next);
      queue.push({dist[q], q});
    }
  }
}

std::pair<Element, std::size_t> StabilizerChain::sift(Element e, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const auto& u = levels_[l].transversal[e.perm(levels_[l].point)];
    if (!u) return {std::move(e), l};
    e = multiply(e, invert(*u));
  }
  return {std::move(e), levels_.size()};
}

void StabilizerChain::schreier_sims() {
  for (const auto& g : generators_) {
    if (g.perm.is_identity()) continue;
    Element e{g.perm, {{g.label, 1}}};
    auto [res, level] = sift(std::move(e), 0);
    if (res.perm.is_identity()) continue;
    if (level == levels_.size()) levels_.push_back({first_moved_point(res.perm), {}, {}});
    levels_[level].strong.push_back(std::move(res));
    for (std::size_t l = 0; l <= level; ++l) rebuild_orbit(l);
  }

  // Verify Schreier generators bottom-up; an addition at level j restarts
  // verification there.
  std::size_t i = levels_.size();
  while (i > 0) {
    const std::size_t l = i - 1;
    bool changed = false;
    std::vector<Element> gens;
    for (std::size_t k = l; k < levels_.size(); ++k)
      gens.insert(gens.end(), levels_[k].strong.begin(), levels_[k].strong.end());
    for (std::size_t p = 0; p < degree_ && !changed; ++p) {
      const auto& up = levels_[l].transversal[p];
      if (!up) continue;
      for (const auto& s : gens) {
        const Permutation ps = up->perm * s.perm;
        const auto& uq = levels_[l].transversal[ps(levels_[l].point)];
        // Cheap permutation-only test before any word bookkeeping.
        Permutation probe = ps * uq->perm.inverse();
        if (probe.is_identity()) continue;
        {
          std::size_t lv = l + 1;
          for (; lv < levels_.size(); ++lv) {
            const auto& u = levels_[lv].transversal[probe(levels_[lv].point)];
            if (!u) break;
            probe = probe * u->perm.inverse();
          }
          if (lv == levels_.size() && probe.is_identity()) continue;
        }
        Element schreier = multiply(multiply(*up, s), invert(*uq));
        auto [res, level] = sift(std::move(schreier), l + 1);
        if (level == levels_.size()) levels_.push_back({first_moved_point(res.perm), {}, {}});
        levels_[level].strong.push_back(std::move(res));
        for (std::size_t k = l + 1; k <= level; ++k) rebuild_orbit(k);
        i = level + 1;
        changed = true;
        break;
      }
    }
    if (!changed) --i;
  }
}

std::vector<std::size_t> StabilizerChain::base() const {
  std::vector<std::size_t> b;
  for (const auto& lv : levels_) b.push_back(lv.point);
  return b;
}

std::vector<std::size_t> StabilizerChain::orbit_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& lv : levels_)
    sizes.push_back(static_cast<std::size_t>(
        std::count_if(lv.transversal.begin(), lv.transversal.end(), [](const auto& t) { return t.has_value(); })));
  return sizes;
}

std::vector<std::size_t> StabilizerChain::orbit(std::size_t level) const {
  std::vector<std::size_t> pts;
  if (level >= levels_.size()) return pts;
  const auto& t = levels_[level].transversal;
  for (std::size_t p = 0; p < t.size(); ++p)
    if (t[p]) pts.push_back(p);
  return pts;
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t order = 1;
  for (auto s : orbit_sizes())
    if (__builtin_mul_overflow(order, static_cast<std::uint64_t>(s), &order))
      throw Error(Errc::SizeGuard, "group order exceeds 64 bits");
  return order;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.size() != degree_) return false;
  Permutation e = g;
  for (const auto& lv : levels_) {
    const auto& u = lv.transversal[e(lv.point)];
    if (!u) return false;
    e = e * u->perm.inverse();
  }
  return e.is_identity();
}

std::optional<GenWord> StabilizerChain::try_factor(const Permutation& g) const {
  if (g.size() != degree_) return std::nullopt;
  // g * u_1^-1 * ... * u_k^-1 = e, so g = u_k * ... * u_1.
  Permutation e = g;
  std::vector<const Element*> used;
  for (const auto& lv : levels_) {
    const auto& u = lv.transversal[e(lv.point)];
    if (!u) return std::nullopt;
    e = e * u->perm.inverse();
    used.push_back(&*u);
  }
  if (!e.is_identity()) return std::nullopt;
  GenWord w;
  for (auto it = used.rbegin(); it != used.rend(); ++it) w.insert(w.end(), (*it)->word.begin(), (*it)->word.end());
  return free_reduce(w);
}

GenWord StabilizerChain::factor(const Permutation& g) const {
  auto w = try_factor(g);
  if (!w) throw Error(Errc::NotInGroup, "permutation is not in the generated group");
  return *std::move(w);
}

std::size_t StabilizerChain::max_transversal_length() const {
  std::size_t m = 0;
  for (const auto& lv : levels_)
    for (const auto& t : lv.transversal)
      if (t) m = std::max(m, t->word.size());
  return m;
}

void StabilizerChain::shorten(std::mt19937_64& rng, std::size_t rounds) {
  if (levels_.empty()) return;
  std::uniform_int_distribution<std::size_t> pick_gen(0, generators_.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_len(1, 2 * degree_);
  std::bernoulli_distribution flip(0.5);

  auto improve = [&](Element t) {
    for (auto& lv : levels_) {
      if (t.perm.is_identity()) return;
      auto& entry = lv.transversal[t.perm(lv.point)];
      if (!entry) return;
      if (t.word.size() < entry->word.size()) {
        Element old = std::move(*entry);
        entry = t;
        // Keep sifting the displaced entry: it may improve a deeper level.
        t = multiply(old, invert(*entry));
        continue;
      }
      t = multiply(t, invert(*entry));
    }
  };

  for (std::size_t r = 0; r < rounds; ++r) {
    Element t{Permutation(degree_), {}};
    const std::size_t len = pick_len(rng);
    for (std::size_t k = 0; k < len; ++k) {
      const auto& g = generators_[pick_gen(rng)];
      const bool inv = flip(rng);
      t = multiply(t, Element{inv ? g.perm.inverse() : g.perm, {{g.label, inv ? -1 : 1}}});
    }
    improve(t);
    improve(invert(t));
  }
}

bool StabilizerChain::verify_words() const {
  for (const auto& lv : levels_) {
    for (const auto& s : lv.strong)
      if (evaluate(s.word, generators_) != s.perm) return false;
    for (const auto& t : lv.transversal)
      if (t && evaluate(t->word, generators_) != t->perm) return false;
  }
  return true;
}

}  // namespace eraser
