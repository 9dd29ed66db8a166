#include "eraser/protocol.hpp"

#include <string>

#include "eraser/error.hpp"
#include "eraser/linalg.hpp"

namespace eraser {
namespace {

// z * core * z^-1, checked to be freely reduced at both junctions.
BraidWord conjugate_core(std::mt19937_64& rng, const BraidWord& z, std::size_t core_len, int lo, int hi) {
  const auto zl = z.flatten();
  const int last = zl.empty() ? 0 : zl.back();
  const BraidWord zinv = z.inverse();
  for (;;) {
    BraidWord core = random_word(rng, core_len, lo, hi, -last);
    const auto cl = core.flatten();
    if (!cl.empty() && last != 0 && cl.back() == last) continue;
    const BraidWord parts[] = {z, core, zinv};
    return word_free_reduce(BraidWord::concat(parts));
  }
}

}  // namespace

Matrix random_unit(const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  if (basis.empty()) throw Error(Errc::InvalidArgument, "empty basis");
  std::uniform_int_distribution<Elem> pick(0, basis.front().field().order() - 1);
  std::vector<Elem> x(basis.size());
  for (;;) {
    for (auto& e : x) e = pick(rng);
    Matrix c = linear_combination(basis, x);
    if (c.invertible()) return c;
  }
}

TtpResult ttp_generate(const TtpOptions& o, std::mt19937_64& rng) {
  if (o.n < 4) throw Error(Errc::InvalidArgument, "n must be at least 4");
  if (o.gen_count < 2) throw Error(Errc::InvalidArgument, "need at least two generators per subgroup");
  if (o.word_len < 1) throw Error(Errc::InvalidArgument, "word length must be positive");
  FieldPtr field = make_field(o.field_bits, o.modulus);
  if (field->order() < 4) throw Error(Errc::InvalidArgument, "field too small to draw tau outside {0,1}");

  const int n = static_cast<int>(o.n);
  const int half = n / 2;

  std::uniform_int_distribution<Elem> pick_tau(2, field->order() - 1);
  std::vector<Elem> tau(o.n);
  for (auto& t : tau) t = pick_tau(rng);

  TtpResult out{{EvalParams::make(field, std::move(tau)), {}, {}}, {}, {}};

  const std::size_t z_len = o.word_len / 4;
  const std::size_t core_len = o.word_len - 2 * z_len;
  out.debug.conjugator = random_word(rng, z_len, 1, n - 1);
  for (std::size_t k = 0; k < o.gen_count; ++k) {
    auto a = conjugate_core(rng, out.debug.conjugator, core_len, 1, half - 1);
    out.pub.a_gens.push_back(a);
  }
  for (std::size_t k = 0; k < o.gen_count; ++k) {
    auto b = conjugate_core(rng, out.debug.conjugator, core_len, half + 1, n - 1);
    out.priv.b_gens.push_back(b);
  }
  // Cores are recoverable as the middle segment; keep them for inspection.
  for (const auto& a : out.pub.a_gens) {
    auto l = a.flatten();
    out.debug.a_cores.push_back(BraidWord(std::vector<BraidWord::Letter>(
        l.begin() + static_cast<std::ptrdiff_t>(z_len), l.end() - static_cast<std::ptrdiff_t>(z_len))));
  }
  for (const auto& b : out.priv.b_gens) {
    auto l = b.flatten();
    out.debug.b_cores.push_back(BraidWord(std::vector<BraidWord::Letter>(
        l.begin() + static_cast<std::ptrdiff_t>(z_len), l.end() - static_cast<std::ptrdiff_t>(z_len))));
  }

  for (;;) {
    const BraidWord w = random_word(rng, 4 * o.n, 1, n - 1);
    Matrix kappa = word_eval_pair(w, out.pub.params).mat;
    if (!kappa.invertible()) continue;
    if (algebra_basis({kappa}).size() < 3) continue;
    out.debug.kappa = kappa;
    break;
  }
  out.pub.c_gens = {out.debug.kappa};
  if (o.d_choice == DChoice::SameAsC) {
    out.priv.d_gens = out.pub.c_gens;
  } else {
    out.priv.d_gens = {random_unit(algebra_basis(out.pub.c_gens), rng)};
  }
  return out;
}

RoundResult alice_round(const InstancePublic& pub, std::mt19937_64& rng, const RoundOptions& options) {
  std::uniform_int_distribution<std::size_t> draws(options.min_draws, options.max_draws);
  PartySecret s{random_unit(kappa_basis(pub), rng), {}};
  s.word = random_product(pub.a_gens, draws(rng), rng);
  OmegaElement msg = left_act(s.unit, word_eval_pair(s.word, pub.params));
  return {std::move(s), std::move(msg)};
}

RoundResult bob_round(const InstancePublic& pub, const InstancePrivate& priv, std::mt19937_64& rng,
                      const RoundOptions& options) {
  std::uniform_int_distribution<std::size_t> draws(options.min_draws, options.max_draws);
  PartySecret s{random_unit(algebra_basis(priv.d_gens), rng), {}};
  s.word = random_product(priv.b_gens, draws(rng), rng);
  OmegaElement msg = left_act(s.unit, word_eval_pair(s.word, pub.params));
  return {std::move(s), std::move(msg)};
}

SharedKey derive_key_alice(const PartySecret& alice, const OmegaElement& bob_msg, const InstancePublic& pub) {
  return {left_act(alice.unit, e_multiply(bob_msg, alice.word, pub.params))};
}

SharedKey derive_key_bob(const PartySecret& bob, const OmegaElement& alice_msg, const InstancePublic& pub) {
  return {left_act(bob.unit, e_multiply(alice_msg, bob.word, pub.params))};
}

}  // namespace eraser
