#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eraser/instance.hpp"

namespace eraser {

/// Bob's side of the instance; never handed to the attack.
struct InstancePrivate {
  std::vector<BraidWord> b_gens;
  std::vector<Matrix> d_gens;
};

/// Generator internals kept for debugging and tests.
struct TtpDebug {
  BraidWord conjugator;
  std::vector<BraidWord> a_cores;
  std::vector<BraidWord> b_cores;
  Matrix kappa;
};

enum class DChoice {
  SameAsC,        // D = C
  PolynomialInC,  // D generated by a random invertible polynomial in kappa
};

struct TtpOptions {
  std::size_t n = 16;
  unsigned field_bits = 8;
  std::uint32_t modulus = 0;  // 0 selects Field::default_modulus
  std::size_t gen_count = 8;
  std::size_t word_len = 650;
  DChoice d_choice = DChoice::SameAsC;
};

struct TtpResult {
  InstancePublic pub;
  InstancePrivate priv;
  TtpDebug debug;
};

/// Generates an instance whose A and B are conjugates, by one random word z,
/// of braids on disjoint strand sets: A's cores use sigma_1..sigma_{n/2-1},
/// B's cores sigma_{n/2+1}..sigma_{n-1}. Such braids commute in B_n, so their
/// images *-commute. C = D = units of the algebra generated by one matrix
/// kappa whose minimal polynomial has degree >= 3. tau is drawn from F \ {0,1}.
/// Throws Errc::InvalidArgument for n < 4, gen_count < 2, word_len < 1 or a
/// field with fewer than 4 elements.
TtpResult ttp_generate(const TtpOptions& options, std::mt19937_64& rng);

struct RoundOptions {
  std::size_t min_draws = 10;
  std::size_t max_draws = 20;
};

/// (c, g_word) for Alice, (d, h_word) for Bob.
struct PartySecret {
  Matrix unit;
  BraidWord word;
};

struct RoundResult {
  PartySecret secret;
  OmegaElement msg;
};

/// Random invertible linear combination of `basis`.
Matrix random_unit(const std::vector<Matrix>& basis, std::mt19937_64& rng);

RoundResult alice_round(const InstancePublic& pub, std::mt19937_64& rng, const RoundOptions& options = {});
RoundResult bob_round(const InstancePublic& pub, const InstancePrivate& priv, std::mt19937_64& rng,
                      const RoundOptions& options = {});

/// K = c . (q, h) * psi(g_word).
SharedKey derive_key_alice(const PartySecret& alice, const OmegaElement& bob_msg, const InstancePublic& pub);
/// K = d . (p, g) * psi(h_word).
SharedKey derive_key_bob(const PartySecret& bob, const OmegaElement& alice_msg, const InstancePublic& pub);

}  // namespace eraser
