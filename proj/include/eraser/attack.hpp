#pragma once

// Shared-key recovery from public data only. This header deliberately
// depends on instance.hpp and not on protocol.hpp: Bob's generators and the
// secret units are not reachable from here.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eraser/error.hpp"
#include "eraser/instance.hpp"
#include "eraser/linalg.hpp"
#include "eraser/stabilizer_chain.hpp"

namespace eraser {

struct AttackConfig {
  std::size_t stall = 4;       // stop after this many candidates in a row add nothing
  std::size_t order_cap = 0;   // largest admitted permutation order; 0 means n
  std::size_t min_product = 2;
  std::size_t max_product = 10;
  std::size_t initial_candidates = 256;
  std::size_t enlargements = 3;
  std::size_t skip_budget = 4096;  // consecutive order-filter rejections before giving up
  std::size_t max_tries = 64;      // Stage 2 invertible sampling
  std::size_t shorten_rounds = 0;  // Minkwitz rounds on the Stage 1 chain
  unsigned threads = 1;
};

/// Failure of a named attack stage; `budget` describes the search state.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause, const std::string& budget = {})
      : Error(Verbatim{}, cause.code(),
              stage + ": " + cause.what() + (budget.empty() ? std::string() : " [" + budget + "]")),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PureStats {
  std::size_t candidates = 0;  // pure elements fed to the closure
  std::size_t skipped = 0;     // products rejected by the order filter
  std::size_t productive = 0;  // candidates that enlarged V
  std::uint64_t longest_witness = 0;
};

/// Algebra V spanned by images of pure elements of A, each basis element
/// witnessed by a pure word over A's generators.
class PureBasis {
 public:
  PureBasis(FieldPtr field, std::size_t n) : closure_(std::move(field), n, true) {}

  const WitnessedBasis& basis() const { return closure_.basis(); }
  std::size_t dim() const { return closure_.dim(); }
  const PureStats& stats() const { return stats_; }

 private:
  friend void extend_pure_basis(PureBasis&, const InstancePublic&, std::mt19937_64&, const AttackConfig&,
                                std::size_t);
  AlgebraClosure closure_;
  PureStats stats_;
};

/// Random short products w of A's generators whose permutation has order
/// r <= order_cap, raised to w^r; their images are closed into an algebra
/// until `stall` consecutive candidates leave the dimension unchanged or the
/// candidate budget runs out. Throws Errc::PureElementSearchExhausted.
PureBasis precompute_pure_basis(const InstancePublic& pub, std::mt19937_64& rng, const AttackConfig& config);

/// Resumes the search on an existing basis with a fresh stall counter.
void extend_pure_basis(PureBasis& basis, const InstancePublic& pub, std::mt19937_64& rng, const AttackConfig& config,
                       std::size_t budget);

/// Stabilizer chain over the permutation parts of A's generators, labelled
/// by generator index.
StabilizerChain build_generator_chain(const InstancePublic& pub, std::mt19937_64& rng, std::size_t shorten_rounds);

/// Braid word of a generator word over A's generators (label k is a_gens[k]).
BraidWord expand_generator_word(const GenWord& word, const std::vector<BraidWord>& a_gens);

struct Stage1Result {
  GenWord label_word;
  BraidWord a_tilde;
  Matrix gamma;
};

/// Expresses g over A's generators and sets (gamma, e) = (p, g) * psi(a~)^-1.
/// Throws Errc::GNotExpressible.
Stage1Result stage1_express_g(const InstancePublic& pub, const OmegaElement& alice_msg,
                              const StabilizerChain& chain);

struct Stage2Result {
  Matrix c_tilde;
  std::vector<Elem> x;
  std::size_t tries = 0;
  std::size_t solution_dim = 0;
};

/// Invertible c~ = sum x_i kappa_i with gamma^-1 c~ in V.
Stage2Result stage2_find_c(const Matrix& gamma, const std::vector<Matrix>& kappas, const WitnessedBasis& v,
                           std::mt19937_64& rng, std::size_t max_tries);

struct Stage3Result {
  Matrix alpha_prime;
  std::vector<Elem> ell;
};

/// alpha' = c~^-1 gamma and its coordinates over V.
/// Throws Errc::AlphaPrimeOutsideV.
Stage3Result stage3_alpha_prime(const Matrix& c_tilde, const Matrix& gamma, const WitnessedBasis& v);

struct AttackArtifacts {
  BraidWord a_tilde;
  Matrix gamma;
  Matrix c_tilde;
  std::vector<Elem> x;
  Matrix alpha_prime;
  std::vector<Elem> ell;
};

/// c~ . (alpha', e) * psi(a~) == (p, g).
bool audit_alice_message(const AttackArtifacts& art, const OmegaElement& alice_msg, const EvalParams& params);

/// beta' = sum ell_i phi(^h alpha_i), each term by E-multiplying the witness
/// of basis element i from (I, h).
Matrix beta_prime(const WitnessedBasis& v, std::span<const Elem> ell, const Permutation& h, const EvalParams& params,
                  unsigned threads = 1);

/// K^ = c~ . (q beta', h) * psi(a~).
OmegaElement recover_key(const InstancePublic& pub, const Transcript& transcript, const WitnessedBasis& v,
                         const AttackArtifacts& art, unsigned threads = 1);

struct StageTimes {
  double precompute = 0, stage1 = 0, stage2 = 0, stage3 = 0, recover = 0, total = 0;
};

struct AttackStats {
  std::size_t n = 0;
  std::uint32_t field_order = 0;
  std::size_t dim_v = 0;
  std::size_t dim_c = 0;
  PureStats pure;
  std::size_t enlargements_used = 0;
  std::size_t stage1_generator_letters = 0;
  std::uint64_t stage1_word_length = 0;
  std::uint64_t group_order = 0;
  std::size_t stage2_tries = 0;
  std::size_t stage2_solution_dim = 0;
  bool eq1_audit = false;
  StageTimes seconds;
  long peak_rss_kb = 0;
};

struct AttackOutcome {
  OmegaElement key;
  AttackArtifacts artifacts;
  AttackStats stats;
};

/// Full pipeline. On NoSolution, InvertibleSampleFailed or
/// AlphaPrimeOutsideV the pure-element search is resumed (at most
/// config.enlargements times, each with up to 2x the initial budget) and
/// Stages 2-3 are retried. Throws StageError.
AttackOutcome attack_run(const InstancePublic& pub, const Transcript& transcript, std::uint64_t seed,
                         const AttackConfig& config = {});

/// Peak resident set size of this process in kB (0 where unavailable).
long peak_rss_kb();

}  // namespace eraser
