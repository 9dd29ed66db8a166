#include "eraser/attack.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "parallel.hpp"

namespace eraser {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Candidates are drawn in fixed-size batches so the random stream, and
// therefore the result, does not depend on the thread count.
constexpr std::size_t kCandidateBatch = 8;

bool retryable(Errc code) {
  return code == Errc::NoSolution || code == Errc::InvertibleSampleFailed || code == Errc::AlphaPrimeOutsideV;
}

}  // namespace

void extend_pure_basis(PureBasis& basis, const InstancePublic& pub, std::mt19937_64& rng, const AttackConfig& config,
                       std::size_t budget) {
  if (pub.a_gens.empty()) throw Error(Errc::InvalidArgument, "instance has no A generators");
  const std::size_t n = pub.n();
  const std::uint64_t cap = config.order_cap == 0 ? n : config.order_cap;
  std::uniform_int_distribution<std::size_t> product_len(config.min_product, config.max_product);

  std::size_t processed = 0;
  std::size_t stall = 0;
  std::size_t misses = 0;
  while (processed < budget && stall < config.stall) {
    std::vector<BraidWord> batch;
    while (batch.size() < kCandidateBatch) {
      const BraidWord w = random_product(pub.a_gens, product_len(rng), rng);
      const std::uint64_t r = word_perm(w, n).order();
      if (r > cap) {
        ++basis.stats_.skipped;
        if (++misses > config.skip_budget)
          throw Error(Errc::PureElementSearchExhausted,
                      std::to_string(misses) + " consecutive products had permutation order above " +
                          std::to_string(cap));
        continue;
      }
      misses = 0;
      batch.push_back(word_power(w, r));
    }

    std::vector<Matrix> images(batch.size());
    detail::parallel_for(batch.size(), config.threads,
                         [&](std::size_t i) { images[i] = word_eval_pair(batch[i], pub.params).mat; });

    for (std::size_t i = 0; i < batch.size() && processed < budget && stall < config.stall; ++i) {
      const std::size_t growth = basis.closure_.add_generator(images[i], batch[i]);
      ++processed;
      ++basis.stats_.candidates;
      if (growth == 0) {
        ++stall;
      } else {
        stall = 0;
        ++basis.stats_.productive;
      }
    }
  }
  for (const auto& e : basis.basis().elements())
    basis.stats_.longest_witness = std::max(basis.stats_.longest_witness, e.witness->length());
}

PureBasis precompute_pure_basis(const InstancePublic& pub, std::mt19937_64& rng, const AttackConfig& config) {
  PureBasis basis(pub.field(), pub.n());
  extend_pure_basis(basis, pub, rng, config, config.initial_candidates);
  return basis;
}

StabilizerChain build_generator_chain(const InstancePublic& pub, std::mt19937_64& rng, std::size_t shorten_rounds) {
  std::vector<LabeledPerm> gens;
  for (std::size_t k = 0; k < pub.a_gens.size(); ++k)
    gens.push_back({static_cast<int>(k), word_perm(pub.a_gens[k], pub.n())});
  auto chain = StabilizerChain::build(std::move(gens));
  if (shorten_rounds > 0) chain.shorten(rng, shorten_rounds);
  return chain;
}

BraidWord expand_generator_word(const GenWord& word, const std::vector<BraidWord>& a_gens) {
  std::vector<BraidWord> parts;
  parts.reserve(word.size());
  for (const auto& l : word) {
    if (l.label < 0 || static_cast<std::size_t>(l.label) >= a_gens.size())
      throw Error(Errc::InvalidArgument, "generator label out of range");
    const auto& g = a_gens[static_cast<std::size_t>(l.label)];
    parts.push_back(l.exponent < 0 ? g.inverse() : g);
  }
  return word_free_reduce(BraidWord::concat(parts));
}

Stage1Result stage1_express_g(const InstancePublic& pub, const OmegaElement& alice_msg,
                              const StabilizerChain& chain) {
  auto label_word = chain.try_factor(alice_msg.perm);
  if (!label_word)
    throw Error(Errc::GNotExpressible, "g is not in the group generated by the permutations of A's generators");
  BraidWord a_tilde = expand_generator_word(*label_word, pub.a_gens);
  const OmegaElement image = word_eval_pair(a_tilde, pub.params);
  if (image.perm != alice_msg.perm) throw Error(Errc::AuditFailed, "factored word has the wrong permutation");
  Matrix gamma = alice_msg.mat * image.mat.inverse();

  // (gamma, e) must equal (p, g) * psi(a~)^-1.
  const OmegaElement check = e_multiply(alice_msg, a_tilde.inverse(), pub.params);
  if (!check.perm.is_identity() || check.mat != gamma)
    throw Error(Errc::AuditFailed, "(p, g) * psi(a~)^-1 does not reproduce gamma");
  return {*std::move(label_word), std::move(a_tilde), std::move(gamma)};
}

Stage2Result stage2_find_c(const Matrix& gamma, const std::vector<Matrix>& kappas, const WitnessedBasis& v,
                           std::mt19937_64& rng, std::size_t max_tries) {
  const Matrix gamma_inv = gamma.inverse();
  const SolutionSpace space = solve_membership(gamma_inv, kappas, v);
  InvertibleSample s = sample_invertible(space, kappas, rng, max_tries);
  if (!v.contains(gamma_inv * s.c)) throw Error(Errc::AuditFailed, "gamma^-1 c~ left V");
  return {std::move(s.c), std::move(s.x), s.tries, space.dim()};
}

Stage3Result stage3_alpha_prime(const Matrix& c_tilde, const Matrix& gamma, const WitnessedBasis& v) {
  Matrix alpha = c_tilde.inverse() * gamma;
  try {
    auto ell = v.express(alpha);
    return {std::move(alpha), std::move(ell)};
  } catch (const Error& e) {
    if (e.code() != Errc::NotInSpan) throw;
    throw Error(Errc::AlphaPrimeOutsideV, "alpha' = c~^-1 gamma is not in V");
  }
}

bool audit_alice_message(const AttackArtifacts& art, const OmegaElement& alice_msg, const EvalParams& params) {
  const OmegaElement start{art.c_tilde * art.alpha_prime, Permutation(params.n)};
  return e_multiply(start, art.a_tilde, params) == alice_msg;
}

Matrix beta_prime(const WitnessedBasis& v, std::span<const Elem> ell, const Permutation& h, const EvalParams& params,
                  unsigned threads) {
  if (ell.size() != v.dim()) throw Error(Errc::DimensionMismatch, "coefficient count does not match V");
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < ell.size(); ++i)
    if (ell[i] != 0) used.push_back(i);

  std::vector<Matrix> terms(used.size());
  const OmegaElement start{Matrix::identity(params.field, params.n), h};
  detail::parallel_for(used.size(), threads, [&](std::size_t k) {
    const auto& e = v[used[k]];
    if (!e.witness) throw Error(Errc::InvalidArgument, "basis element without witness");
    terms[k] = e_multiply(start, *e.witness, params).mat.scaled(ell[used[k]]);
  });
  Matrix beta(params.field, params.n);
  for (const auto& t : terms) beta += t;
  return beta;
}

OmegaElement recover_key(const InstancePublic& pub, const Transcript& transcript, const WitnessedBasis& v,
                         const AttackArtifacts& art, unsigned threads) {
  if (!transcript.bob_msg) throw Error(Errc::InvalidArgument, "transcript has no message from Bob");
  const OmegaElement& bob = *transcript.bob_msg;
  const Matrix beta = beta_prime(v, art.ell, bob.perm, pub.params, threads);
  const OmegaElement start{art.c_tilde * bob.mat * beta, bob.perm};
  return e_multiply(start, art.a_tilde, pub.params);
}

long peak_rss_kb() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream in(line.substr(6));
      long kb = 0;
      in >> kb;
      return kb;
    }
  }
  return 0;
}

AttackOutcome attack_run(const InstancePublic& pub, const Transcript& transcript, std::uint64_t seed,
                         const AttackConfig& config) {
  const auto t_start = Clock::now();
  std::mt19937_64 rng(seed);
  AttackStats stats;
  stats.n = pub.n();
  stats.field_order = pub.field()->order();
  std::optional<PureBasis> pure;

  auto budget = [&] {
    std::string s = "enlargements " + std::to_string(stats.enlargements_used) + "/" +
                    std::to_string(config.enlargements);
    if (pure)
      s += ", dim V " + std::to_string(pure->dim()) + ", candidates " + std::to_string(pure->stats().candidates) +
           ", skipped " + std::to_string(pure->stats().skipped);
    return s;
  };
  auto guarded = [&](const char* stage, auto&& fn) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(stage, e, budget());
    }
  };

  if (!transcript.bob_msg)
    throw StageError("input", Error(Errc::InvalidArgument, "transcript has no message from Bob"));

  auto t0 = Clock::now();
  guarded("precompute", [&] {
    pure.emplace(pub.field(), pub.n());
    extend_pure_basis(*pure, pub, rng, config, config.initial_candidates);
    return 0;
  });
  stats.seconds.precompute = seconds_since(t0);

  const std::vector<Matrix> kappas = guarded("precompute", [&] { return kappa_basis(pub); });
  stats.dim_c = kappas.size();

  t0 = Clock::now();
  const StabilizerChain chain =
      guarded("stage1", [&] { return build_generator_chain(pub, rng, config.shorten_rounds); });
  Stage1Result s1 = guarded("stage1", [&] { return stage1_express_g(pub, transcript.alice_msg, chain); });
  stats.seconds.stage1 = seconds_since(t0);
  stats.group_order = chain.order();
  stats.stage1_generator_letters = s1.label_word.size();
  stats.stage1_word_length = s1.a_tilde.length();

  std::optional<Stage2Result> s2;
  std::optional<Stage3Result> s3;
  for (std::size_t attempt = 0;; ++attempt) {
    const char* stage = "stage2";
    try {
      t0 = Clock::now();
      s2 = stage2_find_c(s1.gamma, kappas, pure->basis(), rng, config.max_tries);
      stats.seconds.stage2 += seconds_since(t0);
      stage = "stage3";
      t0 = Clock::now();
      s3 = stage3_alpha_prime(s2->c_tilde, s1.gamma, pure->basis());
      stats.seconds.stage3 += seconds_since(t0);
      break;
    } catch (const Error& e) {
      if (!retryable(e.code()) || attempt >= config.enlargements) throw StageError(stage, e, budget());
    }
    t0 = Clock::now();
    guarded("precompute", [&] {
      extend_pure_basis(*pure, pub, rng, config, 2 * config.initial_candidates);
      return 0;
    });
    stats.seconds.precompute += seconds_since(t0);
    ++stats.enlargements_used;
  }
  stats.dim_v = pure->dim();
  stats.pure = pure->stats();
  stats.stage2_tries = s2->tries;
  stats.stage2_solution_dim = s2->solution_dim;

  AttackArtifacts art{s1.a_tilde, s1.gamma, s2->c_tilde, s2->x, s3->alpha_prime, s3->ell};
  stats.eq1_audit = audit_alice_message(art, transcript.alice_msg, pub.params);
  if (!stats.eq1_audit)
    throw StageError("stage3", Error(Errc::AuditFailed, "c~ . (alpha', e) * psi(a~) differs from (p, g)"), budget());

  t0 = Clock::now();
  OmegaElement key =
      guarded("recover", [&] { return recover_key(pub, transcript, pure->basis(), art, config.threads); });
  stats.seconds.recover = seconds_since(t0);
  stats.seconds.total = seconds_since(t_start);
  stats.peak_rss_kb = peak_rss_kb();
  return {std::move(key), std::move(art), stats};
}

}  // namespace eraser
