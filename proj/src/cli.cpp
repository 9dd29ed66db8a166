#include "eraser/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eraser/attack.hpp"
#include "eraser/error.hpp"
#include "eraser/io.hpp"
#include "eraser/protocol.hpp"

namespace eraser::cli {
namespace {

namespace fs = std::filesystem;
using io::Json;
using io::Kind;

// Raised for bad input files and flag combinations; maps to kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ERASER_SEED")) {
    try {
      std::size_t pos = 0;
      const std::uint64_t v = std::stoull(env, &pos, 0);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("ERASER_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());
}

Json load(const fs::path& path, Kind kind) {
  try {
    return io::open_envelope(io::read_file(path), kind);
  } catch (const Error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

template <class F>
auto parse(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

// Each consumer gets its own stream so adding draws in one place does not
// shift the others.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

enum Purpose : std::uint64_t { kGen = 1, kProtocol = 2, kAttack = 3, kBench = 4 };

struct GenFlags {
  std::size_t n = 16;
  unsigned field_bits = 8;
  std::uint32_t modulus = 0;
  std::size_t gens = 8;
  std::size_t word_len = 650;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

struct ProtocolFlags {
  std::string pub_file, priv_file;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool alice_only = false;
};

struct AttackFlags {
  std::string pub_file, transcript_file;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  AttackConfig config;
};

struct VerifyFlags {
  std::string a, b;
};

struct BenchFlags {
  std::size_t n = 8;
  unsigned field_bits = 5;
  std::size_t gens = 8;
  std::size_t word_len = 100;
  std::size_t instances = 5;
  std::size_t letters = 1'000'000;
  std::size_t throughput_n = 16;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out_file;
};

TtpOptions ttp_options(const GenFlags& f) {
  TtpOptions o;
  o.n = f.n;
  o.field_bits = f.field_bits;
  o.modulus = f.modulus;
  o.gen_count = f.gens;
  o.word_len = f.word_len;
  return o;
}

int cmd_gen(const GenFlags& f, std::ostream& out) {
  auto rng = stream(resolve_seed(f.seed), kGen);
  TtpResult ttp;
  try {
    ttp = ttp_generate(ttp_options(f), rng);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const fs::path dir(f.out_dir);
  ensure_dir(dir);
  io::write_file(dir / "instance_public.json", io::envelope(Kind::InstancePublic, io::public_payload(ttp.pub)));
  io::write_file(dir / "instance_private.json", io::envelope(Kind::InstancePrivate, io::private_payload(ttp)));
  out << "wrote " << (dir / "instance_public.json").string() << " and " << (dir / "instance_private.json").string()
      << "\n";
  return kOk;
}

int cmd_protocol(const ProtocolFlags& f, std::ostream& out, std::ostream& err) {
  const InstancePublic pub = parse(f.pub_file, [&] {
    return io::public_from_payload(load(f.pub_file, Kind::InstancePublic));
  });
  auto rng = stream(resolve_seed(f.seed), kProtocol);
  const fs::path dir(f.out_dir);

  if (f.alice_only) {
    const RoundResult alice = alice_round(pub, rng);
    ensure_dir(dir);
    io::write_file(dir / "transcript.json",
                   io::envelope(Kind::Transcript, io::transcript_payload({alice.msg, std::nullopt}, *pub.field())));
    out << "wrote Alice's half of the transcript\n";
    return kOk;
  }

  if (f.priv_file.empty()) throw UsageError("--private is required unless --alice-only is given");
  const io::PrivateFile priv = parse(f.priv_file, [&] {
    return io::private_from_payload(load(f.priv_file, Kind::InstancePrivate));
  });

  const RoundResult alice = alice_round(pub, rng);
  const RoundResult bob = bob_round(pub, priv.priv, rng);
  const SharedKey ka = derive_key_alice(alice.secret, bob.msg, pub);
  const SharedKey kb = derive_key_bob(bob.secret, alice.msg, pub);

  ensure_dir(dir);
  io::write_file(dir / "transcript.json",
                 io::envelope(Kind::Transcript, io::transcript_payload({alice.msg, bob.msg}, *pub.field())));
  io::write_file(dir / "key_alice.json", io::envelope(Kind::Key, io::key_payload(ka.key, *pub.field())));
  io::write_file(dir / "key_bob.json", io::envelope(Kind::Key, io::key_payload(kb.key, *pub.field())));
  if (!(ka == kb)) {
    err << "error: Alice's and Bob's keys differ\n";
    return kMismatch;
  }
  out << "keys agree\n";
  return kOk;
}

void refuse_private(const fs::path& path) {
  Json doc;
  try {
    doc = io::read_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  Kind k{};
  try {
    k = io::envelope_kind(doc);
  } catch (const Error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  if (k == Kind::InstancePrivate)
    throw UsageError(path.string() + " is private instance material; the attack only reads public files");
}

int cmd_attack(const AttackFlags& f, std::ostream& out, std::ostream& err) {
  refuse_private(f.pub_file);
  refuse_private(f.transcript_file);
  const InstancePublic pub = parse(f.pub_file, [&] {
    return io::public_from_payload(load(f.pub_file, Kind::InstancePublic));
  });
  FieldPtr tfield;
  const Transcript transcript = parse(f.transcript_file, [&] {
    return io::transcript_from_payload(load(f.transcript_file, Kind::Transcript), &tfield);
  });
  if (!(*tfield == *pub.field())) throw UsageError("transcript and instance use different fields");
  if (transcript.alice_msg.mat.n() != pub.n()) throw UsageError("transcript and instance differ in n");

  const std::uint64_t seed = stream(resolve_seed(f.seed), kAttack)();
  AttackOutcome result;
  try {
    result = attack_run(pub, transcript, seed, f.config);
  } catch (const StageError& e) {
    err << "attack failed in " << e.what() << "\n";
    return kAttackFailed;
  }
  const fs::path dir(f.out_dir);
  ensure_dir(dir);
  io::write_file(dir / "key_recovered.json", io::envelope(Kind::Key, io::key_payload(result.key, *pub.field())));
  io::write_file(dir / "stats.json", io::envelope(Kind::Stats, io::stats_payload(result.stats)));
  const auto& s = result.stats;
  out << "recovered key: dim V " << s.dim_v << ", Stage 1 word " << s.stage1_word_length << " letters, "
      << s.seconds.total << " s\n";
  return kOk;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  const auto a = parse(f.a, [&] { return io::key_from_payload(load(f.a, Kind::Key)); });
  const auto b = parse(f.b, [&] { return io::key_from_payload(load(f.b, Kind::Key)); });
  const bool same = *a.field == *b.field && a.key == b.key;
  out << (same ? "keys identical\n" : "keys differ\n");
  return same ? kOk : kMismatch;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  using Clock = std::chrono::steady_clock;
  const std::uint64_t seed = resolve_seed(f.seed);
  Json runs = Json::array();
  std::size_t successes = 0;
  for (std::size_t i = 0; i < f.instances; ++i) {
    GenFlags g;
    g.n = f.n;
    g.field_bits = f.field_bits;
    g.gens = f.gens;
    g.word_len = f.word_len;
    auto gen_rng = stream(seed + i, kGen);
    auto proto_rng = stream(seed + i, kProtocol);
    const TtpResult ttp = ttp_generate(ttp_options(g), gen_rng);
    const RoundResult alice = alice_round(ttp.pub, proto_rng);
    const RoundResult bob = bob_round(ttp.pub, ttp.priv, proto_rng);
    const SharedKey key = derive_key_alice(alice.secret, bob.msg, ttp.pub);

    AttackConfig config;
    config.threads = f.threads;
    Json run{{"seed", seed + i}};
    const auto t0 = Clock::now();
    try {
      const AttackOutcome r = attack_run(ttp.pub, {alice.msg, bob.msg}, stream(seed + i, kAttack)(), config);
      const bool ok = r.key == key.key;
      successes += ok;
      run["recovered"] = ok;
      run["stats"] = io::stats_payload(r.stats);
    } catch (const StageError& e) {
      run["recovered"] = false;
      run["failure"] = e.what();
    }
    run["wall_s"] = std::chrono::duration<double>(Clock::now() - t0).count();
    err << "instance " << i << ": " << (run["recovered"].get<bool>() ? "recovered" : "failed") << " in "
        << run["wall_s"].get<double>() << " s\n";
    runs.push_back(std::move(run));
  }

  // E-multiplication throughput on one long random word.
  auto rng = stream(seed, kBench);
  const FieldPtr field = make_field(8);
  std::uniform_int_distribution<Elem> pick(2, field->order() - 1);
  std::vector<Elem> tau(f.throughput_n);
  for (auto& t : tau) t = pick(rng);
  const EvalParams params = EvalParams::make(field, tau);
  const BraidWord w = random_word(rng, f.letters, 1, static_cast<int>(f.throughput_n) - 1);
  const auto t0 = Clock::now();
  const OmegaElement r = word_eval_pair(w, params);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const double rate = secs > 0 ? static_cast<double>(f.letters) / secs : 0.0;

  Json report{{"n", f.n},
              {"field_bits", f.field_bits},
              {"word_len", f.word_len},
              {"instances", f.instances},
              {"recovered", successes},
              {"runs", std::move(runs)},
              {"throughput",
               {{"n", f.throughput_n}, {"letters", f.letters}, {"seconds", secs}, {"letters_per_s", rate},
                {"checksum", r.mat(0, 0)}}}};
  if (!f.out_file.empty()) io::write_file(f.out_file, report);
  out << report.dump(2) << "\n";
  return successes == f.instances ? kOk : kAttackFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colored Burau key agreement: instance generation, protocol runs and key recovery", "eraser"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "generate an instance (public and private files)");
  g->add_option("--n", gen.n, "number of strands")->check(CLI::Range(4, 256));
  g->add_option("--field-bits", gen.field_bits, "field GF(2^m) degree m")->check(CLI::Range(2, 16));
  g->add_option("--modulus", gen.modulus, "irreducible modulus as an integer (0: default)");
  g->add_option("--gens", gen.gens, "generators per subgroup");
  g->add_option("--word-len", gen.word_len, "length of each generator word");
  g->add_option("--seed", gen.seed, "RNG seed (default: ERASER_SEED or 0)");
  g->add_option("--out-dir", gen.out_dir, "output directory");

  ProtocolFlags proto;
  auto* p = app.add_subcommand("protocol", "run one key exchange");
  p->add_option("--public", proto.pub_file, "instance_public.json")->required();
  p->add_option("--private", proto.priv_file, "instance_private.json");
  p->add_option("--seed", proto.seed, "RNG seed (default: ERASER_SEED or 0)");
  p->add_option("--out-dir", proto.out_dir, "output directory");
  p->add_flag("--alice-only", proto.alice_only, "write only Alice's message");

  AttackFlags atk;
  auto* a = app.add_subcommand("attack", "recover the shared key from public data");
  a->add_option("--public", atk.pub_file, "instance_public.json")->required();
  a->add_option("--transcript", atk.transcript_file, "transcript.json")->required();
  a->add_option("--seed", atk.seed, "RNG seed (default: ERASER_SEED or 0)");
  a->add_option("--threads", atk.config.threads, "worker threads")->check(CLI::Range(1, 1024));
  a->add_option("--out-dir", atk.out_dir, "output directory");
  a->add_option("--stall", atk.config.stall, "stop pure-element search after this many useless candidates");
  a->add_option("--candidates", atk.config.initial_candidates, "initial pure-element candidate budget");
  a->add_option("--enlargements", atk.config.enlargements, "retries with a larger pure-element budget");
  a->add_option("--shorten-rounds", atk.config.shorten_rounds, "word-shortening rounds on the Stage 1 chain");

  VerifyFlags ver;
  auto* v = app.add_subcommand("verify", "compare two key files");
  v->add_option("key_a", ver.a, "first key file")->required();
  v->add_option("key_b", ver.b, "second key file")->required();

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "end-to-end attack sweep and E-multiplication throughput");
  b->add_option("--n", bench.n, "number of strands")->check(CLI::Range(4, 256));
  b->add_option("--field-bits", bench.field_bits, "field degree")->check(CLI::Range(2, 16));
  b->add_option("--gens", bench.gens, "generators per subgroup");
  b->add_option("--word-len", bench.word_len, "generator word length");
  b->add_option("--instances", bench.instances, "number of instances");
  b->add_option("--letters", bench.letters, "letters in the throughput word");
  b->add_option("--throughput-n", bench.throughput_n, "strands for the throughput word")->check(CLI::Range(2, 256));
  b->add_option("--seed", bench.seed, "RNG seed (default: ERASER_SEED or 0)");
  b->add_option("--threads", bench.threads, "attack worker threads")->check(CLI::Range(1, 1024));
  b->add_option("--out", bench.out_file, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (p->parsed()) return cmd_protocol(proto, out, err);
    if (a->parsed()) return cmd_attack(atk, out, err);
    if (v->parsed()) return cmd_verify(ver, out);
    if (b->parsed()) return cmd_bench(bench, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace eraser::cli
