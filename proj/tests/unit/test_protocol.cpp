#include <doctest.h>

#include <random>

#include "eraser/error.hpp"
#include "eraser/linalg.hpp"
#include "eraser/protocol.hpp"
#include "oracles.hpp"

using namespace eraser;

namespace {

TtpOptions desk() {
  TtpOptions o;
  o.n = 8;
  o.field_bits = 5;
  o.word_len = 100;
  return o;
}

OmegaElement random_omega(const EvalParams& p, std::mt19937_64& rng) {
  return {oracle::random_invertible(p.field, p.n, rng), oracle::random_perm(p.n, rng)};
}

}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("option validation") {
    std::mt19937_64 rng(1);
    auto o = desk();
    o.n = 3;
    CHECK_THROWS_AS(ttp_generate(o, rng), Error);
    o = desk();
    o.gen_count = 1;
    CHECK_THROWS_AS(ttp_generate(o, rng), Error);
    o = desk();
    o.word_len = 0;
    CHECK_THROWS_AS(ttp_generate(o, rng), Error);
    o = desk();
    o.field_bits = 1;
    CHECK_THROWS_AS(ttp_generate(o, rng), Error);
    o = desk();
    o.modulus = 0x21;  // x^5 + 1 is reducible
    CHECK_THROWS_AS(ttp_generate(o, rng), Error);
  }

  TEST_CASE("generated instance shape") {
    std::mt19937_64 rng(2);
    for (const auto& o : {desk(), TtpOptions{}}) {
      const auto t = ttp_generate(o, rng);
      CHECK(t.pub.n() == o.n);
      CHECK(t.pub.field()->order() == (1u << o.field_bits));
      CHECK(t.pub.a_gens.size() == o.gen_count);
      CHECK(t.priv.b_gens.size() == o.gen_count);
      for (auto tau : t.pub.params.tau) {
        CHECK(tau != 0);
        CHECK(tau != 1);
      }
      const int half = static_cast<int>(o.n) / 2;
      const auto zl = t.debug.conjugator.length();
      CHECK(zl == o.word_len / 4);
      for (std::size_t k = 0; k < o.gen_count; ++k) {
        const auto& a = t.pub.a_gens[k];
        CHECK(a.length() == o.word_len);  // no cancellation at the junctions
        CHECK(word_free_reduce(a).length() == a.length());
        for (auto l : t.debug.a_cores[k].flatten()) CHECK(std::abs(l) <= half - 1);
        for (auto l : t.debug.b_cores[k].flatten()) CHECK(std::abs(l) >= half + 1);
        const BraidWord parts[] = {t.debug.conjugator, t.debug.a_cores[k], t.debug.conjugator.inverse()};
        CHECK(BraidWord::concat(parts) == a);
      }
      CHECK(t.pub.c_gens.size() == 1);
      CHECK(t.pub.c_gens[0].invertible());
      const oracle::Gf g{t.pub.field()->degree(), t.pub.field()->modulus()};
      CHECK(oracle::min_poly_degree(g, oracle::from(t.pub.c_gens[0])) >= 3);
      CHECK(t.priv.d_gens == t.pub.c_gens);
    }
  }

  TEST_CASE("seeded generation is deterministic") {
    std::mt19937_64 r1(5), r2(5);
    const auto a = ttp_generate(desk(), r1);
    const auto b = ttp_generate(desk(), r2);
    CHECK(a.pub.a_gens == b.pub.a_gens);
    CHECK(a.pub.c_gens == b.pub.c_gens);
    CHECK(a.pub.params.tau == b.pub.params.tau);
  }

  TEST_CASE("A and B generators *-commute") {
    std::mt19937_64 rng(3);
    const auto t = ttp_generate(desk(), rng);
    for (int k = 0; k < 50; ++k) {
      const auto om = random_omega(t.pub.params, rng);
      const auto& u = t.pub.a_gens[rng() % t.pub.a_gens.size()];
      const auto& v = t.priv.b_gens[rng() % t.priv.b_gens.size()];
      const auto& p = t.pub.params;
      REQUIRE(e_multiply(e_multiply(om, u, p), v, p) == e_multiply(e_multiply(om, v, p), u, p));
    }
  }

  TEST_CASE("C and D commute elementwise") {
    std::mt19937_64 rng(4);
    for (auto choice : {DChoice::SameAsC, DChoice::PolynomialInC}) {
      auto o = desk();
      o.d_choice = choice;
      const auto t = ttp_generate(o, rng);
      const auto cb = algebra_basis(t.pub.c_gens);
      const auto db = algebra_basis(t.priv.d_gens);
      for (int k = 0; k < 50; ++k) {
        const auto c = random_unit(cb, rng);
        const auto d = random_unit(db, rng);
        REQUIRE(c * d == d * c);
      }
    }
  }

  TEST_CASE("messages") {
    std::mt19937_64 rng(6);
    const auto t = ttp_generate(desk(), rng);
    for (int k = 0; k < 100; ++k) {
      const auto a = alice_round(t.pub, rng);
      REQUIRE(a.msg.mat == a.secret.unit * word_eval_pair(a.secret.word, t.pub.params).mat);
      REQUIRE(a.msg.perm == word_perm(a.secret.word, t.pub.n()));
      REQUIRE(a.msg.mat.invertible());
      const auto b = bob_round(t.pub, t.priv, rng);
      REQUIRE(b.msg.mat == b.secret.unit * word_eval_pair(b.secret.word, t.pub.params).mat);
      REQUIRE(b.msg.mat.invertible());
    }
  }

  TEST_CASE("key derivation with trivial secrets") {
    std::mt19937_64 rng(7);
    const auto t = ttp_generate(desk(), rng);
    const PartySecret trivial{Matrix::identity(t.pub.field(), t.pub.n()), BraidWord{}};
    const auto b = bob_round(t.pub, t.priv, rng);
    CHECK(derive_key_alice(trivial, b.msg, t.pub).key == b.msg);
    // c = I with an empty word gives the message (I, e).
    CHECK(left_act(trivial.unit, word_eval_pair(trivial.word, t.pub.params)) == OmegaElement::one(t.pub.params));
  }

  TEST_CASE("both parties derive the same key") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 20; ++k) {
      auto o = desk();
      if (k % 2) o.d_choice = DChoice::PolynomialInC;
      const auto t = ttp_generate(o, rng);
      const auto a = alice_round(t.pub, rng);
      const auto b = bob_round(t.pub, t.priv, rng);
      REQUIRE(derive_key_alice(a.secret, b.msg, t.pub) == derive_key_bob(b.secret, a.msg, t.pub));
    }
  }

  TEST_CASE("random_unit needs a basis") {
    std::mt19937_64 rng(9);
    CHECK_THROWS_AS(random_unit({}, rng), Error);
  }
}
