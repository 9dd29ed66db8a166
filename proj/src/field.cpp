#include "eraser/field.hpp"

#include <array>
#include <bit>
#include <string>

#include "eraser/error.hpp"

namespace eraser {
namespace {

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_rem(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t x) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    out.push_back(p);
    while (x % p == 0) x /= p;
  }
  if (x > 1) out.push_back(x);
  return out;
}

}  // namespace

Elem poly_mulmod(Elem a, Elem b, unsigned degree, std::uint32_t modulus) {
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < degree; ++i)
    if ((b >> i) & 1u) acc ^= static_cast<std::uint64_t>(a) << i;
  return static_cast<Elem>(poly_rem(acc, modulus));
}

bool Field::is_irreducible(unsigned degree, std::uint32_t modulus) {
  if (poly_degree(modulus) != static_cast<int>(degree)) return false;
  // Any factorisation has a factor of degree <= degree/2.
  for (std::uint64_t d = 2; poly_degree(d) <= static_cast<int>(degree / 2); ++d)
    if (poly_rem(modulus, d) == 0) return false;
  return true;
}

std::uint32_t Field::default_modulus(unsigned degree) {
  static constexpr std::array<std::uint32_t, kMaxDegree + 1> table = {
      0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x83,   0x11B,
      0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1002B};
  if (degree == 0 || degree > kMaxDegree)
    throw Error(Errc::InvalidArgument, "field degree must be in 1.." + std::to_string(kMaxDegree));
  return table[degree];
}

Field::Field(unsigned degree, std::uint32_t modulus) : degree_(degree), modulus_(modulus) {
  if (degree == 0 || degree > kMaxDegree)
    throw Error(Errc::InvalidArgument, "field degree must be in 1.." + std::to_string(kMaxDegree));
  if (poly_degree(modulus) != static_cast<int>(degree))
    throw Error(Errc::InvalidArgument, "modulus degree does not match field degree");
  if (!is_irreducible(degree, modulus))
    throw Error(Errc::ReducibleModulus, "modulus " + std::to_string(modulus) + " is reducible");

  const std::uint32_t q1 = order() - 1;
  const auto factors = prime_factors(q1);
  auto slow_pow = [&](Elem a, std::uint32_t e) {
    Elem r = 1;
    for (; e != 0; e >>= 1, a = poly_mulmod(a, a, degree, modulus))
      if (e & 1u) r = poly_mulmod(r, a, degree, modulus);
    return r;
  };
  Elem gen = 0;
  for (Elem cand = (order() == 2 ? 1 : 2); cand < order(); ++cand) {
    bool primitive = true;
    for (auto p : factors)
      if (slow_pow(cand, q1 / p) == 1) primitive = false;
    if (primitive) {
      gen = cand;
      break;
    }
  }

  log_.assign(order(), 0);
  exp_.assign(2 * static_cast<std::size_t>(q1), 0);
  Elem x = 1;
  for (std::uint32_t k = 0; k < q1; ++k) {
    exp_[k] = x;
    exp_[k + q1] = x;
    log_[x] = k;
    x = poly_mulmod(x, gen, degree, modulus);
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(Errc::NonInvertibleFieldElement, "zero has no inverse");
  const std::uint32_t q1 = order() - 1;
  return exp_[(q1 - log_[a]) % q1];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t q1 = order() - 1;
  return exp_[static_cast<std::uint32_t>((log_[a] * (e % q1)) % q1)];
}

FieldPtr make_field(unsigned degree, std::uint32_t modulus) {
  if (modulus == 0) modulus = Field::default_modulus(degree);
  return std::make_shared<const Field>(degree, modulus);
}

}  // namespace eraser
