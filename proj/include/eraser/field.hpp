#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace eraser {

using Elem = std::uint32_t;

/// Binary extension field GF(2^m), 1 <= m <= 16.
///
/// Elements are polynomials over GF(2) packed into the low m bits of an
/// integer; addition is XOR. Multiplication goes through a single
/// log/antilog table pair built from a primitive element found at
/// construction time, so any irreducible modulus is accepted (it need not
/// be primitive).
class Field {
 public:
  static constexpr unsigned kMaxDegree = 16;

  /// Throws Errc::InvalidArgument for an out-of-range degree or a modulus
  /// of the wrong degree, Errc::ReducibleModulus if the modulus factors.
  Field(unsigned degree, std::uint32_t modulus);

  /// A fixed low-weight irreducible modulus for each supported degree.
  /// Degree 8 gives x^8+x^4+x^3+x+1.
  static std::uint32_t default_modulus(unsigned degree);

  static bool is_irreducible(unsigned degree, std::uint32_t modulus);

  unsigned degree() const { return degree_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return std::uint32_t{1} << degree_; }
  bool contains(Elem a) const { return a < order(); }

  static Elem add(Elem a, Elem b) { return a ^ b; }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// Throws Errc::NonInvertibleFieldElement on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  // Log-domain access for inner loops. log_of(0) is undefined.
  std::uint32_t log_of(Elem a) const { return log_[a]; }
  Elem exp_of(std::uint32_t k) const { return exp_[k]; }
  Elem generator() const { return exp_[1]; }

  bool operator==(const Field& other) const {
    return degree_ == other.degree_ && modulus_ == other.modulus_;
  }

 private:
  unsigned degree_;
  std::uint32_t modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // length 2*(order-1) so exp_[log a + log b] needs no reduction
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(unsigned degree, std::uint32_t modulus = 0);

/// Carry-less product reduced modulo `modulus`. Used to build the tables.
Elem poly_mulmod(Elem a, Elem b, unsigned degree, std::uint32_t modulus);

}  // namespace eraser
