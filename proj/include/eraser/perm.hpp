#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace eraser {

/// Permutation of {0..n-1}. Serialized 1-based.
///
/// Products compose left to right: (a * b)(i) = b(a(i)), i.e. the left
/// factor is applied first. The semidirect product, the braid permutation
/// map and the stabilizer chain all use this one convention.
class Permutation {
 public:
  explicit Permutation(std::size_t n = 0);

  /// Throws Errc::InvalidArgument unless `images` is a bijection of {0..n-1}.
  static Permutation from_images(std::vector<std::uint16_t> images);
  static Permutation from_one_based(const std::vector<int>& images);
  /// Swaps points i and j (0-based).
  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);
  /// Maps points[0] -> points[1] -> ... -> points[0].
  static Permutation cycle(std::size_t n, std::initializer_list<std::size_t> points);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint16_t>& images() const { return images_; }
  std::vector<int> one_based() const;

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  /// Least r >= 1 with g^r = e (lcm of cycle lengths).
  std::uint64_t order() const;
  Permutation pow(std::int64_t e) const;

  bool operator==(const Permutation& rhs) const = default;
  auto operator<=>(const Permutation& rhs) const = default;

 private:
  std::vector<std::uint16_t> images_;
};

/// Left-first composition; same as a * b.
Permutation compose(const Permutation& a, const Permutation& b);

}  // namespace eraser
