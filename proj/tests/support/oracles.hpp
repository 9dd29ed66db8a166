#pragma once

// Slow, independent reference implementations used only by tests. None of
// them calls into the library's field tables, elimination or chain code.

#include <cstdint>
#include <random>
#include <vector>

#include "eraser/field.hpp"
#include "eraser/matrix.hpp"
#include "eraser/perm.hpp"

namespace oracle {

using eraser::Elem;

/// GF(2^m) by schoolbook carry-less multiplication and bitwise reduction.
struct Gf {
  unsigned m;
  std::uint32_t modulus;

  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^(2^m - 2); requires a != 0.
  Elem inv(Elem a) const;
};

/// Irreducibility by trying every polynomial of degree 1..m/2 as a divisor.
bool irreducible(unsigned m, std::uint32_t modulus);

using Mat = std::vector<std::vector<Elem>>;

Mat from(const eraser::Matrix& m);
Mat matmul(const Gf& f, const Mat& a, const Mat& b);
/// Laplace expansion along the first row; n <= 6.
Elem det_cofactor(const Gf& f, const Mat& a);
/// Rank of a list of vectors by plain Gaussian elimination.
std::size_t rank(const Gf& f, std::vector<std::vector<Elem>> rows);
std::vector<Elem> vec(const Mat& a);

/// Dimension of the algebra generated by `gens` and I: span all products
/// until no new independent matrix appears.
std::size_t closure_dim(const Gf& f, const std::vector<Mat>& gens);

/// Degree of the minimal polynomial: powers I, k, k^2, ... until dependent.
std::size_t min_poly_degree(const Gf& f, const Mat& k);

/// Every element of the group generated by `gens`, by breadth-first closure.
std::vector<std::vector<std::uint16_t>> enumerate_group(const std::vector<eraser::Permutation>& gens);

/// (a * b)(i) = b(a(i)) on image vectors.
std::vector<std::uint16_t> compose(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b);

eraser::Matrix random_matrix(const eraser::FieldPtr& f, std::size_t n, std::mt19937_64& rng);
eraser::Matrix random_invertible(const eraser::FieldPtr& f, std::size_t n, std::mt19937_64& rng);
eraser::Permutation random_perm(std::size_t n, std::mt19937_64& rng);

}  // namespace oracle
