#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "eraser/braid.hpp"
#include "eraser/field.hpp"
#include "eraser/matrix.hpp"

namespace eraser {

/// Incremental reduced row echelon form over F^N that remembers, for every
/// echelon row, its coordinates in terms of the vectors inserted so far.
class Echelon {
 public:
  Echelon(FieldPtr field, std::size_t width);

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds v if it is independent of the current span; returns whether it was.
  bool insert(std::span<const Elem> v);
  /// v minus its projection onto the span along the pivot columns; zero iff v is in the span.
  std::vector<Elem> residual(std::span<const Elem> v) const;
  /// Coefficients over the inserted vectors (insertion order), or nullopt.
  std::optional<std::vector<Elem>> coordinates(std::span<const Elem> v) const;

 private:
  // Reduces v in place; returns the per-row multipliers used.
  std::vector<Elem> reduce(std::vector<Elem>& v) const;

  FieldPtr field_;
  std::size_t width_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<Elem>> combos_;  // rows_[k] = sum_j combos_[k][j] * inserted_j
};

struct SpanResult {
  std::vector<Matrix> basis;  // first-seen order
  std::vector<std::size_t> indices;
  std::size_t dim = 0;
};

/// Maximal linearly independent sublist of `mats`, vectorised row-major.
SpanResult span_basis(const std::vector<Matrix>& mats);

/// Linearly independent matrices, each optionally carrying a braid word
/// whose evaluation is that matrix.
class WitnessedBasis {
 public:
  struct Element {
    Matrix mat;
    std::optional<BraidWord> witness;
  };

  WitnessedBasis(FieldPtr field, std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return elements_.size(); }
  const FieldPtr& field() const { return field_; }
  const std::vector<Element>& elements() const { return elements_; }
  const Element& operator[](std::size_t i) const { return elements_[i]; }

  /// Appends when independent; returns whether the basis grew.
  bool add(const Matrix& m, std::optional<BraidWord> witness = std::nullopt);
  bool contains(const Matrix& m) const;
  /// Coefficients l with sum l_i * element_i = m. Throws Errc::NotInSpan.
  std::vector<Elem> express(const Matrix& m) const;
  Matrix combine(std::span<const Elem> coeffs) const;
  /// Component of m outside the span, as a length-n^2 vector.
  std::vector<Elem> residual(const Matrix& m) const;

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<Element> elements_;
  Echelon echelon_;
};

/// Incrementally maintained F-algebra generated by a growing set of
/// matrices. The identity is always the first basis element (with the empty
/// witness when witnesses are tracked). Every new basis element is
/// multiplied by every generator on both sides until the span stops
/// growing; the product's witness is the concatenation of the factors'.
class AlgebraClosure {
 public:
  AlgebraClosure(FieldPtr field, std::size_t n, bool witnessed);

  /// Returns the growth in dimension caused by the new generator.
  std::size_t add_generator(const Matrix& m, std::optional<BraidWord> witness = std::nullopt);

  const WitnessedBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }
  std::size_t generator_count() const { return gens_.size(); }

 private:
  void try_add(const Matrix& m, const std::optional<BraidWord>& a, const std::optional<BraidWord>& b,
               std::vector<std::size_t>& work);

  bool witnessed_;
  std::vector<WitnessedBasis::Element> gens_;
  WitnessedBasis basis_;
};

using GeneratorList = std::vector<std::pair<Matrix, std::optional<BraidWord>>>;

/// Basis of the algebra generated by `gens` (plus the identity).
WitnessedBasis algebra_closure(FieldPtr field, std::size_t n, const GeneratorList& gens);

/// Matrices of algebra_closure without witnesses.
std::vector<Matrix> algebra_basis(const std::vector<Matrix>& gens);

/// Affine parametrisation particular + span(homogeneous) of coefficient vectors.
struct SolutionSpace {
  std::vector<Elem> particular;
  std::vector<std::vector<Elem>> homogeneous;

  std::size_t dim() const { return homogeneous.size(); }
  /// particular + sum t_i homogeneous_i.
  std::vector<Elem> point(const Field& field, std::span<const Elem> t) const;
};

/// sum x_i m_i.
Matrix linear_combination(const std::vector<Matrix>& mats, std::span<const Elem> x);

/// All x with gamma_inv * (sum x_i kappa_i) in span(V). The constraints are
/// homogeneous, so the particular solution is zero. Throws Errc::NoSolution
/// when only x = 0 qualifies.
SolutionSpace solve_membership(const Matrix& gamma_inv, const std::vector<Matrix>& kappas, const WitnessedBasis& v);

struct InvertibleSample {
  Matrix c;
  std::vector<Elem> x;
  std::size_t tries = 0;
};

/// Draws uniform points of `space` until sum x_i kappa_i is invertible.
/// Throws Errc::InvertibleSampleFailed after max_tries draws.
InvertibleSample sample_invertible(const SolutionSpace& space, const std::vector<Matrix>& kappas,
                                   std::mt19937_64& rng, std::size_t max_tries = 64);

}  // namespace eraser
