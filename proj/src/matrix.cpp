#include "eraser/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "eraser/error.hpp"

namespace eraser {
namespace {

// Row-reduces `work` in place (optionally mirroring operations on `aug`).
// Returns the rank; `det` receives the determinant when the input is square.
std::size_t eliminate(const Field& f, std::size_t n, std::vector<Elem>& work, std::vector<Elem>* aug,
                      Elem* det) {
  std::size_t rank = 0;
  Elem d = 1;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && work[pivot * n + col] == 0) ++pivot;
    if (pivot == n) {
      d = 0;
      continue;
    }
    if (pivot != rank) {
      std::swap_ranges(work.begin() + pivot * n, work.begin() + pivot * n + n, work.begin() + rank * n);
      if (aug) std::swap_ranges(aug->begin() + pivot * n, aug->begin() + pivot * n + n, aug->begin() + rank * n);
      // Row swaps negate the determinant, a no-op in characteristic 2.
    }
    const Elem p = work[rank * n + col];
    d = f.mul(d, p);
    const Elem pinv = f.inv(p);
    for (std::size_t c = 0; c < n; ++c) {
      work[rank * n + c] = f.mul(work[rank * n + c], pinv);
      if (aug) (*aug)[rank * n + c] = f.mul((*aug)[rank * n + c], pinv);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank) continue;
      const Elem factor = work[r * n + col];
      if (factor == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        work[r * n + c] ^= f.mul(factor, work[rank * n + c]);
        if (aug) (*aug)[r * n + c] ^= f.mul(factor, (*aug)[rank * n + c]);
      }
    }
    ++rank;
  }
  if (det) *det = rank == n ? d : 0;
  return rank;
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n), entries_(n * n, 0) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_entries(FieldPtr field, std::size_t n, std::vector<Elem> entries) {
  if (entries.size() != n * n)
    throw Error(Errc::DimensionMismatch,
                "expected " + std::to_string(n * n) + " entries, got " + std::to_string(entries.size()));
  for (Elem e : entries)
    if (!field->contains(e)) throw Error(Errc::InvalidArgument, "entry " + std::to_string(e) + " outside field");
  Matrix m;
  m.field_ = std::move(field);
  m.n_ = n;
  m.entries_ = std::move(entries);
  return m;
}

void Matrix::require_compatible(const Matrix& rhs) const {
  if (n_ != rhs.n_) throw Error(Errc::DimensionMismatch, "matrix sizes differ");
  if (!(*field_ == *rhs.field_)) throw Error(Errc::DimensionMismatch, "matrices over different fields");
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_compatible(rhs);
  const Field& f = *field_;
  Matrix out(field_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Elem* orow = &out.entries_[i * n_];
    for (std::size_t k = 0; k < n_; ++k) {
      const Elem a = entries_[i * n_ + k];
      if (a == 0) continue;
      const std::uint32_t la = f.log_of(a);
      const Elem* brow = &rhs.entries_[k * n_];
      for (std::size_t j = 0; j < n_; ++j)
        if (brow[j] != 0) orow[j] ^= f.exp_of(la + f.log_of(brow[j]));
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  out += rhs;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_compatible(rhs);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] ^= rhs.entries_[i];
  return *this;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e = field_->mul(e, s);
  return out;
}

std::optional<Matrix> Matrix::try_inverse() const {
  std::vector<Elem> work = entries_;
  Matrix inv = identity(field_, n_);
  if (eliminate(*field_, n_, work, &inv.entries_, nullptr) != n_) return std::nullopt;
  return inv;
}

Matrix Matrix::inverse() const {
  auto inv = try_inverse();
  if (!inv) throw Error(Errc::SingularMatrix, "matrix of size " + std::to_string(n_) + " is singular");
  return *std::move(inv);
}

std::size_t Matrix::rank() const {
  std::vector<Elem> work = entries_;
  return eliminate(*field_, n_, work, nullptr, nullptr);
}

Elem Matrix::determinant() const {
  std::vector<Elem> work = entries_;
  Elem det = 0;
  eliminate(*field_, n_, work, nullptr, &det);
  return det;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Elem e) { return e == 0; });
}

bool Matrix::operator==(const Matrix& rhs) const {
  if (n_ != rhs.n_ || entries_ != rhs.entries_) return false;
  if (!field_ || !rhs.field_) return field_ == rhs.field_;
  return *field_ == *rhs.field_;
}

}  // namespace eraser
