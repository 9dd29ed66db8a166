#include "eraser/linalg.hpp"

#include <string>

#include "eraser/error.hpp"

namespace eraser {

Echelon::Echelon(FieldPtr field, std::size_t width) : field_(std::move(field)), width_(width) {}

std::vector<Elem> Echelon::reduce(std::vector<Elem>& v) const {
  const Field& f = *field_;
  std::vector<Elem> mult(rows_.size(), 0);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Elem factor = v[pivots_[k]];
    if (factor == 0) continue;
    mult[k] = factor;
    const auto& row = rows_[k];
    for (std::size_t c = 0; c < width_; ++c)
      if (row[c] != 0) v[c] ^= f.mul(factor, row[c]);
  }
  return mult;
}

bool Echelon::insert(std::span<const Elem> v) {
  if (v.size() != width_) throw Error(Errc::DimensionMismatch, "vector width mismatch");
  const Field& f = *field_;
  std::vector<Elem> w(v.begin(), v.end());
  const auto mult = reduce(w);
  std::size_t pivot = 0;
  while (pivot < width_ && w[pivot] == 0) ++pivot;
  if (pivot == width_) return false;

  // w = v + sum_k mult_k row_k, as a combination of inserted vectors.
  const std::size_t r = rows_.size();
  std::vector<Elem> combo(r + 1, 0);
  combo[r] = 1;
  for (std::size_t k = 0; k < r; ++k) {
    if (mult[k] == 0) continue;
    for (std::size_t j = 0; j < combos_[k].size(); ++j) combo[j] ^= f.mul(mult[k], combos_[k][j]);
  }
  const Elem inv = f.inv(w[pivot]);
  for (auto& e : w) e = f.mul(e, inv);
  for (auto& e : combo) e = f.mul(e, inv);

  for (std::size_t k = 0; k < r; ++k) {
    const Elem factor = rows_[k][pivot];
    if (factor == 0) continue;
    for (std::size_t c = 0; c < width_; ++c) rows_[k][c] ^= f.mul(factor, w[c]);
    combos_[k].resize(r + 1, 0);
    for (std::size_t j = 0; j <= r; ++j) combos_[k][j] ^= f.mul(factor, combo[j]);
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(pivot);
  combos_.push_back(std::move(combo));
  return true;
}

std::vector<Elem> Echelon::residual(std::span<const Elem> v) const {
  if (v.size() != width_) throw Error(Errc::DimensionMismatch, "vector width mismatch");
  std::vector<Elem> w(v.begin(), v.end());
  reduce(w);
  return w;
}

std::optional<std::vector<Elem>> Echelon::coordinates(std::span<const Elem> v) const {
  if (v.size() != width_) throw Error(Errc::DimensionMismatch, "vector width mismatch");
  const Field& f = *field_;
  std::vector<Elem> w(v.begin(), v.end());
  const auto mult = reduce(w);
  for (Elem e : w)
    if (e != 0) return std::nullopt;
  std::vector<Elem> coords(rows_.size(), 0);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (mult[k] == 0) continue;
    for (std::size_t j = 0; j < combos_[k].size(); ++j) coords[j] ^= f.mul(mult[k], combos_[k][j]);
  }
  return coords;
}

SpanResult span_basis(const std::vector<Matrix>& mats) {
  SpanResult out;
  if (mats.empty()) return out;
  const std::size_t n = mats.front().n();
  Echelon ech(mats.front().field_ptr(), n * n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].n() != n) throw Error(Errc::DimensionMismatch, "matrices of different sizes");
    if (ech.insert(mats[i].entries())) {
      out.basis.push_back(mats[i]);
      out.indices.push_back(i);
    }
  }
  out.dim = out.basis.size();
  return out;
}

WitnessedBasis::WitnessedBasis(FieldPtr field, std::size_t n)
    : field_(field), n_(n), echelon_(std::move(field), n * n) {}

bool WitnessedBasis::add(const Matrix& m, std::optional<BraidWord> witness) {
  if (m.n() != n_) throw Error(Errc::DimensionMismatch, "matrix size does not match basis");
  if (!echelon_.insert(m.entries())) return false;
  elements_.push_back({m, std::move(witness)});
  return true;
}

bool WitnessedBasis::contains(const Matrix& m) const {
  for (Elem e : residual(m))
    if (e != 0) return false;
  return true;
}

std::vector<Elem> WitnessedBasis::express(const Matrix& m) const {
  if (m.n() != n_) throw Error(Errc::DimensionMismatch, "matrix size does not match basis");
  auto coords = echelon_.coordinates(m.entries());
  if (!coords) throw Error(Errc::NotInSpan, "matrix lies outside the span of " + std::to_string(dim()) + " elements");
  return *std::move(coords);
}

Matrix WitnessedBasis::combine(std::span<const Elem> coeffs) const {
  if (coeffs.size() != dim()) throw Error(Errc::DimensionMismatch, "coefficient count does not match basis");
  Matrix out(field_, n_);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) out += elements_[i].mat.scaled(coeffs[i]);
  return out;
}

std::vector<Elem> WitnessedBasis::residual(const Matrix& m) const {
  if (m.n() != n_) throw Error(Errc::DimensionMismatch, "matrix size does not match basis");
  return echelon_.residual(m.entries());
}

AlgebraClosure::AlgebraClosure(FieldPtr field, std::size_t n, bool witnessed)
    : witnessed_(witnessed), basis_(field, n) {
  basis_.add(Matrix::identity(std::move(field), n), witnessed ? std::optional<BraidWord>(BraidWord()) : std::nullopt);
}

void AlgebraClosure::try_add(const Matrix& m, const std::optional<BraidWord>& a, const std::optional<BraidWord>& b,
                             std::vector<std::size_t>& work) {
  std::optional<BraidWord> w;
  if (witnessed_) w = BraidWord::concat(*a, *b);
  if (basis_.add(m, std::move(w))) work.push_back(basis_.dim() - 1);
}

std::size_t AlgebraClosure::add_generator(const Matrix& m, std::optional<BraidWord> witness) {
  if (witnessed_ && !witness) throw Error(Errc::InvalidArgument, "witnessed closure needs a witness word");
  const std::size_t before = basis_.dim();
  if (basis_.contains(m)) {
    // Already in the algebra: adds nothing to the closure.
    return 0;
  }
  gens_.push_back({m, std::move(witness)});
  const auto& g = gens_.back();

  std::vector<std::size_t> work;
  for (std::size_t b = 0; b < before; ++b) {
    const auto e = basis_[b];
    try_add(e.mat * g.mat, e.witness, g.witness, work);
    try_add(g.mat * e.mat, g.witness, e.witness, work);
  }
  while (!work.empty()) {
    const std::size_t k = work.back();
    work.pop_back();
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      // Copies: basis_ may reallocate inside try_add.
      const Matrix mat = basis_[k].mat;
      const auto wit = basis_[k].witness;
      try_add(mat * gens_[gi].mat, wit, gens_[gi].witness, work);
      try_add(gens_[gi].mat * mat, gens_[gi].witness, wit, work);
    }
  }
  return basis_.dim() - before;
}

WitnessedBasis algebra_closure(FieldPtr field, std::size_t n, const GeneratorList& gens) {
  bool witnessed = !gens.empty();
  for (const auto& g : gens) witnessed = witnessed && g.second.has_value();
  AlgebraClosure closure(std::move(field), n, witnessed);
  for (const auto& [m, w] : gens) closure.add_generator(m, witnessed ? w : std::nullopt);
  return closure.basis();
}

std::vector<Matrix> algebra_basis(const std::vector<Matrix>& gens) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "empty matrix generator list");
  GeneratorList list;
  for (const auto& m : gens) list.push_back({m, std::nullopt});
  const auto basis = algebra_closure(gens.front().field_ptr(), gens.front().n(), list);
  std::vector<Matrix> out;
  for (const auto& e : basis.elements()) out.push_back(e.mat);
  return out;
}

std::vector<Elem> SolutionSpace::point(const Field& field, std::span<const Elem> t) const {
  if (t.size() != homogeneous.size()) throw Error(Errc::DimensionMismatch, "parameter count mismatch");
  std::vector<Elem> x = particular;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] == 0) continue;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] ^= field.mul(t[k], homogeneous[k][i]);
  }
  return x;
}

Matrix linear_combination(const std::vector<Matrix>& mats, std::span<const Elem> x) {
  if (mats.empty() || mats.size() != x.size()) throw Error(Errc::DimensionMismatch, "coefficient count mismatch");
  Matrix out(mats.front().field_ptr(), mats.front().n());
  for (std::size_t i = 0; i < mats.size(); ++i)
    if (x[i] != 0) out += mats[i].scaled(x[i]);
  return out;
}

SolutionSpace solve_membership(const Matrix& gamma_inv, const std::vector<Matrix>& kappas, const WitnessedBasis& v) {
  if (kappas.empty()) throw Error(Errc::InvalidArgument, "empty kappa list");
  const std::size_t r = kappas.size();
  const std::size_t width = v.n() * v.n();
  if (gamma_inv.n() != v.n()) throw Error(Errc::DimensionMismatch, "gamma size does not match basis");

  // x is a solution iff sum x_i residual(gamma^-1 kappa_i) = 0. Each residual
  // that depends on the earlier independent ones yields one kernel vector.
  Echelon ech(v.field(), width);
  std::vector<std::size_t> independent;
  SolutionSpace space;
  space.particular.assign(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const auto res = v.residual(gamma_inv * kappas[i]);
    if (ech.insert(res)) {
      independent.push_back(i);
      continue;
    }
    const auto coords = ech.coordinates(res);
    std::vector<Elem> x(r, 0);
    x[i] = 1;
    // Characteristic 2: res_i = sum c_k res_{j_k} means res_i + sum c_k res_{j_k} = 0.
    for (std::size_t k = 0; k < coords->size(); ++k) x[independent[k]] = (*coords)[k];
    space.homogeneous.push_back(std::move(x));
  }
  if (space.homogeneous.empty())
    throw Error(Errc::NoSolution, "only the zero combination satisfies the membership constraints");
  return space;
}

InvertibleSample sample_invertible(const SolutionSpace& space, const std::vector<Matrix>& kappas,
                                   std::mt19937_64& rng, std::size_t max_tries) {
  if (kappas.empty()) throw Error(Errc::InvalidArgument, "empty kappa list");
  const Field& f = kappas.front().field();
  std::uniform_int_distribution<Elem> pick(0, f.order() - 1);
  std::vector<Elem> t(space.dim());
  for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
    for (auto& e : t) e = pick(rng);
    auto x = space.point(f, t);
    Matrix c = linear_combination(kappas, x);
    if (c.invertible()) return {std::move(c), std::move(x), attempt};
  }
  throw Error(Errc::InvertibleSampleFailed, "no invertible solution in " + std::to_string(max_tries) + " draws");
}

}  // namespace eraser
