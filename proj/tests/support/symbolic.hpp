#pragma once

// Colored Burau pairs with Laurent-polynomial entries in t_1..t_n, for
// checking the evaluated engine at small n. Signs are kept formally
// (coefficient -1 is stored as the field's 1, since the field is binary,
// but every formula is written with its sign).

#include <map>
#include <vector>

#include "eraser/braid.hpp"
#include "oracles.hpp"

namespace oracle {

using Exponents = std::vector<int>;

/// Sparse Laurent polynomial: exponent vector -> nonzero coefficient.
struct Laurent {
  std::map<Exponents, Elem> terms;

  static Laurent constant(std::size_t n, Elem c);
  static Laurent variable(std::size_t n, std::size_t j, int power = 1);

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Laurent&) const = default;
};

Laurent add(const Laurent& a, const Laurent& b);
Laurent neg(const Laurent& a);
Laurent mul(const Gf& f, const Laurent& a, const Laurent& b);
/// Inverse of a single term c * t^e. Throws for anything else.
Laurent inv_monomial(const Gf& f, const Laurent& a);
/// ^g p: t_j -> t_{g^-1(j)}.
Laurent act(const eraser::Permutation& g, const Laurent& p);
Elem evaluate(const Gf& f, const Laurent& p, const std::vector<Elem>& tau);

using SymMat = std::vector<std::vector<Laurent>>;

struct SymPair {
  SymMat mat;
  eraser::Permutation perm;
};

SymMat sym_identity(std::size_t n);
SymMat sym_mul(const Gf& f, const SymMat& a, const SymMat& b);
SymMat sym_act(const eraser::Permutation& g, const SymMat& a);
Mat sym_eval(const Gf& f, const SymMat& a, const std::vector<Elem>& tau);

/// x_i(t): identity except row i = (t_i, -t_i, 1) at columns i-1, i, i+1
/// (1-based i; out-of-range columns dropped).
SymMat burau_generator(std::size_t n, std::size_t i);
/// Inverse of a matrix that differs from the identity in row i only, whose
/// diagonal entry is a monomial.
SymMat inverse_row_perturbed(const Gf& f, const SymMat& a, std::size_t i);

/// (a, g)(b, h) = (a ^g b, g h).
SymPair pair_mul(const Gf& f, const SymPair& x, const SymPair& y);

/// psi(w) symbolically. Throws std::length_error for n > 8.
SymPair cb_symbolic(const Gf& f, const eraser::BraidWord& w, std::size_t n);

}  // namespace oracle
