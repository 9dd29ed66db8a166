#pragma once

#include <optional>
#include <vector>

#include "eraser/braid.hpp"
#include "eraser/matrix.hpp"

namespace eraser {

/// Public parameters of one protocol instance: what Alice publishes and what
/// an eavesdropper is assumed to know.
struct InstancePublic {
  EvalParams params;
  std::vector<BraidWord> a_gens;  // generators of A as Artin words
  std::vector<Matrix> c_gens;     // generators of C

  std::size_t n() const { return params.n; }
  const FieldPtr& field() const { return params.field; }
};

/// The two messages sent over the channel: (p, g) from Alice, (q, h) from Bob.
struct Transcript {
  OmegaElement alice_msg;
  std::optional<OmegaElement> bob_msg;
};

struct SharedKey {
  OmegaElement key;

  bool operator==(const SharedKey&) const = default;
};

/// Basis kappa_1..kappa_r of the algebra generated by c_gens (identity first).
std::vector<Matrix> kappa_basis(const InstancePublic& pub);

}  // namespace eraser
