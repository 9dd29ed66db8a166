#include "eraser/instance.hpp"

#include "eraser/linalg.hpp"

namespace eraser {

std::vector<Matrix> kappa_basis(const InstancePublic& pub) { return algebra_basis(pub.c_gens); }

}  // namespace eraser
