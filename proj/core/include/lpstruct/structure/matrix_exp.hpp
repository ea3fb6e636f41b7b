#pragma once

#include "lpstruct/linalg.hpp"

namespace lpstruct::structure {

// exp(M) by scaling and squaring with a [13/13] Pade approximant.
// Throws InvalidArgument for non-square or non-finite input.
Matrix matrix_exp(const Matrix& m);

}  // namespace lpstruct::structure
