#pragma once

#include "lsm/matrix.hpp"

namespace lsm {

// Rank of a 0/1 matrix over the rationals, computed exactly by fraction-free
// integer elimination. No floating point, no tolerance.
int binary_matrix_rank(const SpikeStateMatrix& s);

}  // namespace lsm
