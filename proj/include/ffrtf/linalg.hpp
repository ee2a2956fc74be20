// SPDX-License-Identifier: MIT
#ifndef FFRTF_LINALG_HPP
#define FFRTF_LINALG_HPP

#include "ffrtf/field.hpp"
#include "ffrtf/laurent.hpp"

#include <vector>

namespace ffrtf {

using FqMatrix = std::vector<std::vector<fe>>;

// basis of {v : A v = 0} over F_q, A given by rows of length ncols
std::vector<std::vector<fe>> nullspace(const Field& F, FqMatrix A, std::size_t ncols);
std::size_t rank(const Field& F, FqMatrix A, std::size_t ncols);

using IntMatrix = std::vector<std::vector<Integer>>;

// fraction-free (Bareiss) elimination; kernel vectors are primitive integer vectors
std::vector<std::vector<Integer>> integer_kernel(IntMatrix A, std::size_t ncols);

} // namespace ffrtf

#endif
