#pragma once

#include "nillab/exact/eigen_support.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace nillab {

/// N points of [0,1)^dim, one per column, from a base-2 Sobol sequence with a
/// seed-derived digital shift (XOR of each 64-bit coordinate with a fixed
/// word). No seed means no shift; the first unshifted point is (1/2, ..., 1/2).
/// Lebesgue measure on the second-kind cube is the Haar measure of G/Gamma.
Matrix<double> haar_sample(int dim, std::size_t count, std::optional<std::uint64_t> seed);

}  // namespace nillab
