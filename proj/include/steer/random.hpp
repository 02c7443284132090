#pragma once

#include <cstdint>
#include <random>

#include "steer/states.hpp"

namespace steer {

using Rng = std::mt19937_64;

/// Haar-random unit vector.
Vector random_unit_vector(std::size_t dim, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the phase fix).
Matrix haar_unitary(std::size_t dim, Rng& rng);

/// Random density operator of the given rank (partial trace of a Haar-random
/// purification).
DensityOperator random_density(const Dims& dims, std::size_t rank, Rng& rng);

PureState random_pure_state(const Dims& dims, Rng& rng);

}  // namespace steer
