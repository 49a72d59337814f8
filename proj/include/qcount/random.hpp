#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

#include "qcount/basis.hpp"
#include "qcount/density.hpp"
#include "qcount/linalg.hpp"

namespace qcount {

class Channel;

using Rng = std::mt19937_64;

/// Deterministically mixes a base seed with a list of tags (splitmix64), so
/// that per-item streams are independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// rows x cols matrix of i.i.d. standard complex Gaussians.
Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
Matrix haar_unitary(std::size_t dim, Rng& rng);

/// Haar-random isometry C^cols -> C^rows (first `cols` columns of a Haar unitary).
Matrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-random pure state.
PureState random_pure(std::size_t dim, Rng& rng, std::optional<StringBasis> basis = std::nullopt);

/// Random density operator from the induced measure: G G^dagger / Tr with G a
/// dim x rank Ginibre matrix. rank = 0 draws the rank uniformly from 1..dim.
DensityOperator random_density(std::size_t dim, Rng& rng, std::size_t rank = 0,
                               std::optional<StringBasis> basis = std::nullopt);

/// Random CPTP map induced by a Haar isometry C^in -> C^out (x) C^env.
/// env = 0 uses env = in_dim.
Channel random_channel(std::size_t in_dim, std::size_t out_dim, Rng& rng, std::size_t env = 0);

}  // namespace qcount
