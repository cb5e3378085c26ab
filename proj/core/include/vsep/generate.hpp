#pragma once

#include <cstddef>

#include "vsep/graph.hpp"
#include "vsep/rng.hpp"

namespace vsep {

/// Random graph with each vertex pair joined independently with the given
/// probability.  Quadratic in n; intended for small instances.
WeightedGraph erdos_renyi_gnp(std::size_t n, double prob, Rng& rng);

/// Random graph with exactly m distinct edges drawn uniformly from all
/// pairs.  Requires m <= n*(n-1)/2; suited to sparse large instances.
WeightedGraph erdos_renyi_gnm(std::size_t n, std::size_t m, Rng& rng);

/// rows x cols lattice with 4-neighbor connectivity.
WeightedGraph grid(std::size_t rows, std::size_t cols);

}  // namespace vsep
