#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cshv/cosheaf.hpp"
#include "cshv/poset.hpp"
#include "cshv/sheaf.hpp"
#include "cshv/simplicial.hpp"

namespace cshv::gen {

using Rng = std::mt19937_64;

/// Independent stream per (seed, stream) pair.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
bool coin(Rng& rng, double p = 0.5);
/// Integer in [−2, 2], non-zero when `nonzero`.
Rational small_rational(Rng& rng, bool nonzero = false);

/// Random order on n elements labelled prefix0..: i < j related with probability `density`.
FinPoset random_poset(Rng& rng, std::size_t n, double density = 0.35, const std::string& prefix = "x");
UpSet random_up_set(Rng& rng, const FinPoset& p);
Subset random_down_set(Rng& rng, const FinPoset& p);
/// Non-empty up-set ∩ down-set, or empty when the draw misses.
Subset random_locally_closed(Rng& rng, const FinPoset& p);

/// Functorial data on `p` with per-degree stalk dimension ≤ max_dim. Mixes quotient and
/// subspace representations of a fixed ℚ^D, direct sums with shifts, and mapping cones of
/// quotient projections.
PosetRep random_rep(Rng& rng, const FinPoset& p, std::size_t max_dim = 3);

/// Closed complex on ≤ max_vertices vertices, closure of a few random simplices.
AlmostSimplicialComplex random_simplicial_complex(Rng& rng, std::size_t max_vertices = 8, std::size_t max_size = 4);

/// Support-respecting matrix between random up-sets of a random poset.
CombinatorialMap random_combinatorial_map(Rng& rng, std::size_t max_opens = 6, std::size_t max_points = 12);

}  // namespace cshv::gen
