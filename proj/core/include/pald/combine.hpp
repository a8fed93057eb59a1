#pragma once

#include <span>
#include <vector>

#include "pald/matrix.hpp"
#include "pald/triplet_array.hpp"

namespace pald::combine {

// Weights are accepted in unnormalized relative form (nonnegative, not all
// zero) and normalized to sum 1 internally. Throws StructuralError on a
// negative entry, an all-zero vector, or non-finite values.
std::vector<double> normalize_weights(std::span<const double> weights);

// Entrywise convex combination of dissimilarity matrices (the distance-level
// fusion route). Requires |ds| == |weights| >= 1 and matching sizes.
DissimilarityMatrix combine_distances(std::span<const DissimilarityMatrix> ds,
                                      std::span<const double> weights);

// Entrywise convex combination of same-role triplet arrays (the
// probability-level fusion route). Properties (a)-(d) are each linear or
// affine in the entries, so convex combinations of valid arrays are valid.
// The two routes generally yield different cohesion networks; they coincide
// when only one source is given.
TripletArray combine_triplet_arrays(std::span<const TripletArray> arrays,
                                    std::span<const double> weights,
                                    Index dense_cap = kDefaultDenseCap);

}  // namespace pald::combine
