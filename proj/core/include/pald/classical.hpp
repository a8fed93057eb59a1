#pragma once

#include <span>
#include <vector>

#include "pald/core.hpp"
#include "pald/matrix.hpp"
#include "pald/triplet_array.hpp"

namespace pald::classical {

// The set of elements local to the pair (x, y):
//   { z : d(z,x) <= d(y,x)  or  d(z,y) <= d(x,y) }.
// Always contains x and y when self-dissimilarities are minimal. Returned
// sorted ascending. Throws StructuralError when x == y.
std::vector<Index> local_focus(const DissimilarityMatrix& d, Index x, Index y);

// Indicator relevance array: R(x,y,z) = 1 iff z is in the local focus of
// (x, y). Satisfies properties (a), (b), (d) exactly; all comparisons of
// stored values are exact (no epsilon).
TripletArray relevance_from_distances(const DissimilarityMatrix& d,
                                      Index dense_cap = kDefaultDenseCap);

// Indicator support array: Q(x,y,z) is 1 if d(z,x) < d(z,y), 1/2 on ties,
// else 0. Satisfies property (c) exactly; ties are always resolved by the
// 1/2 value, never by randomization.
TripletArray support_from_distances(const DissimilarityMatrix& d,
                                    Index dense_cap = kDefaultDenseCap);

// Cohesion of the indicator arrays; recovers the original partitioned
// local depth computation for the dissimilarity d. Entrywise identical to
// cohesion(relevance_from_distances(d), support_from_distances(d)).
CohesionMatrix classical_cohesion(const DissimilarityMatrix& d, const CohesionOptions& opts = {},
                                  Index dense_cap = kDefaultDenseCap);

// Convenience constructions.
DissimilarityMatrix distances_from_values_1d(std::span<const double> values);
// `points` is row-major n x dim.
DissimilarityMatrix euclidean_distances(std::span<const double> points, Index dim);
// Same comparisons as euclidean_distances but exactly representable for
// integer coordinates; cohesion depends only on comparisons, so either
// form yields the same network.
DissimilarityMatrix squared_euclidean_distances(std::span<const double> points, Index dim);

}  // namespace pald::classical
