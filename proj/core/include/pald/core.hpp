#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pald/matrix.hpp"
#include "pald/triplet_array.hpp"

namespace pald {

// One failed structural check. `property` is the short code used in
// diagnostics: 'a' range, 'b' relevance symmetry, 'c' support complement,
// 'd' self relevance.
struct PropertyViolation {
    char property;
    Index x, y, z;
    double value;     // offending value (for 'c': Q(x,y,z) + Q(y,x,z))
    double expected;  // target value, or nearest bound for range checks
};

struct ValidationReport {
    std::vector<PropertyViolation> violations;  // capped at `kept_limit`
    std::size_t total_violations = 0;
    std::size_t kept_limit = 64;

    bool ok() const { return total_violations == 0; }
    std::string summary() const;
};

// Checks properties (a)-(d) of a relevance/support pair at every index
// triple, within tolerance tol (>= 0). Combined or quadrature-built arrays
// accumulate rounding, hence the default slack; exact indicator
// constructions should be checked with tol 0.
// Throws StructuralError on dimension or role mismatch.
ValidationReport validate_arrays(const TripletArray& relevance, const TripletArray& support,
                                 double tol = 1e-9);

// P(Z = z) for Z sampled local to the pair (x, y): entry z is proportional
// to R(x,y,z). Property (d) guarantees the normalizer is >= 2.
// Throws StructuralError when x == y.
std::vector<double> local_distribution(const TripletArray& relevance, Index x, Index y);

struct CohesionOptions {
    unsigned jobs = 0;        // worker threads for the row-parallel kernel; 0 = hardware
    bool validate = true;     // validate non-construction inputs before running
    double validation_tol = 1e-9;
};

// The cohesion kernel. For every ordered pair (i, j), i != j, distributes
// 1/(n-1) * P(Z = z) * Q(i,j,z) onto row i. Row sums are the local depths;
// the total mass of the result is n/2 for valid inputs.
//
// The kernel normalizes R over w once per (i, j) pair and accumulates each
// row in ascending (j, z) order, so results are bit-identical regardless of
// the number of worker threads and of dense vs lazy input form.
CohesionMatrix cohesion(const TripletArray& relevance, const TripletArray& support,
                        const CohesionOptions& opts = {});

// Row sums of C.
DepthVector local_depths(const CohesionMatrix& c);

// Display threshold for strong ties: (1/(2n)) * sum_x C(x,x). Theorem-level
// upper bound for the exact tie probability below.
double threshold_bound(const CohesionMatrix& c);

// Exact strong-tie probability P(Z = W, Z supports X) with Z, W drawn
// independently from the local distribution of a uniformly random ordered
// pair. Bounded by threshold_bound(cohesion(R, Q)) whenever every element
// fully supports itself (Q(x,y,x) = 1, Q(x,y,y) = 0), which holds for all
// constructions here away from zero-distance ties; equal to the bound for
// classical indicator arrays over distinct points.
double threshold_exact(const TripletArray& relevance, const TripletArray& support,
                       const CohesionOptions& opts = {});

}  // namespace pald
