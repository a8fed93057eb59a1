#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pald/matrix.hpp"
#include "pald/triplet_array.hpp"

namespace pald::structure {

struct Partition {
    std::vector<Index> a;
    std::vector<Index> b;
};

// Outcome of a structural predicate; on failure carries the first violated
// condition with its indices so the predicates double as diagnostics on
// real data.
struct PredicateResult {
    bool holds = true;
    std::string condition;  // empty when the predicate holds
    Index i = 0, j = 0, k = 0;
    double value = 0.0;

    explicit operator bool() const { return holds; }
    std::string describe() const;
};

// A is sufficiently separated from B when for all c, c* in A and d in B:
//   R(c,d,c*) = 1,   R(c,c*,d) = 0,   Q(c,d,c*) = 1.
// Entries are compared within tol (0 for indicator arrays). Sets must be
// nonempty and disjoint.
PredicateResult is_sufficiently_separated(const TripletArray& relevance,
                                          const TripletArray& support,
                                          std::span<const Index> a, std::span<const Index> b,
                                          double tol = 0.0);

// Both directions.
PredicateResult is_mutually_separated(const TripletArray& relevance, const TripletArray& support,
                                      std::span<const Index> a, std::span<const Index> b,
                                      double tol = 0.0);

// B is concentrated with respect to A when Q(a,b,b*) = 0 for a in A and
// b, b* in B, and for each pair (a, a*) the relevance R(a,a*,b) is constant
// over b in B. The constancy check bounds the spread of those values by tol.
PredicateResult is_concentrated(const TripletArray& relevance, const TripletArray& support,
                                std::span<const Index> a, std::span<const Index> b,
                                double tol = 0.0);

// Positional correspondence a_i <-> b_i; true when all m^3 paired entries of
// both arrays agree within tol.
PredicateResult equivalent_ordinal_structure(const TripletArray& relevance,
                                             const TripletArray& support,
                                             std::span<const Index> a, std::span<const Index> b,
                                             double tol = 0.0);

struct SeparatedInstanceOptions {
    double scale_a = 1.0;      // multiplies the A cluster's coordinates
    bool coincident_b = false; // all B points at one location
    // Location of the B cluster's left edge; defaults to scale_a + gap.
    // Placing it inside the A range (with coincident_b) produces instances
    // that are concentrated but not separated by distance.
    double b_offset = -1.0;
};

struct SeparatedInstance {
    std::vector<double> points;  // 1-D coordinates, A block then B block
    DissimilarityMatrix d;
    Partition partition;
};

// Two 1-D clusters: A with m_a points in [0, scale_a], B with m_b points in
// [b_offset, b_offset + 1] (or all at b_offset when coincident). With the
// default offset and gap > max(scale_a, 1), the classical indicator arrays
// are mutually sufficiently separated.
SeparatedInstance generate_separated_instance(Index m_a, Index m_b, double gap,
                                              std::uint64_t seed,
                                              const SeparatedInstanceOptions& opts = {});

}  // namespace pald::structure
