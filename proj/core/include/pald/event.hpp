#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pald/matrix.hpp"
#include "pald/triplet_array.hpp"

namespace pald::event {

// Proportion of absolute point differential to overall total:
// |a - b| / (a + b). Scores must be nonnegative and not both zero.
double competitiveness(double score_a, double score_b);

struct WeightedValue {
    double value;  // observed dissimilarity, >= 0
    double weight; // selection weight, > 0
};
using ValueList = std::vector<WeightedValue>;

// Per-pair multisets of observed dissimilarities A{x,y}. Every unordered
// pair of distinct elements must hold at least one value before the table
// is used; self-pairs implicitly hold the single value 0.
class EventTable {
public:
    EventTable() = default;
    explicit EventTable(Index n);

    Index size() const { return n_; }
    void add(Index x, Index y, double value, double weight = 1.0);
    const ValueList& pair_events(Index x, Index y) const;
    bool pair_present(Index x, Index y) const;
    std::vector<std::pair<Index, Index>> missing_pairs() const;

    // Largest N_xy * N_xz * N_yz over index triangles; decides whether any
    // triple falls back to Monte Carlo for a given exact limit.
    std::uint64_t max_triple_product() const;

private:
    Index n_ = 0;
    std::vector<ValueList> pairs_;  // triangular, {x,y} with x < y
};

struct EventOptions {
    std::uint64_t seed = 0;
    std::uint64_t mc_samples = 100000;
    std::uint64_t exact_limit = 1000000;  // max N product enumerated exactly
    // One realized draw per pair per evaluation is the default; when set,
    // every comparison inside the relevance disjunction redraws its pair.
    bool independent_draws = false;
    unsigned jobs = 0;
    Index dense_cap = kDefaultDenseCap;
};

// Identifies the (x, y, z) triple owning a Monte Carlo substream so results
// are reproducible under any parallel schedule.
struct TripleKey {
    std::uint64_t x = 0, y = 0, z = 0;
};

// Probabilities for one triple with three distinct pairs {x,y}, {x,z},
// {y,z}: with V drawn weight-proportionally from each list,
//   support   = P(V_xz < V_yz) + 1/2 P(V_xz = V_yz)
//   relevance = P(V_xz <= V_xy or V_yz <= V_xy)
// Enumerated exactly while N_xy*N_xz*N_yz <= exact_limit, otherwise
// estimated by seeded Monte Carlo with opts.mc_samples draws.
TripletProbs event_triplet(const ValueList& a_xy, const ValueList& a_xz, const ValueList& a_yz,
                           const EventOptions& opts = {}, const TripleKey& key = {});

// Applies event_triplet to every ordered triple, with the self-dissimilarity
// convention (pair {x,x} holds the single value 0) covering entries whose z
// lies in {x, y}. The output pair passes validate_arrays.
std::pair<TripletArray, TripletArray> event_arrays(const EventTable& table,
                                                   const EventOptions& opts = {});

// Induced dissimilarity matrix for the degenerate all-singleton case.
DissimilarityMatrix induced_distances(const EventTable& table);

}  // namespace pald::event
