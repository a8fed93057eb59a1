#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pald/core.hpp"
#include "pald/matrix.hpp"
#include "pald/triplet_array.hpp"

namespace pald::uncertain {

// Observed 1-D values whose true locations are independent and uniform
// within epsilon of each base value.
struct UncertainPoints1D {
    std::vector<double> base;
    double epsilon;
};

struct QuadratureOptions {
    double abs_tol = 1e-8;
    // Hard cap on quadrature cells per triple. The interval pre-pass
    // resolves most triples to exact 0/1 before any integration.
    std::uint64_t max_cells = std::uint64_t{1} << 24;
};

// Probabilities for one index triple under the epsilon-ball model, with X,
// Y, Z independent uniform on [base +- epsilon]:
//   support   = P(|Z-X| < |Z-Y|)              (ties have probability 0)
//   relevance = P(|Z-X| <= |Y-X| or |Z-Y| <= |X-Y|)
// An interval-arithmetic pre-pass returns exactly 0 or 1 when the event is
// certain for every offset combination; otherwise the probability is
// integrated by deterministic adaptive quadrature (the innermost dimension
// in closed form) to abs_tol. Entries with z in {x, y} follow the property
// conventions: relevance 1, support 1 for z == x and 0 for z == y.
TripletProbs uncertain_triplet_1d(const UncertainPoints1D& pts, Index x, Index y, Index z,
                                  const QuadratureOptions& opts = {});

struct UncertainArrayOptions {
    QuadratureOptions quad;
    unsigned jobs = 0;
    Index dense_cap = kDefaultDenseCap;
};

// Applies uncertain_triplet_1d to all triples. Property (b) holds exactly
// (one evaluation per unordered pair), (c) by complementary fill; entries
// are clamped to [0, 1], so the pair validates within the quadrature slack.
std::pair<TripletArray, TripletArray> uncertain_arrays(const UncertainPoints1D& pts,
                                                       const UncertainArrayOptions& opts = {});

// d-dimensional epsilon-ball model, Monte Carlo only. Points are row-major
// n x dim; each true location is uniform in the L2 ball of radius epsilon
// around its base point.
struct UncertainPointsNd {
    std::vector<double> base;
    Index dim;
    double epsilon;
};

struct McOptions {
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    unsigned jobs = 0;
    Index dense_cap = kDefaultDenseCap;
};

TripletProbs uncertain_triplet_mc(const UncertainPointsNd& pts, Index x, Index y, Index z,
                                  const McOptions& opts = {});

std::pair<TripletArray, TripletArray> uncertain_arrays_mc(const UncertainPointsNd& pts,
                                                          const McOptions& opts = {});

// Cohesion as a function of the uncertainty radius: one matrix per epsilon.
// eps_list must be nonempty and strictly increasing.
std::vector<std::pair<double, CohesionMatrix>> epsilon_sweep(
    std::span<const double> base, std::span<const double> eps_list,
    const UncertainArrayOptions& array_opts = {}, const CohesionOptions& cohesion_opts = {});

}  // namespace pald::uncertain
