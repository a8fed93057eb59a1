#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pald {

// Element index into the underlying set S = {0, ..., n-1}.
using Index = std::size_t;

// Square matrix of pairwise dissimilarities d(x, y). Entries must be finite;
// symmetry and the triangle inequality are NOT required. Diagonal entries are
// read as the self-dissimilarity and are expected to be minimal (typically 0).
class DissimilarityMatrix {
public:
    DissimilarityMatrix() = default;
    explicit DissimilarityMatrix(Index n, double fill = 0.0) : n_(n), d_(n * n, fill) {}

    Index size() const { return n_; }
    double operator()(Index x, Index y) const { return d_[x * n_ + y]; }
    double& operator()(Index x, Index y) { return d_[x * n_ + y]; }
    std::span<const double> row(Index x) const { return {d_.data() + x * n_, n_}; }
    std::span<const double> data() const { return d_; }

    // Throws StructuralError if any entry is non-finite.
    void check_finite() const;

private:
    Index n_ = 0;
    std::vector<double> d_;
};

// Result of the cohesion kernel: entry (x, w) is the cohesion of w to x.
// Row sums are the local depths; the total mass of a matrix built from
// valid arrays is n/2.
class CohesionMatrix {
public:
    CohesionMatrix() = default;
    explicit CohesionMatrix(Index n, double fill = 0.0) : n_(n), c_(n * n, fill) {}

    Index size() const { return n_; }
    double operator()(Index x, Index w) const { return c_[x * n_ + w]; }
    double& operator()(Index x, Index w) { return c_[x * n_ + w]; }
    std::span<const double> row(Index x) const { return {c_.data() + x * n_, n_}; }
    std::span<double> row(Index x) { return {c_.data() + x * n_, n_}; }
    std::span<const double> data() const { return c_; }

    double total() const;

private:
    Index n_ = 0;
    std::vector<double> c_;
};

using DepthVector = std::vector<double>;

}  // namespace pald
