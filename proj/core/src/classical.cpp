#include "pald/classical.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "pald/error.hpp"

namespace pald::classical {

namespace {

// Shared by the lazy slice closures. Keeps the transpose so slice fills read
// two contiguous rows instead of strided columns; d may be asymmetric.
struct DistanceTable {
    DissimilarityMatrix d;
    DissimilarityMatrix dt;

    explicit DistanceTable(const DissimilarityMatrix& src) : d(src), dt(src.size()) {
        const Index n = src.size();
        for (Index x = 0; x < n; ++x) {
            for (Index y = 0; y < n; ++y) dt(y, x) = src(x, y);
        }
    }
};

// Branchless fills: the comparisons are data-dependent coin flips, so
// short-circuit evaluation would mispredict half the time and block
// vectorization.
inline void relevance_slice(const DistanceTable& t, Index x, Index y, std::span<double> out) {
    const double* to_x = t.dt.row(x).data();  // to_x[z] = d(z, x)
    const double* to_y = t.dt.row(y).data();
    const double d_yx = t.d(y, x);
    const double d_xy = t.d(x, y);
    const Index n = out.size();
    for (Index z = 0; z < n; ++z) {
        out[z] = static_cast<double>((to_x[z] <= d_yx) | (to_y[z] <= d_xy));
    }
}

inline void support_slice(const DistanceTable& t, Index x, Index y, std::span<double> out) {
    const double* to_x = t.dt.row(x).data();
    const double* to_y = t.dt.row(y).data();
    const Index n = out.size();
    for (Index z = 0; z < n; ++z) {
        const double dzx = to_x[z];
        const double dzy = to_y[z];
        out[z] = 0.5 * (static_cast<double>(dzx < dzy) + static_cast<double>(dzx <= dzy));
    }
}

TripletArray build_indicator(const DissimilarityMatrix& d, TripletRole role, Index dense_cap) {
    d.check_finite();
    const Index n = d.size();
    auto table = std::make_shared<const DistanceTable>(d);

    auto fill = [table, role](Index x, Index y, std::span<double> out) {
        if (role == TripletRole::relevance) {
            relevance_slice(*table, x, y, out);
        } else {
            support_slice(*table, x, y, out);
        }
    };

    if (n <= dense_cap) {
        TripletArray a = TripletArray::dense(n, role);
        for (Index x = 0; x < n; ++x) {
            for (Index y = 0; y < n; ++y) fill(x, y, a.mutable_slice(x, y));
        }
        a.mark_construction_validated();
        return a;
    }

    auto point = [table, role](Index x, Index y, Index z) -> double {
        if (role == TripletRole::relevance) {
            return (table->d(z, x) <= table->d(y, x) || table->d(z, y) <= table->d(x, y)) ? 1.0
                                                                                          : 0.0;
        }
        const double dzx = table->d(z, x);
        const double dzy = table->d(z, y);
        return dzx < dzy ? 1.0 : (dzx == dzy ? 0.5 : 0.0);
    };
    TripletArray a = TripletArray::lazy(n, role, point, fill);
    a.mark_construction_validated();
    return a;
}

}  // namespace

std::vector<Index> local_focus(const DissimilarityMatrix& d, Index x, Index y) {
    const Index n = d.size();
    if (x >= n || y >= n) throw StructuralError("pair index out of range");
    if (x == y) throw StructuralError("local focus requires x != y");
    std::vector<Index> focus;
    const double d_yx = d(y, x);
    const double d_xy = d(x, y);
    for (Index z = 0; z < n; ++z) {
        if (d(z, x) <= d_yx || d(z, y) <= d_xy) focus.push_back(z);
    }
    return focus;
}

TripletArray relevance_from_distances(const DissimilarityMatrix& d, Index dense_cap) {
    return build_indicator(d, TripletRole::relevance, dense_cap);
}

TripletArray support_from_distances(const DissimilarityMatrix& d, Index dense_cap) {
    return build_indicator(d, TripletRole::support, dense_cap);
}

CohesionMatrix classical_cohesion(const DissimilarityMatrix& d, const CohesionOptions& opts,
                                  Index dense_cap) {
    if (d.size() < 2) throw StructuralError("classical cohesion requires n >= 2");
    TripletArray r = relevance_from_distances(d, dense_cap);
    TripletArray q = support_from_distances(d, dense_cap);
    return cohesion(r, q, opts);
}

DissimilarityMatrix distances_from_values_1d(std::span<const double> values) {
    const Index n = values.size();
    DissimilarityMatrix d(n);
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) d(x, y) = std::abs(values[x] - values[y]);
    }
    return d;
}

namespace {

DissimilarityMatrix pointwise_distances(std::span<const double> points, Index dim, bool take_root) {
    if (dim == 0) throw StructuralError("point dimension must be >= 1");
    if (points.size() % dim != 0) {
        throw StructuralError("point buffer size " + std::to_string(points.size()) +
                              " is not a multiple of dim " + std::to_string(dim));
    }
    const Index n = points.size() / dim;
    DissimilarityMatrix d(n);
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            double s = 0.0;
            for (Index k = 0; k < dim; ++k) {
                const double diff = points[x * dim + k] - points[y * dim + k];
                s += diff * diff;
            }
            d(x, y) = take_root ? std::sqrt(s) : s;
        }
    }
    return d;
}

}  // namespace

DissimilarityMatrix euclidean_distances(std::span<const double> points, Index dim) {
    return pointwise_distances(points, dim, true);
}

DissimilarityMatrix squared_euclidean_distances(std::span<const double> points, Index dim) {
    return pointwise_distances(points, dim, false);
}

}  // namespace pald::classical
