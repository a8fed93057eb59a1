#include "pald/combine.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "pald/error.hpp"

namespace pald::combine {

std::vector<double> normalize_weights(std::span<const double> weights) {
    if (weights.empty()) throw StructuralError("weight vector must be nonempty");
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w)) throw StructuralError("weights must be finite");
        if (w < 0.0) throw StructuralError("weights must be nonnegative");
        sum += w;
    }
    if (!(sum > 0.0)) throw StructuralError("weights must not all be zero");
    std::vector<double> out(weights.begin(), weights.end());
    for (double& w : out) w /= sum;
    return out;
}

DissimilarityMatrix combine_distances(std::span<const DissimilarityMatrix> ds,
                                      std::span<const double> weights) {
    if (ds.empty()) throw StructuralError("need at least one matrix to combine");
    if (ds.size() != weights.size()) {
        throw StructuralError("matrix count " + std::to_string(ds.size()) +
                              " does not match weight count " + std::to_string(weights.size()));
    }
    const Index n = ds.front().size();
    for (const auto& d : ds) {
        if (d.size() != n) throw StructuralError("combined matrices must share one size");
        d.check_finite();
    }
    const std::vector<double> w = normalize_weights(weights);

    DissimilarityMatrix out(n, 0.0);
    for (std::size_t k = 0; k < ds.size(); ++k) {
        for (Index x = 0; x < n; ++x) {
            for (Index y = 0; y < n; ++y) out(x, y) += w[k] * ds[k](x, y);
        }
    }
    return out;
}

TripletArray combine_triplet_arrays(std::span<const TripletArray> arrays,
                                    std::span<const double> weights, Index dense_cap) {
    if (arrays.empty()) throw StructuralError("need at least one array to combine");
    if (arrays.size() != weights.size()) {
        throw StructuralError("array count " + std::to_string(arrays.size()) +
                              " does not match weight count " + std::to_string(weights.size()));
    }
    const Index n = arrays.front().size();
    const TripletRole role = arrays.front().role();
    bool all_marked = true;
    for (const auto& a : arrays) {
        if (a.size() != n) throw StructuralError("combined arrays must share one size");
        if (a.role() != role) throw StructuralError("combined arrays must share one role");
        all_marked = all_marked && a.construction_validated();
    }
    const std::vector<double> w = normalize_weights(weights);

    if (n <= dense_cap) {
        TripletArray out = TripletArray::dense(n, role);
        std::vector<double> buf(n);
        for (Index x = 0; x < n; ++x) {
            for (Index y = 0; y < n; ++y) {
                auto dst = out.mutable_slice(x, y);
                for (std::size_t k = 0; k < arrays.size(); ++k) {
                    arrays[k].fill_slice(x, y, buf);
                    if (k == 0) {
                        for (Index z = 0; z < n; ++z) dst[z] = w[0] * buf[z];
                    } else {
                        for (Index z = 0; z < n; ++z) dst[z] += w[k] * buf[z];
                    }
                }
            }
        }
        if (all_marked) out.mark_construction_validated();
        return out;
    }

    auto parts = std::make_shared<const std::vector<TripletArray>>(arrays.begin(), arrays.end());
    auto wv = std::make_shared<const std::vector<double>>(w);
    auto point = [parts, wv](Index x, Index y, Index z) {
        double acc = 0.0;
        for (std::size_t k = 0; k < parts->size(); ++k) acc += (*wv)[k] * (*parts)[k].value(x, y, z);
        return acc;
    };
    auto slice = [parts, wv, n](Index x, Index y, std::span<double> out) {
        std::vector<double> buf(n);
        for (Index z = 0; z < n; ++z) out[z] = 0.0;
        for (std::size_t k = 0; k < parts->size(); ++k) {
            (*parts)[k].fill_slice(x, y, buf);
            const double wk = (*wv)[k];
            for (Index z = 0; z < n; ++z) out[z] += wk * buf[z];
        }
    };
    TripletArray out = TripletArray::lazy(n, role, point, slice);
    if (all_marked) out.mark_construction_validated();
    return out;
}

}  // namespace pald::combine
