#include "pald/triplet_array.hpp"

#include <string>
#include <utility>

#include "pald/error.hpp"

namespace pald {

TripletArray TripletArray::dense(Index n, TripletRole role) {
    TripletArray a;
    a.n_ = n;
    a.role_ = role;
    a.values_.assign(n * n * n, 0.0);
    return a;
}

TripletArray TripletArray::lazy(Index n, TripletRole role, PointFn point) {
    TripletArray a;
    a.n_ = n;
    a.role_ = role;
    a.point_ = std::move(point);
    return a;
}

TripletArray TripletArray::lazy(Index n, TripletRole role, PointFn point, SliceFn slice) {
    TripletArray a = lazy(n, role, std::move(point));
    a.slice_ = std::move(slice);
    return a;
}

double TripletArray::value(Index x, Index y, Index z) const {
    if (x >= n_ || y >= n_ || z >= n_) {
        throw StructuralError("triplet index out of range for n=" + std::to_string(n_));
    }
    if (!values_.empty()) return values_[(x * n_ + y) * n_ + z];
    return point_(x, y, z);
}

void TripletArray::fill_slice(Index x, Index y, std::span<double> out) const {
    if (x >= n_ || y >= n_ || out.size() != n_) {
        throw StructuralError("bad slice request for n=" + std::to_string(n_));
    }
    if (!values_.empty()) {
        auto src = slice(x, y);
        for (Index z = 0; z < n_; ++z) out[z] = src[z];
        return;
    }
    if (slice_) {
        slice_(x, y, out);
        return;
    }
    for (Index z = 0; z < n_; ++z) out[z] = point_(x, y, z);
}

void TripletArray::set(Index x, Index y, Index z, double v) {
    if (values_.empty()) {
        throw StructuralError("set() requires dense storage");
    }
    if (x >= n_ || y >= n_ || z >= n_) {
        throw StructuralError("triplet index out of range for n=" + std::to_string(n_));
    }
    values_[(x * n_ + y) * n_ + z] = v;
    construction_validated_ = false;
}

std::span<double> TripletArray::mutable_slice(Index x, Index y) {
    if (values_.empty()) {
        throw StructuralError("mutable_slice() requires dense storage");
    }
    if (x >= n_ || y >= n_) {
        throw StructuralError("triplet index out of range for n=" + std::to_string(n_));
    }
    construction_validated_ = false;
    return {values_.data() + (x * n_ + y) * n_, n_};
}

}  // namespace pald
