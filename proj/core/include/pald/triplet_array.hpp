#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pald/matrix.hpp"

namespace pald {

// Role of an n*n*n probability array.
//
// A relevance array R holds P(z is local to the pair (x, y)); a support
// array Q holds P(z supports x over y). Valid arrays satisfy four
// structural properties, checked by validate_arrays():
//   (a) every entry lies in [0, 1]
//   (b) R(x,y,z) == R(y,x,z)
//   (c) Q(x,y,z) == 1 - Q(y,x,z)
//   (d) R(x,y,x) == R(x,y,y) == 1
enum class TripletRole { relevance, support };

// Relevance/support probabilities of a single (x, y, z) triple, as
// produced by the event and uncertainty constructions.
struct TripletProbs {
    double relevance;
    double support;
};

// Cubic memory is the binding constraint for dense storage: above this n a
// dense array would exceed ~128 MiB, so constructions switch to the lazy
// slice form and the cohesion kernel streams over (x, y) slices.
inline constexpr Index kDefaultDenseCap = 256;

// An n*n*n array of probabilities, stored dense (row-major, slice (x,y,.)
// contiguous) or backed by generator functions that compute entries on
// demand. The lazy form keeps memory linear in n^2 sources (e.g. a distance
// matrix) at the cost of recomputing slices per pass.
class TripletArray {
public:
    using PointFn = std::function<double(Index x, Index y, Index z)>;
    using SliceFn = std::function<void(Index x, Index y, std::span<double> out)>;

    TripletArray() = default;

    static TripletArray dense(Index n, TripletRole role);
    static TripletArray lazy(Index n, TripletRole role, PointFn point);
    // Slice fills dominate the kernel's run time; providers with a cheap
    // batch form should pass one.
    static TripletArray lazy(Index n, TripletRole role, PointFn point, SliceFn slice);

    Index size() const { return n_; }
    TripletRole role() const { return role_; }
    bool dense_storage() const { return !values_.empty() || n_ == 0; }

    double value(Index x, Index y, Index z) const;
    void fill_slice(Index x, Index y, std::span<double> out) const;
    // Dense only.
    std::span<const double> slice(Index x, Index y) const { return {values_.data() + (x * n_ + y) * n_, n_}; }
    void set(Index x, Index y, Index z, double v);
    // Dense only; bulk-fill access for constructions. Clears the
    // construction-validated mark like set().
    std::span<double> mutable_slice(Index x, Index y);

    // True when the array was produced by a library construction whose
    // output satisfies properties (a)-(d) by construction; the cohesion
    // kernel skips revalidation of such inputs. Mutating an entry through
    // set() clears the mark.
    bool construction_validated() const { return construction_validated_; }
    void mark_construction_validated() { construction_validated_ = true; }

private:
    Index n_ = 0;
    TripletRole role_ = TripletRole::relevance;
    std::vector<double> values_;
    PointFn point_;
    SliceFn slice_;
    bool construction_validated_ = false;
};

}  // namespace pald
