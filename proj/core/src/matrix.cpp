#include "pald/matrix.hpp"

#include <cmath>
#include <string>

#include "pald/error.hpp"

namespace pald {

void DissimilarityMatrix::check_finite() const {
    for (Index x = 0; x < n_; ++x) {
        for (Index y = 0; y < n_; ++y) {
            if (!std::isfinite((*this)(x, y))) {
                throw StructuralError("dissimilarity (" + std::to_string(x) + "," +
                                      std::to_string(y) + ") is not finite");
            }
        }
    }
}

double CohesionMatrix::total() const {
    double sum = 0.0;
    for (double v : c_) sum += v;
    return sum;
}

}  // namespace pald
