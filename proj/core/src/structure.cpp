#include "pald/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "pald/classical.hpp"
#include "pald/error.hpp"
#include "pald/rng.hpp"

namespace pald::structure {

std::string PredicateResult::describe() const {
    if (holds) return "holds";
    std::ostringstream out;
    out << "violated " << condition << " at (" << i << "," << j << "," << k << ") value "
        << value;
    return out.str();
}

namespace {

void check_sets(const TripletArray& r, const TripletArray& q, std::span<const Index> a,
                std::span<const Index> b, bool require_disjoint) {
    if (r.size() != q.size()) throw StructuralError("array dimension mismatch");
    if (a.empty() || b.empty()) throw StructuralError("index sets must be nonempty");
    const Index n = r.size();
    std::unordered_set<Index> seen;
    for (Index i : a) {
        if (i >= n) throw StructuralError("index set A out of range");
        seen.insert(i);
    }
    for (Index i : b) {
        if (i >= n) throw StructuralError("index set B out of range");
        if (require_disjoint && seen.count(i)) {
            throw StructuralError("index sets must be disjoint");
        }
    }
}

PredicateResult fail(const char* condition, Index i, Index j, Index k, double value) {
    PredicateResult res;
    res.holds = false;
    res.condition = condition;
    res.i = i;
    res.j = j;
    res.k = k;
    res.value = value;
    return res;
}

}  // namespace

PredicateResult is_sufficiently_separated(const TripletArray& relevance,
                                          const TripletArray& support, std::span<const Index> a,
                                          std::span<const Index> b, double tol) {
    check_sets(relevance, support, a, b, true);
    for (Index c : a) {
        for (Index cs : a) {
            for (Index d : b) {
                const double r1 = relevance.value(c, d, cs);
                if (std::abs(r1 - 1.0) > tol) return fail("R(c,d,c*)=1", c, d, cs, r1);
                const double r0 = relevance.value(c, cs, d);
                if (std::abs(r0) > tol) return fail("R(c,c*,d)=0", c, cs, d, r0);
                const double q1 = support.value(c, d, cs);
                if (std::abs(q1 - 1.0) > tol) return fail("Q(c,d,c*)=1", c, d, cs, q1);
            }
        }
    }
    return {};
}

PredicateResult is_mutually_separated(const TripletArray& relevance, const TripletArray& support,
                                      std::span<const Index> a, std::span<const Index> b,
                                      double tol) {
    PredicateResult forward = is_sufficiently_separated(relevance, support, a, b, tol);
    if (!forward) return forward;
    return is_sufficiently_separated(relevance, support, b, a, tol);
}

PredicateResult is_concentrated(const TripletArray& relevance, const TripletArray& support,
                                std::span<const Index> a, std::span<const Index> b, double tol) {
    check_sets(relevance, support, a, b, true);
    for (Index x : a) {
        for (Index bb : b) {
            for (Index bs : b) {
                const double q = support.value(x, bb, bs);
                if (std::abs(q) > tol) return fail("Q(a,b,b*)=0", x, bb, bs, q);
            }
        }
    }
    // Constancy of R(a,a*,.) over B is the existence of the per-pair common
    // value f(a,a*); spread within tol operationalizes it.
    for (Index x : a) {
        for (Index xs : a) {
            double lo = 2.0, hi = -1.0;
            Index hi_b = 0;
            for (Index bb : b) {
                const double r = relevance.value(x, xs, bb);
                lo = std::min(lo, r);
                if (r > hi) {
                    hi = r;
                    hi_b = bb;
                }
            }
            if (hi - lo > tol) {
                PredicateResult res = fail("R(a,a*,b) constant over B", x, xs, hi_b, hi);
                res.value = hi - lo;
                return res;
            }
        }
    }
    return {};
}

PredicateResult equivalent_ordinal_structure(const TripletArray& relevance,
                                             const TripletArray& support,
                                             std::span<const Index> a, std::span<const Index> b,
                                             double tol) {
    if (relevance.size() != support.size()) throw StructuralError("array dimension mismatch");
    if (a.size() != b.size()) throw StructuralError("correspondence lists must match in length");
    if (a.empty()) throw StructuralError("correspondence lists must be nonempty");
    const Index n = relevance.size();
    for (Index i : a) {
        if (i >= n) throw StructuralError("index list A out of range");
    }
    for (Index i : b) {
        if (i >= n) throw StructuralError("index list B out of range");
    }

    const std::size_t m = a.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                const double ra = relevance.value(a[i], a[j], a[k]);
                const double rb = relevance.value(b[i], b[j], b[k]);
                if (std::abs(ra - rb) > tol) {
                    PredicateResult res = fail("R entries agree", a[i], a[j], a[k], ra);
                    return res;
                }
                const double qa = support.value(a[i], a[j], a[k]);
                const double qb = support.value(b[i], b[j], b[k]);
                if (std::abs(qa - qb) > tol) {
                    PredicateResult res = fail("Q entries agree", a[i], a[j], a[k], qa);
                    return res;
                }
            }
        }
    }
    return {};
}

SeparatedInstance generate_separated_instance(Index m_a, Index m_b, double gap,
                                              std::uint64_t seed,
                                              const SeparatedInstanceOptions& opts) {
    if (m_a < 1 || m_b < 1) throw StructuralError("cluster sizes must be >= 1");
    if (!(gap > 0.0)) throw StructuralError("gap must be positive");
    if (!(opts.scale_a > 0.0)) throw StructuralError("scale_a must be positive");

    // Keyed on the seed alone: instances that share a seed and m_a draw the
    // same A cluster regardless of m_b, so growing B keeps A fixed.
    rng::Stream stream(rng::stream_key(seed));
    const double b_offset = opts.b_offset >= 0.0 ? opts.b_offset : opts.scale_a + gap;

    SeparatedInstance inst;
    inst.points.reserve(m_a + m_b);
    for (Index i = 0; i < m_a; ++i) {
        inst.points.push_back(opts.scale_a * stream.next_double());
        inst.partition.a.push_back(i);
    }
    for (Index i = 0; i < m_b; ++i) {
        const double u = opts.coincident_b ? 0.0 : stream.next_double();
        inst.points.push_back(b_offset + u);
        inst.partition.b.push_back(m_a + i);
    }
    inst.d = classical::distances_from_values_1d(inst.points);
    return inst;
}

}  // namespace pald::structure
