#include "pald/event.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "pald/error.hpp"
#include "pald/parallel.hpp"
#include "pald/rng.hpp"

namespace pald::event {

double competitiveness(double score_a, double score_b) {
    if (!(score_a >= 0.0) || !(score_b >= 0.0)) {
        throw StructuralError("competitiveness requires nonnegative scores");
    }
    const double total = score_a + score_b;
    if (!(total > 0.0)) throw StructuralError("competitiveness undefined for two zero scores");
    return std::abs(score_a - score_b) / total;
}

namespace {

void check_list(const ValueList& list, const char* which) {
    if (list.empty()) throw StructuralError(std::string(which) + " value list is empty");
    for (const auto& wv : list) {
        if (!std::isfinite(wv.value) || wv.value < 0.0) {
            throw StructuralError(std::string(which) + " has a negative or non-finite value");
        }
        if (!std::isfinite(wv.weight) || wv.weight <= 0.0) {
            throw StructuralError(std::string(which) + " has a nonpositive weight");
        }
    }
}

// Sorted copy; fixes the floating-point summation order of enumerations.
ValueList sorted(const ValueList& list) {
    ValueList out = list;
    std::sort(out.begin(), out.end(), [](const WeightedValue& a, const WeightedValue& b) {
        return a.value < b.value || (a.value == b.value && a.weight < b.weight);
    });
    return out;
}

double total_weight(const ValueList& list) {
    double w = 0.0;
    for (const auto& v : list) w += v.weight;
    return w;
}

// Weighted CDF P(V <= t).
double cdf_leq(const ValueList& sorted_list, double t, double total) {
    double acc = 0.0;
    for (const auto& v : sorted_list) {
        if (v.value > t) break;
        acc += v.weight;
    }
    return acc / total;
}

// P(V < t) and P(V = t).
std::pair<double, double> cdf_lt_eq(const ValueList& sorted_list, double t, double total) {
    double lt = 0.0, eq = 0.0;
    for (const auto& v : sorted_list) {
        if (v.value > t) break;
        if (v.value < t) {
            lt += v.weight;
        } else {
            eq += v.weight;
        }
    }
    return {lt / total, eq / total};
}

struct Sampler {
    const ValueList& list;
    std::vector<double> cumulative;
    double total;

    explicit Sampler(const ValueList& l) : list(l) {
        cumulative.reserve(l.size());
        double acc = 0.0;
        for (const auto& v : l) {
            acc += v.weight;
            cumulative.push_back(acc);
        }
        total = acc;
    }

    double draw(rng::Stream& stream) const {
        const double t = stream.next_double() * total;
        for (std::size_t i = 0; i < cumulative.size(); ++i) {
            if (t < cumulative[i]) return list[i].value;
        }
        return list.back().value;
    }
};

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

TripletProbs exact_triplet(const ValueList& xy, const ValueList& xz, const ValueList& yz,
                           bool independent_draws) {
    const double w_xy = total_weight(xy);
    const double w_xz = total_weight(xz);
    const double w_yz = total_weight(yz);

    // Support: P(V_xz < V_yz) + 1/2 P(V_xz = V_yz).
    double q = 0.0;
    for (const auto& b : xz) {
        for (const auto& c : yz) {
            if (b.value < c.value) {
                q += b.weight * c.weight;
            } else if (b.value == c.value) {
                q += 0.5 * b.weight * c.weight;
            }
        }
    }
    q /= w_xz * w_yz;

    double r = 0.0;
    if (!independent_draws) {
        // One event world: the A_xy draw is shared between both disjuncts.
        for (const auto& a : xy) {
            const double pb = cdf_leq(xz, a.value, w_xz);
            const double pc = cdf_leq(yz, a.value, w_yz);
            r += a.weight * (pb + pc - pb * pc);
        }
        r /= w_xy;
    } else {
        // Fully independent comparisons: each disjunct redraws its pair.
        double p1 = 0.0, p2 = 0.0;
        for (const auto& a : xy) {
            p1 += a.weight * cdf_leq(xz, a.value, w_xz);
            p2 += a.weight * cdf_leq(yz, a.value, w_yz);
        }
        p1 /= w_xy;
        p2 /= w_xy;
        r = 1.0 - (1.0 - p1) * (1.0 - p2);
    }
    // Weighted sums can overshoot a bound by an ulp; the results are
    // probabilities, so pin them to [0, 1].
    return {clamp01(r), clamp01(q)};
}

TripletProbs monte_carlo_triplet(const ValueList& xy, const ValueList& xz, const ValueList& yz,
                                 const EventOptions& opts, const TripleKey& key) {
    const Sampler s_xy(xy), s_xz(xz), s_yz(yz);
    rng::Stream stream(rng::stream_key(opts.seed, key.x, key.y, key.z));

    double r_hits = 0.0;
    double q_hits = 0.0;
    for (std::uint64_t i = 0; i < opts.mc_samples; ++i) {
        const double a = s_xy.draw(stream);
        const double b = s_xz.draw(stream);
        const double c = s_yz.draw(stream);
        if (!opts.independent_draws) {
            if (b <= a || c <= a) r_hits += 1.0;
        } else {
            const double a2 = s_xy.draw(stream);
            if (b <= a || c <= a2) r_hits += 1.0;
        }
        if (b < c) {
            q_hits += 1.0;
        } else if (b == c) {
            q_hits += 0.5;
        }
    }
    const double m = static_cast<double>(opts.mc_samples);
    return {r_hits / m, q_hits / m};
}

const ValueList& self_events() {
    static const ValueList zero{{0.0, 1.0}};
    return zero;
}

}  // namespace

TripletProbs event_triplet(const ValueList& a_xy, const ValueList& a_xz, const ValueList& a_yz,
                           const EventOptions& opts, const TripleKey& key) {
    check_list(a_xy, "A_xy");
    check_list(a_xz, "A_xz");
    check_list(a_yz, "A_yz");
    const ValueList xy = sorted(a_xy);
    const ValueList xz = sorted(a_xz);
    const ValueList yz = sorted(a_yz);

    const std::uint64_t product = static_cast<std::uint64_t>(xy.size()) * xz.size() * yz.size();
    if (product <= opts.exact_limit) return exact_triplet(xy, xz, yz, opts.independent_draws);
    if (opts.mc_samples == 0) throw StructuralError("Monte Carlo sample count must be positive");
    return monte_carlo_triplet(xy, xz, yz, opts, key);
}

EventTable::EventTable(Index n) : n_(n), pairs_(n * (n - 1) / 2) {
    if (n < 2) throw StructuralError("event table requires n >= 2");
}

namespace {
inline std::size_t pair_slot(Index x, Index y) {
    // x < y assumed; triangular index.
    return static_cast<std::size_t>(y) * (y - 1) / 2 + x;
}
}  // namespace

void EventTable::add(Index x, Index y, double value, double weight) {
    if (x >= n_ || y >= n_) throw StructuralError("event pair index out of range");
    if (x == y) throw StructuralError("events for self-pairs are implicit (value 0)");
    if (!std::isfinite(value) || value < 0.0) {
        throw StructuralError("event values must be finite and >= 0");
    }
    if (!std::isfinite(weight) || weight <= 0.0) {
        throw StructuralError("event weights must be finite and > 0");
    }
    if (x > y) std::swap(x, y);
    pairs_[pair_slot(x, y)].push_back({value, weight});
}

const ValueList& EventTable::pair_events(Index x, Index y) const {
    if (x >= n_ || y >= n_) throw StructuralError("event pair index out of range");
    if (x == y) return self_events();
    if (x > y) std::swap(x, y);
    const ValueList& list = pairs_[pair_slot(x, y)];
    if (list.empty()) {
        throw StructuralError("no events for pair (" + std::to_string(x) + "," +
                              std::to_string(y) + ")");
    }
    return list;
}

bool EventTable::pair_present(Index x, Index y) const {
    if (x == y) return true;
    if (x > y) std::swap(x, y);
    return !pairs_[pair_slot(x, y)].empty();
}

std::vector<std::pair<Index, Index>> EventTable::missing_pairs() const {
    std::vector<std::pair<Index, Index>> missing;
    for (Index y = 1; y < n_; ++y) {
        for (Index x = 0; x < y; ++x) {
            if (pairs_[pair_slot(x, y)].empty()) missing.emplace_back(x, y);
        }
    }
    return missing;
}

std::uint64_t EventTable::max_triple_product() const {
    std::uint64_t best = 0;
    for (Index x = 0; x < n_; ++x) {
        for (Index y = x + 1; y < n_; ++y) {
            const std::uint64_t nxy = pairs_[pair_slot(x, y)].size();
            for (Index z = y + 1; z < n_; ++z) {
                const std::uint64_t nxz = pairs_[pair_slot(x, z)].size();
                const std::uint64_t nyz = pairs_[pair_slot(y, z)].size();
                best = std::max(best, nxy * nxz * nyz);
            }
        }
    }
    return best;
}

DissimilarityMatrix induced_distances(const EventTable& table) {
    const Index n = table.size();
    DissimilarityMatrix d(n, 0.0);
    for (Index x = 0; x < n; ++x) {
        for (Index y = x + 1; y < n; ++y) {
            const ValueList& list = table.pair_events(x, y);
            if (list.size() != 1) {
                throw StructuralError("induced distances require singleton event lists");
            }
            d(x, y) = d(y, x) = list.front().value;
        }
    }
    return d;
}

namespace {

// Canonical-orientation evaluation of one array entry. Computing each
// unordered triple once and filling the swapped orientation as (r, 1-q)
// makes properties (b) and (c) hold exactly, under enumeration and Monte
// Carlo alike. Entries with z in {x, y} collapse pairs, so the shared-draw
// semantics resolve them in closed form.
TripletProbs eval_entry(const EventTable& table, const EventOptions& opts, Index x, Index y,
                        Index z) {
    if (x == y) {
        if (z == x) return {1.0, 0.5};
        // Both comparisons involve the single pair {x,z}: one draw b serves
        // both sides, so relevance is P(b <= 0) and support ties at 1/2.
        const ValueList list = sorted(table.pair_events(x, z));
        const double w = total_weight(list);
        return {cdf_leq(list, 0.0, w), 0.5};
    }
    const bool swap = x > y;
    const Index lo = swap ? y : x;
    const Index hi = swap ? x : y;

    TripletProbs canonical;
    if (z == lo || z == hi) {
        // The {lo,z} or {hi,z} pair degenerates to the self value 0 and the
        // other coincides with {lo,hi}; relevance is 1 either way and
        // support reduces to comparing the shared draw against 0.
        const ValueList list = sorted(table.pair_events(lo, hi));
        const double w = total_weight(list);
        const double zero_mass = cdf_lt_eq(list, 0.0, w).second;  // P(a = 0)
        const double support_lo = 1.0 - 0.5 * zero_mass;          // P(0 < a) + P(a = 0)/2
        canonical = {1.0, z == lo ? support_lo : 1.0 - support_lo};
    } else {
        canonical = event_triplet(table.pair_events(lo, hi), table.pair_events(lo, z),
                                  table.pair_events(hi, z), opts,
                                  TripleKey{static_cast<std::uint64_t>(lo),
                                            static_cast<std::uint64_t>(hi),
                                            static_cast<std::uint64_t>(z)});
    }
    if (swap) return {canonical.relevance, 1.0 - canonical.support};
    return canonical;
}

}  // namespace

std::pair<TripletArray, TripletArray> event_arrays(const EventTable& table,
                                                   const EventOptions& opts) {
    const Index n = table.size();
    if (n < 2) throw StructuralError("event arrays require n >= 2");
    const auto missing = table.missing_pairs();
    if (!missing.empty()) {
        throw StructuralError("event table is incomplete: pair (" +
                              std::to_string(missing.front().first) + "," +
                              std::to_string(missing.front().second) + ") has no events");
    }

    if (n <= opts.dense_cap) {
        TripletArray r = TripletArray::dense(n, TripletRole::relevance);
        TripletArray q = TripletArray::dense(n, TripletRole::support);
        // Workers own the canonical first index; orientation (y, x) slices
        // with y > x are written only by the worker owning x, so rows never
        // collide.
        parallel_for(n, opts.jobs, [&](Index begin, Index end) {
            for (Index x = begin; x < end; ++x) {
                auto r_self = r.mutable_slice(x, x);
                auto q_self = q.mutable_slice(x, x);
                for (Index z = 0; z < n; ++z) {
                    const TripletProbs p = eval_entry(table, opts, x, x, z);
                    r_self[z] = p.relevance;
                    q_self[z] = p.support;
                }
                for (Index y = x + 1; y < n; ++y) {
                    auto r_xy = r.mutable_slice(x, y);
                    auto r_yx = r.mutable_slice(y, x);
                    auto q_xy = q.mutable_slice(x, y);
                    auto q_yx = q.mutable_slice(y, x);
                    for (Index z = 0; z < n; ++z) {
                        const TripletProbs p = eval_entry(table, opts, x, y, z);
                        r_xy[z] = r_yx[z] = p.relevance;
                        q_xy[z] = p.support;
                        q_yx[z] = 1.0 - p.support;
                    }
                }
            }
        });
        r.mark_construction_validated();
        q.mark_construction_validated();
        return {std::move(r), std::move(q)};
    }

    auto shared_table = std::make_shared<const EventTable>(table);
    auto shared_opts = std::make_shared<const EventOptions>(opts);
    auto r_point = [shared_table, shared_opts](Index x, Index y, Index z) {
        return eval_entry(*shared_table, *shared_opts, x, y, z).relevance;
    };
    auto q_point = [shared_table, shared_opts](Index x, Index y, Index z) {
        return eval_entry(*shared_table, *shared_opts, x, y, z).support;
    };
    auto r_slice = [shared_table, shared_opts](Index x, Index y, std::span<double> out) {
        for (Index z = 0; z < out.size(); ++z) {
            out[z] = eval_entry(*shared_table, *shared_opts, x, y, z).relevance;
        }
    };
    auto q_slice = [shared_table, shared_opts](Index x, Index y, std::span<double> out) {
        for (Index z = 0; z < out.size(); ++z) {
            out[z] = eval_entry(*shared_table, *shared_opts, x, y, z).support;
        }
    };
    TripletArray r = TripletArray::lazy(n, TripletRole::relevance, r_point, r_slice);
    TripletArray q = TripletArray::lazy(n, TripletRole::support, q_point, q_slice);
    r.mark_construction_validated();
    q.mark_construction_validated();
    return {std::move(r), std::move(q)};
}

}  // namespace pald::event
