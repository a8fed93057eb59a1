#pragma once

// Seeded instance generators shared by the unit and acceptance suites.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "pald/event.hpp"
#include "pald/matrix.hpp"
#include "pald/rng.hpp"
#include "pald/triplet_array.hpp"

#include "oracle.hpp"

namespace testsupport {

// Random arrays satisfying properties (a)-(d): entries drawn uniformly,
// then symmetrized (b), complemented (c) and pinned (d). With
// proper_self_support the z in {x, y} support entries are pinned to the
// values every library construction produces generically (an element fully
// supports itself and never its opponent); the strong-tie inequality is
// guaranteed only for such arrays.
inline std::pair<pald::TripletArray, pald::TripletArray> random_valid_arrays(
    pald::Index n, std::uint64_t seed, bool proper_self_support = false) {
    pald::rng::Stream stream(pald::rng::stream_key(seed, n));
    auto r = pald::TripletArray::dense(n, pald::TripletRole::relevance);
    auto q = pald::TripletArray::dense(n, pald::TripletRole::support);

    for (pald::Index x = 0; x < n; ++x) {
        for (pald::Index z = 0; z < n; ++z) {
            r.set(x, x, z, z == x ? 1.0 : stream.next_double());
            q.set(x, x, z, 0.5);
        }
        for (pald::Index y = x + 1; y < n; ++y) {
            for (pald::Index z = 0; z < n; ++z) {
                const double rv = stream.next_double();
                r.set(x, y, z, rv);
                r.set(y, x, z, rv);
                const double qv = stream.next_double();
                q.set(x, y, z, qv);
                q.set(y, x, z, 1.0 - qv);
            }
            r.set(x, y, x, 1.0);
            r.set(x, y, y, 1.0);
            r.set(y, x, x, 1.0);
            r.set(y, x, y, 1.0);
            if (proper_self_support) {
                q.set(x, y, x, 1.0);
                q.set(y, x, x, 0.0);
                q.set(x, y, y, 0.0);
                q.set(y, x, y, 1.0);
            }
        }
    }
    return {std::move(r), std::move(q)};
}

// Integer-coordinate point set together with its squared-distance matrix in
// both exact (int64) and double form. Squared Euclidean distances over small
// integer coordinates are exactly representable, so the library kernel and
// the rational oracle see identical comparisons.
struct IntPointInstance {
    std::vector<std::array<std::int64_t, 2>> points;
    IntMatrix exact;
    pald::DissimilarityMatrix d;
};

inline IntPointInstance random_int_points(pald::Index n, std::uint64_t seed,
                                          std::int64_t coord_range = 20,
                                          bool distinct = false) {
    pald::rng::Stream stream(pald::rng::stream_key(seed, n, 7));
    IntPointInstance inst;
    inst.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& p = inst.points[i];
        for (;;) {
            p[0] = static_cast<std::int64_t>(stream.next_below(coord_range));
            p[1] = static_cast<std::int64_t>(stream.next_below(coord_range));
            if (!distinct) break;
            bool duplicate = false;
            for (std::size_t j = 0; j < i; ++j) duplicate = duplicate || inst.points[j] == p;
            if (!duplicate) break;
        }
    }
    inst.exact.assign(n, std::vector<std::int64_t>(n, 0));
    inst.d = pald::DissimilarityMatrix(n);
    for (pald::Index x = 0; x < n; ++x) {
        for (pald::Index y = 0; y < n; ++y) {
            const std::int64_t dx = inst.points[x][0] - inst.points[y][0];
            const std::int64_t dy = inst.points[x][1] - inst.points[y][1];
            inst.exact[x][y] = dx * dx + dy * dy;
            inst.d(x, y) = static_cast<double>(inst.exact[x][y]);
        }
    }
    return inst;
}

// Random complete event table with 1..max_events values per pair.
inline pald::event::EventTable random_event_table(pald::Index n, std::uint64_t seed,
                                                  std::size_t max_events = 3) {
    pald::rng::Stream stream(pald::rng::stream_key(seed, n, 11));
    pald::event::EventTable table(n);
    for (pald::Index x = 0; x < n; ++x) {
        for (pald::Index y = x + 1; y < n; ++y) {
            const std::size_t count = 1 + stream.next_below(max_events);
            for (std::size_t k = 0; k < count; ++k) {
                table.add(x, y, 0.05 + stream.next_double(), 0.5 + stream.next_double());
            }
        }
    }
    return table;
}

}  // namespace testsupport
