#include <doctest.h>

#include <cmath>
#include <vector>

#include "pald/classical.hpp"
#include "pald/core.hpp"
#include "pald/error.hpp"
#include "pald/structure.hpp"

using namespace pald;
using structure::generate_separated_instance;
using structure::SeparatedInstanceOptions;

namespace {

struct IndicatorPair {
    TripletArray r, q;
};

IndicatorPair arrays_for(const std::vector<double>& values) {
    const auto d = classical::distances_from_values_1d(values);
    return {classical::relevance_from_distances(d), classical::support_from_distances(d)};
}

}  // namespace

TEST_CASE("well separated clusters are mutually sufficiently separated") {
    const auto [r, q] = arrays_for({0.0, 1.0, 100.0, 101.0});
    const std::vector<Index> a{0, 1}, b{2, 3};
    CHECK(structure::is_mutually_separated(r, q, a, b));
}

TEST_CASE("adjacent points break separation with a counterexample") {
    const auto [r, q] = arrays_for({0.0, 1.0, 2.0, 3.0});
    const std::vector<Index> a{0, 1}, b{2, 3};
    const auto res = structure::is_sufficiently_separated(r, q, a, b);
    REQUIRE(!res.holds);
    CHECK(res.condition == "R(c,c*,d)=0");
    CHECK(res.i == 0);
    CHECK(res.j == 1);
    CHECK(res.k == 2);
    CHECK(res.value == 1.0);
}

TEST_CASE("predicates reject malformed sets") {
    const auto [r, q] = arrays_for({0.0, 1.0, 100.0});
    const std::vector<Index> a{0, 1}, empty{}, overlapping{1, 2};
    CHECK_THROWS_AS(structure::is_sufficiently_separated(r, q, a, empty), StructuralError);
    CHECK_THROWS_AS(structure::is_sufficiently_separated(r, q, a, overlapping), StructuralError);
    CHECK_THROWS_AS(structure::is_concentrated(r, q, a, overlapping), StructuralError);
}

TEST_CASE("concentration: singleton B reduces to the support condition") {
    const auto [r, q] = arrays_for({0.0, 1.0, 100.0});
    const std::vector<Index> a{0, 1}, b{2};
    CHECK(structure::is_concentrated(r, q, a, b));
}

TEST_CASE("concentration fails when relevance varies over B") {
    // The tight pair {1.9, 2.1} straddles the focus boundary of (0,1): both
    // B points keep supporting each other against A (Q condition holds) but
    // R(0,1,.) differs across them.
    const auto [r, q] = arrays_for({0.0, 1.0, 1.9, 2.1});
    const std::vector<Index> a{0, 1}, b{2, 3};
    const auto res = structure::is_concentrated(r, q, a, b);
    REQUIRE(!res.holds);
    CHECK(res.condition == "R(a,a*,b) constant over B");
    CHECK(res.value == 1.0);  // spread between the two indicator values
}

TEST_CASE("coincident far B is concentrated") {
    const auto inst = generate_separated_instance(3, 4, 100.0, 11, {1.0, true, -1.0});
    const auto r = classical::relevance_from_distances(inst.d);
    const auto q = classical::support_from_distances(inst.d);
    CHECK(structure::is_concentrated(r, q, inst.partition.a, inst.partition.b));
    CHECK(structure::is_sufficiently_separated(r, q, inst.partition.b, inst.partition.a));
}

TEST_CASE("ordinal structure: identity and scaled copies") {
    const auto [r, q] = arrays_for({0.0, 1.0, 3.0, 10000.0, 10100.0, 10300.0});
    const std::vector<Index> a{0, 1, 2}, scaled{3, 4, 5};
    CHECK(structure::equivalent_ordinal_structure(r, q, a, a));
    CHECK(structure::equivalent_ordinal_structure(r, q, a, scaled));

    const auto [r2, q2] = arrays_for({0.0, 1.0, 3.0, 100.0, 102.0, 103.0});
    const auto res = structure::equivalent_ordinal_structure(r2, q2, a, scaled);
    CHECK(!res.holds);

    CHECK_THROWS_AS(structure::equivalent_ordinal_structure(r, q, a, std::vector<Index>{0, 1}),
                    StructuralError);
}

TEST_CASE("generator basics") {
    CHECK_THROWS_AS(generate_separated_instance(0, 3, 100.0, 1), StructuralError);
    const auto inst = generate_separated_instance(2, 2, 100.0, 5);
    CHECK(inst.points.size() == 4);
    const auto r = classical::relevance_from_distances(inst.d);
    const auto q = classical::support_from_distances(inst.d);
    CHECK(structure::is_mutually_separated(r, q, inst.partition.a, inst.partition.b));

    // Theorem 3 setting with a singleton B.
    const auto single = generate_separated_instance(4, 1, 100.0, 6);
    const auto r1 = classical::relevance_from_distances(single.d);
    const auto q1 = classical::support_from_distances(single.d);
    CHECK(structure::is_concentrated(r1, q1, single.partition.a, single.partition.b));
}

TEST_CASE("separated instances have exactly zero cross-set cohesion") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Index m_a = 1 + seed % 4;
        const Index m_b = 1 + (seed / 2) % 4;
        const auto inst = generate_separated_instance(m_a, m_b, 100.0, 100 + seed);
        const auto c = classical::classical_cohesion(inst.d);
        for (Index a : inst.partition.a) {
            for (Index b : inst.partition.b) {
                CHECK(c(a, b) == 0.0);
                CHECK(c(b, a) == 0.0);
            }
        }
    }
}

TEST_CASE("density is irrelevant under separation") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        SeparatedInstanceOptions unit{1.0, false, 1e6};
        SeparatedInstanceOptions wide{100.0, false, 1e6};
        const auto s1 = generate_separated_instance(4, 3, 100.0, 50 + seed, unit);
        const auto s2 = generate_separated_instance(4, 3, 100.0, 50 + seed, wide);
        // Same draws, same B block; A' is the scaled copy of A.
        for (Index i = 0; i < 3; ++i) {
            CHECK(s1.points[4 + i] == s2.points[4 + i]);
        }
        for (Index i = 0; i < 4; ++i) {
            CHECK(s2.points[i] == doctest::Approx(100.0 * s1.points[i]).epsilon(1e-15));
        }
        const auto c1 = classical::classical_cohesion(s1.d);
        const auto c2 = classical::classical_cohesion(s2.d);
        for (Index i : s1.partition.a) {
            for (Index j : s1.partition.a) {
                CHECK(std::abs(c1(i, j) - c2(i, j)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("concentrated B keeps cohesion below 1/|B| and dissipates") {
    double prev_max = 1.0;
    for (const Index k : {2u, 4u, 8u, 16u, 32u, 64u}) {
        SeparatedInstanceOptions opts{1.0, true, 0.45};
        const auto inst = generate_separated_instance(3, k, 1.0, 7, opts);
        const auto r = classical::relevance_from_distances(inst.d);
        const auto q = classical::support_from_distances(inst.d);
        REQUIRE(structure::is_sufficiently_separated(r, q, inst.partition.b, inst.partition.a));
        REQUIRE(structure::is_concentrated(r, q, inst.partition.a, inst.partition.b));

        const auto c = cohesion(r, q);
        double max_ab = 0.0;
        for (Index a : inst.partition.a) {
            for (Index b : inst.partition.b) max_ab = std::max(max_ab, c(a, b));
        }
        CHECK(max_ab <= 1.0 / static_cast<double>(k) + 1e-15);
        CHECK(max_ab <= prev_max + 1e-15);
        prev_max = max_ab;
    }
}
