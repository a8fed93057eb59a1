#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "pald/classical.hpp"
#include "pald/core.hpp"
#include "pald/error.hpp"
#include "pald/graph.hpp"
#include "pald/rng.hpp"

using namespace pald;
using graph::CohesionGraph;
using graph::ThresholdSpec;

namespace {

CohesionMatrix line_cohesion() {
    return classical::classical_cohesion(
        classical::distances_from_values_1d(std::vector<double>{0.0, 1.0, 3.0}));
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("mutual cohesion takes the pairwise minimum and zeroes the diagonal") {
    const auto m = graph::mutual_cohesion(line_cohesion());
    CHECK(m(0, 1) == doctest::Approx(1.0 / 6).epsilon(1e-13));
    CHECK(m(1, 0) == m(0, 1));
    CHECK(m(0, 2) == 0.0);
    CHECK(m(1, 2) == 0.0);
    for (Index i = 0; i < 3; ++i) CHECK(m(i, i) == 0.0);

    CohesionMatrix c(2);
    c(0, 1) = 0.2;
    c(1, 0) = 0.05;
    const auto m2 = graph::mutual_cohesion(c);
    CHECK(m2(0, 1) == 0.05);
    CHECK(m2(1, 0) == 0.05);
}

TEST_CASE("strong graph with the automatic threshold") {
    const auto c = line_cohesion();
    const auto g = graph::strong_graph(c, {"a", "b", "c"});
    CHECK(g.threshold == doctest::Approx(7.0 / 36).epsilon(1e-13));
    CHECK(g.edges.empty());  // 1/6 < 7/36

    const auto g0 = graph::strong_graph(c, {"a", "b", "c"}, ThresholdSpec::value(0.0));
    REQUIRE(g0.edges.size() == 1);
    CHECK(g0.edges[0].a == 0);
    CHECK(g0.edges[0].b == 1);
    CHECK(g0.edges[0].weight == doctest::Approx(1.0 / 6).epsilon(1e-13));

    DissimilarityMatrix equi(3, 1.0);
    for (Index i = 0; i < 3; ++i) equi(i, i) = 0.0;
    const auto g_equi = graph::strong_graph(classical::classical_cohesion(equi), {"x", "y", "z"});
    CHECK(g_equi.edges.empty());  // 1/12 < 1/6

    CHECK_THROWS_AS(ThresholdSpec::value(-0.1), StructuralError);
    CHECK_THROWS_AS(graph::strong_graph(c, {"a", "b"}), StructuralError);
}

TEST_CASE("raising the threshold never adds edges") {
    pald::rng::Stream stream(pald::rng::stream_key(31));
    std::vector<double> pts(12);
    for (double& p : pts) p = stream.next_double() * 4.0;
    const auto c = classical::classical_cohesion(classical::distances_from_values_1d(pts));
    std::vector<std::string> labels;
    for (Index i = 0; i < 12; ++i) labels.push_back("n" + std::to_string(i));

    std::size_t prev = graph::strong_graph(c, labels, ThresholdSpec::value(0.0)).edges.size();
    for (double t = 0.005; t <= 0.2; t += 0.005) {
        const auto g = graph::strong_graph(c, labels, ThresholdSpec::value(t));
        CHECK(g.edges.size() <= prev);
        prev = g.edges.size();
    }
}

TEST_CASE("layout is deterministic and separates clusters") {
    CohesionGraph single;
    single.labels = {"only"};
    const auto solo = graph::layout(single);
    CHECK(solo[0][0] == 0.0);
    CHECK(solo[0][1] == 0.0);

    CohesionGraph g;
    g.labels = {"a0", "a1", "a2", "b0", "b1", "b2"};
    g.edges = {{0, 1, 0.2}, {0, 2, 0.2}, {1, 2, 0.2}, {3, 4, 0.2}, {3, 5, 0.2}, {4, 5, 0.2}};
    const auto p1 = graph::layout(g, {3, 300});
    const auto p2 = graph::layout(g, {3, 300});
    REQUIRE(p1.size() == 6);
    for (Index i = 0; i < 6; ++i) {
        CHECK(p1[i][0] == p2[i][0]);
        CHECK(p1[i][1] == p2[i][1]);
    }

    const auto dist = [&](Index i, Index j) {
        return std::hypot(p1[i][0] - p1[j][0], p1[i][1] - p1[j][1]);
    };
    const double intra = (dist(0, 1) + dist(0, 2) + dist(1, 2) + dist(3, 4) + dist(3, 5) +
                          dist(4, 5)) /
                         6.0;
    double inter = 0.0;
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 3; j < 6; ++j) inter += dist(i, j);
    }
    inter /= 9.0;
    CHECK(inter > intra);
}

TEST_CASE("isolated nodes land on an outer ring") {
    CohesionGraph g;
    g.labels = {"a", "b", "lonely1", "lonely2"};
    g.edges = {{0, 1, 0.3}};
    const auto p = graph::layout(g, {9, 100});
    const double core_r = std::max(std::hypot(p[0][0], p[0][1]), std::hypot(p[1][0], p[1][1]));
    for (Index i = 2; i < 4; ++i) {
        CHECK(std::hypot(p[i][0], p[i][1]) > core_r);
    }
}

TEST_CASE("empty graphs export with all nodes and no edges") {
    const auto g = graph::strong_graph(line_cohesion(), {"a", "b", "c"});
    REQUIRE(g.edges.empty());
    const std::string dot = graph::export_string(g, graph::ExportFormat::dot);
    CHECK(count_occurrences(dot, "\"a\"") == 1);
    CHECK(count_occurrences(dot, " -- ") == 0);
    const std::string gml = graph::export_string(g, graph::ExportFormat::graphml);
    CHECK(count_occurrences(gml, "<node") == 3);
    CHECK(count_occurrences(gml, "<edge") == 0);
    const std::string csv = graph::export_string(g, graph::ExportFormat::edge_csv);
    CHECK(count_occurrences(csv, "# node ") == 3);
}

TEST_CASE("dot export writes one weighted statement per edge") {
    CohesionGraph g;
    g.labels = {"a", "b", "c"};
    g.threshold = 0.01;
    g.edges = {{0, 1, 0.125}, {1, 2, 0.0625}};
    const std::string dot = graph::export_string(g, graph::ExportFormat::dot);
    CHECK(count_occurrences(dot, " -- ") == 2);
    CHECK(count_occurrences(dot, "weight=") == 2);
    CHECK(dot.find("\"a\" -- \"b\" [weight=0.125") != std::string::npos);
    // Edge width metadata stays proportional to mutual cohesion.
    CHECK(dot.find("penwidth=5") != std::string::npos);    // 0.125 * 40
    CHECK(dot.find("penwidth=2.5") != std::string::npos);  // 0.0625 * 40
}

TEST_CASE("json export round-trips exactly") {
    CohesionGraph g;
    g.labels = {"a", "b", "c", "d"};
    g.threshold = 0.19444444444444442;
    g.edges = {{0, 1, 1.0 / 6.0}, {2, 3, 0.07777777777777777}};
    g.node_values = {0.034122, -0.04019, 0.0, 1.25};

    const std::string json = graph::export_string(g, graph::ExportFormat::json);
    std::istringstream in(json);
    const CohesionGraph back = graph::ingest_json(in);
    CHECK(back.labels == g.labels);
    CHECK(back.threshold == g.threshold);
    REQUIRE(back.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(back.edges[i].a == g.edges[i].a);
        CHECK(back.edges[i].b == g.edges[i].b);
        CHECK(back.edges[i].weight == g.edges[i].weight);
    }
    CHECK(back.node_values == g.node_values);
}

TEST_CASE("edge-csv export is self-consistent under re-ingestion") {
    CohesionGraph g;
    g.labels = {"a", "b", "c", "isolated"};
    g.threshold = 7.0 / 36.0;
    g.edges = {{0, 1, 1.0 / 6.0}, {0, 2, 0.1234567890123}};
    g.node_values = {0.5, 0.25, -1.0, 0.0};

    const std::string csv = graph::export_string(g, graph::ExportFormat::edge_csv);
    std::istringstream in(csv);
    const CohesionGraph back = graph::ingest_edge_csv(in);
    CHECK(back.labels == g.labels);  // isolated nodes survive via node records
    CHECK(back.threshold == g.threshold);
    CHECK(back.node_values == g.node_values);
    REQUIRE(back.edges.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.edges[i].a == g.edges[i].a);
        CHECK(back.edges[i].b == g.edges[i].b);
        // Tabular weights carry 12 significant digits.
        CHECK(back.edges[i].weight ==
              doctest::Approx(g.edges[i].weight).epsilon(1e-11));
    }
    // A second generation is byte-identical: the format is a fixed point.
    const std::string csv2 = graph::export_string(back, graph::ExportFormat::edge_csv);
    CHECK(csv2 == csv);
}

TEST_CASE("svg export requires a layout and shades nodes") {
    CohesionGraph g;
    g.labels = {"hot", "cold"};
    g.threshold = 0.0;
    g.edges = {{0, 1, 0.2}};
    g.node_values = {1.0, 0.0};
    CHECK_THROWS_AS(graph::export_string(g, graph::ExportFormat::svg), StructuralError);
    const auto coords = graph::layout(g, {1, 50});
    const std::string svg = graph::export_string(g, graph::ExportFormat::svg, &coords);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(count_occurrences(svg, "<circle") == 2);
    CHECK(svg.find("stroke-width=\"8\"") != std::string::npos);  // 0.2 * 40
    CHECK(svg.find("#e53935") != std::string::npos);             // high end of the ramp
    CHECK(svg.find("#ffd54f") != std::string::npos);             // low end of the ramp
}

TEST_CASE("unknown formats and bad labels are rejected") {
    CHECK_THROWS_AS(graph::parse_format("gif"), ConfigError);
    CHECK(graph::parse_format("edge-csv") == graph::ExportFormat::edge_csv);
    CohesionGraph g;
    g.labels = {"has space"};
    CHECK_THROWS_AS(graph::export_string(g, graph::ExportFormat::dot), StructuralError);
}

TEST_CASE("edge jaccard compares strong-tie sets by label") {
    CohesionGraph g1, g2;
    g1.labels = {"a", "b", "c"};
    g2.labels = {"c", "b", "a"};
    CHECK(graph::edge_jaccard(g1, g2) == 1.0);  // both empty
    g1.edges = {{0, 1, 0.5}, {1, 2, 0.5}};      // a-b, b-c
    g2.edges = {{1, 2, 0.5}};                   // b-a
    CHECK(graph::edge_jaccard(g1, g2) == 0.5);
}
