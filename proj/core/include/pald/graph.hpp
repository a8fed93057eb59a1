#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pald/matrix.hpp"

namespace pald::graph {

struct Edge {
    Index a, b;  // a < b
    double weight;
};

// Undirected network of mutual cohesion: edges are the pairs whose mutual
// cohesion strictly exceeds the threshold. No self-loops, no duplicates.
struct CohesionGraph {
    std::vector<std::string> labels;
    std::vector<Edge> edges;  // sorted by (a, b)
    double threshold = 0.0;
    std::vector<double> node_values;  // optional per-node shading values; empty = none
};

// Entry (x, y) = min(C(x,y), C(y,x)), diagonal zeroed.
CohesionMatrix mutual_cohesion(const CohesionMatrix& c);

struct ThresholdSpec {
    static ThresholdSpec automatic() { return {}; }
    static ThresholdSpec value(double v);

    bool is_auto = true;
    double explicit_value = 0.0;
};

// Build the strong-tie graph. `automatic` uses threshold_bound(c); ties are
// kept when mutual cohesion is strictly greater than the threshold.
CohesionGraph strong_graph(const CohesionMatrix& c, std::vector<std::string> labels,
                           const ThresholdSpec& threshold = ThresholdSpec::automatic(),
                           std::vector<double> node_values = {});

using Point2 = std::array<double, 2>;

struct LayoutOptions {
    std::uint64_t seed = 0;
    int iterations = 200;
};

// Force-directed layout (Fruchterman-Reingold). Deterministic given the
// seed: fixed initial placement, fixed iteration order, single-threaded.
// Edge attraction scales with weight; isolated nodes are placed on an outer
// ring around the connected part. A single node lands at the origin.
std::vector<Point2> layout(const CohesionGraph& g, const LayoutOptions& opts = {});

enum class ExportFormat { dot, graphml, json, edge_csv, svg };

// Accepts "dot", "graphml", "json", "edge-csv", "svg".
ExportFormat parse_format(std::string_view name);
std::string_view format_name(ExportFormat format);

// Writes the graph. svg requires coordinates. Numeric fields are rendered
// with 12 significant digits, except in JSON, which keeps exact doubles so
// that export/ingest round-trips are lossless.
void export_graph(const CohesionGraph& g, ExportFormat format, std::ostream& out,
                  const std::vector<Point2>* coordinates = nullptr);
std::string export_string(const CohesionGraph& g, ExportFormat format,
                          const std::vector<Point2>* coordinates = nullptr);

CohesionGraph ingest_edge_csv(std::istream& in);
CohesionGraph ingest_json(std::istream& in);

// Jaccard similarity of the two strong-tie edge sets (matched by label
// pairs, weights ignored); 1 when both are empty. Diagnostic for comparing
// networks across fusion weights.
double edge_jaccard(const CohesionGraph& g1, const CohesionGraph& g2);

}  // namespace pald::graph
