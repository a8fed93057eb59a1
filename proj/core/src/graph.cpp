#include "pald/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pald/core.hpp"
#include "pald/error.hpp"
#include "pald/rng.hpp"

namespace pald::graph {

namespace {

// Fixed edge-width proportionality constant shared by the DOT and SVG
// writers: width_px = kWidthPerCohesion * mutual_cohesion.
constexpr double kWidthPerCohesion = 40.0;

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt12(double v) { return fmt(v, "%.12g"); }
std::string fmt_full(double v) { return fmt(v, "%.17g"); }

void check_label(const std::string& label) {
    if (label.empty()) throw StructuralError("node labels must be nonempty");
    for (char ch : label) {
        if (ch == ',' || ch == '"' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            throw StructuralError("node label '" + label + "' contains a reserved character");
        }
    }
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

CohesionMatrix mutual_cohesion(const CohesionMatrix& c) {
    const Index n = c.size();
    CohesionMatrix m(n, 0.0);
    for (Index x = 0; x < n; ++x) {
        for (Index y = x + 1; y < n; ++y) {
            const double v = std::min(c(x, y), c(y, x));
            m(x, y) = m(y, x) = v;
        }
    }
    return m;
}

ThresholdSpec ThresholdSpec::value(double v) {
    if (v < 0.0 || !std::isfinite(v)) {
        throw StructuralError("explicit threshold must be finite and >= 0");
    }
    ThresholdSpec spec;
    spec.is_auto = false;
    spec.explicit_value = v;
    return spec;
}

CohesionGraph strong_graph(const CohesionMatrix& c, std::vector<std::string> labels,
                           const ThresholdSpec& threshold, std::vector<double> node_values) {
    const Index n = c.size();
    if (labels.size() != n) {
        throw StructuralError("label count " + std::to_string(labels.size()) +
                              " does not match matrix size " + std::to_string(n));
    }
    if (!node_values.empty() && node_values.size() != n) {
        throw StructuralError("node value count does not match matrix size");
    }
    for (const auto& label : labels) check_label(label);

    CohesionGraph g;
    g.labels = std::move(labels);
    g.node_values = std::move(node_values);
    g.threshold = threshold.is_auto ? threshold_bound(c) : threshold.explicit_value;

    const CohesionMatrix m = mutual_cohesion(c);
    for (Index x = 0; x < n; ++x) {
        for (Index y = x + 1; y < n; ++y) {
            if (m(x, y) > g.threshold) g.edges.push_back({x, y, m(x, y)});
        }
    }
    return g;
}

std::vector<Point2> layout(const CohesionGraph& g, const LayoutOptions& opts) {
    const Index n = g.labels.size();
    std::vector<Point2> pos(n, {0.0, 0.0});
    if (n == 0) return pos;
    if (n == 1) return pos;  // single node at the origin
    if (opts.iterations < 1) throw StructuralError("layout iterations must be >= 1");

    std::vector<char> active(n, 0);
    for (const Edge& e : g.edges) {
        active[e.a] = 1;
        active[e.b] = 1;
    }
    std::vector<Index> core_nodes, ring_nodes;
    for (Index i = 0; i < n; ++i) (active[i] ? core_nodes : ring_nodes).push_back(i);
    // A graph with no edges is all ring; lay the ring around the origin.
    rng::Stream stream(rng::stream_key(opts.seed, n, g.edges.size()));

    double max_radius = 0.0;
    if (!core_nodes.empty()) {
        const Index m = core_nodes.size();
        std::vector<Point2> p(m);
        for (Index i = 0; i < m; ++i) {
            p[i] = {stream.next_double(), stream.next_double()};
        }
        double w_max = 0.0;
        for (const Edge& e : g.edges) w_max = std::max(w_max, e.weight);

        std::vector<Index> local(n, 0);
        for (Index i = 0; i < m; ++i) local[core_nodes[i]] = i;

        const double k = std::sqrt(1.0 / static_cast<double>(m));
        std::vector<Point2> disp(m);
        for (int iter = 0; iter < opts.iterations; ++iter) {
            const double t =
                0.1 * (1.0 - static_cast<double>(iter) / static_cast<double>(opts.iterations)) +
                1e-4;
            for (auto& d : disp) d = {0.0, 0.0};
            for (Index i = 0; i < m; ++i) {
                for (Index j = i + 1; j < m; ++j) {
                    double dx = p[i][0] - p[j][0];
                    double dy = p[i][1] - p[j][1];
                    double dist = std::sqrt(dx * dx + dy * dy);
                    if (dist < 1e-9) {
                        // Deterministic nudge for coincident nodes.
                        dx = 1e-6 * static_cast<double>(i + 1);
                        dy = 1e-6 * static_cast<double>(j + 1);
                        dist = std::sqrt(dx * dx + dy * dy);
                    }
                    const double f = (k * k / dist) / dist;
                    disp[i][0] += dx * f;
                    disp[i][1] += dy * f;
                    disp[j][0] -= dx * f;
                    disp[j][1] -= dy * f;
                }
            }
            for (const Edge& e : g.edges) {
                const Index i = local[e.a];
                const Index j = local[e.b];
                const double dx = p[i][0] - p[j][0];
                const double dy = p[i][1] - p[j][1];
                const double dist = std::max(std::sqrt(dx * dx + dy * dy), 1e-9);
                const double rel = w_max > 0.0 ? e.weight / w_max : 1.0;
                const double f = rel * dist / k;
                disp[i][0] -= dx * f;
                disp[i][1] -= dy * f;
                disp[j][0] += dx * f;
                disp[j][1] += dy * f;
            }
            for (Index i = 0; i < m; ++i) {
                const double len = std::sqrt(disp[i][0] * disp[i][0] + disp[i][1] * disp[i][1]);
                if (len > 0.0) {
                    const double step = std::min(len, t) / len;
                    p[i][0] += disp[i][0] * step;
                    p[i][1] += disp[i][1] * step;
                }
            }
        }
        // Center the connected part on the origin.
        double cx = 0.0, cy = 0.0;
        for (const auto& q : p) {
            cx += q[0];
            cy += q[1];
        }
        cx /= static_cast<double>(m);
        cy /= static_cast<double>(m);
        for (Index i = 0; i < m; ++i) {
            pos[core_nodes[i]] = {p[i][0] - cx, p[i][1] - cy};
            max_radius = std::max(max_radius, std::hypot(pos[core_nodes[i]][0],
                                                         pos[core_nodes[i]][1]));
        }
    }

    if (!ring_nodes.empty()) {
        const double radius = max_radius > 0.0 ? 1.4 * max_radius : 0.5;
        const double step = 2.0 * 3.14159265358979323846 / static_cast<double>(ring_nodes.size());
        for (std::size_t i = 0; i < ring_nodes.size(); ++i) {
            const double angle = step * static_cast<double>(i);
            pos[ring_nodes[i]] = {radius * std::cos(angle), radius * std::sin(angle)};
        }
    }
    return pos;
}

ExportFormat parse_format(std::string_view name) {
    if (name == "dot") return ExportFormat::dot;
    if (name == "graphml") return ExportFormat::graphml;
    if (name == "json") return ExportFormat::json;
    if (name == "edge-csv") return ExportFormat::edge_csv;
    if (name == "svg") return ExportFormat::svg;
    throw ConfigError("unknown graph format '" + std::string(name) + "'");
}

std::string_view format_name(ExportFormat format) {
    switch (format) {
        case ExportFormat::dot: return "dot";
        case ExportFormat::graphml: return "graphml";
        case ExportFormat::json: return "json";
        case ExportFormat::edge_csv: return "edge-csv";
        case ExportFormat::svg: return "svg";
    }
    return "?";
}

namespace {

void write_dot(const CohesionGraph& g, std::ostream& out) {
    out << "graph cohesion {\n";
    out << "  node [shape=circle fontsize=10];\n";
    for (Index i = 0; i < g.labels.size(); ++i) {
        out << "  \"" << g.labels[i] << "\"";
        if (!g.node_values.empty()) out << " [value=" << fmt12(g.node_values[i]) << "]";
        out << ";\n";
    }
    for (const Edge& e : g.edges) {
        out << "  \"" << g.labels[e.a] << "\" -- \"" << g.labels[e.b] << "\" [weight="
            << fmt12(e.weight) << ", penwidth=" << fmt12(e.weight * kWidthPerCohesion) << "];\n";
    }
    out << "}\n";
}

void write_graphml(const CohesionGraph& g, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    out << "  <key id=\"value\" for=\"node\" attr.name=\"value\" attr.type=\"double\"/>\n";
    out << "  <graph id=\"cohesion\" edgedefault=\"undirected\">\n";
    for (Index i = 0; i < g.labels.size(); ++i) {
        out << "    <node id=\"n" << i << "\"><data key=\"label\">" << xml_escape(g.labels[i])
            << "</data>";
        if (!g.node_values.empty()) {
            out << "<data key=\"value\">" << fmt12(g.node_values[i]) << "</data>";
        }
        out << "</node>\n";
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        out << "    <edge id=\"e" << i << "\" source=\"n" << e.a << "\" target=\"n" << e.b
            << "\"><data key=\"weight\">" << fmt12(e.weight) << "</data></edge>\n";
    }
    out << "  </graph>\n";
    out << "</graphml>\n";
}

void write_json(const CohesionGraph& g, std::ostream& out) {
    nlohmann::json doc;
    doc["labels"] = g.labels;
    doc["threshold"] = g.threshold;
    auto edges = nlohmann::json::array();
    for (const Edge& e : g.edges) {
        edges.push_back({{"source", e.a}, {"target", e.b}, {"weight", e.weight}});
    }
    doc["edges"] = std::move(edges);
    if (!g.node_values.empty()) {
        doc["node_values"] = g.node_values;
    } else {
        doc["node_values"] = nullptr;
    }
    out << doc.dump(2) << "\n";
}

void write_edge_csv(const CohesionGraph& g, std::ostream& out) {
    out << "# pald-graph v1\n";
    out << "# threshold " << fmt_full(g.threshold) << "\n";
    for (Index i = 0; i < g.labels.size(); ++i) {
        out << "# node " << g.labels[i];
        if (!g.node_values.empty()) out << " " << fmt_full(g.node_values[i]);
        out << "\n";
    }
    out << "x_label,y_label,mutual_cohesion\n";
    for (const Edge& e : g.edges) {
        out << g.labels[e.a] << "," << g.labels[e.b] << "," << fmt12(e.weight) << "\n";
    }
}

// Linear two-color ramp for node shading (low -> high).
std::string ramp_color(double t) {
    const int r0 = 0xff, g0 = 0xd5, b0 = 0x4f;  // #ffd54f
    const int r1 = 0xe5, g1 = 0x39, b1 = 0x35;  // #e53935
    const auto mixc = [t](int a, int b) {
        return static_cast<int>(std::lround(a + t * (b - a)));
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", mixc(r0, r1), mixc(g0, g1), mixc(b0, b1));
    return buf;
}

void write_svg(const CohesionGraph& g, std::ostream& out, const std::vector<Point2>& coords) {
    if (coords.size() != g.labels.size()) {
        throw StructuralError("svg export needs one coordinate per node");
    }
    const double canvas = 800.0, margin = 50.0;
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const auto& p : coords) {
        min_x = std::min(min_x, p[0]);
        max_x = std::max(max_x, p[0]);
        min_y = std::min(min_y, p[1]);
        max_y = std::max(max_y, p[1]);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double scale = (canvas - 2.0 * margin) / span;
    const auto sx = [&](double x) { return margin + (x - min_x) * scale; };
    const auto sy = [&](double y) { return margin + (y - min_y) * scale; };

    double v_lo = 0.0, v_hi = 0.0;
    if (!g.node_values.empty()) {
        v_lo = *std::min_element(g.node_values.begin(), g.node_values.end());
        v_hi = *std::max_element(g.node_values.begin(), g.node_values.end());
    }

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\""
        << canvas << "\" viewBox=\"0 0 " << canvas << " " << canvas << "\">\n";
    for (const Edge& e : g.edges) {
        out << "  <line x1=\"" << fmt12(sx(coords[e.a][0])) << "\" y1=\""
            << fmt12(sy(coords[e.a][1])) << "\" x2=\"" << fmt12(sx(coords[e.b][0]))
            << "\" y2=\"" << fmt12(sy(coords[e.b][1])) << "\" stroke=\"#5b7aa9\" stroke-width=\""
            << fmt12(e.weight * kWidthPerCohesion) << "\"/>\n";
    }
    for (Index i = 0; i < g.labels.size(); ++i) {
        std::string fill = "#cccccc";
        if (!g.node_values.empty()) {
            const double t = v_hi > v_lo ? (g.node_values[i] - v_lo) / (v_hi - v_lo) : 0.5;
            fill = ramp_color(t);
        }
        out << "  <circle cx=\"" << fmt12(sx(coords[i][0])) << "\" cy=\""
            << fmt12(sy(coords[i][1])) << "\" r=\"12\" fill=\"" << fill
            << "\" stroke=\"#333333\"/>\n";
        out << "  <text x=\"" << fmt12(sx(coords[i][0])) << "\" y=\""
            << fmt12(sy(coords[i][1]) + 26.0)
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
            << xml_escape(g.labels[i]) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace

void export_graph(const CohesionGraph& g, ExportFormat format, std::ostream& out,
                  const std::vector<Point2>* coordinates) {
    for (const auto& label : g.labels) check_label(label);
    switch (format) {
        case ExportFormat::dot: write_dot(g, out); return;
        case ExportFormat::graphml: write_graphml(g, out); return;
        case ExportFormat::json: write_json(g, out); return;
        case ExportFormat::edge_csv: write_edge_csv(g, out); return;
        case ExportFormat::svg:
            if (coordinates == nullptr) {
                throw StructuralError("svg export requires a layout");
            }
            write_svg(g, out, *coordinates);
            return;
    }
    throw StructuralError("unknown export format");
}

std::string export_string(const CohesionGraph& g, ExportFormat format,
                          const std::vector<Point2>* coordinates) {
    std::ostringstream out;
    export_graph(g, format, out, coordinates);
    return out.str();
}

CohesionGraph ingest_edge_csv(std::istream& in) {
    CohesionGraph g;
    std::map<std::string, Index> by_label;
    std::vector<double> values;
    bool any_value = false;
    bool header_seen = false;
    std::string line;
    std::size_t line_no = 0;

    const auto intern = [&](const std::string& label) -> Index {
        auto it = by_label.find(label);
        if (it != by_label.end()) return it->second;
        const Index id = g.labels.size();
        by_label.emplace(label, id);
        g.labels.push_back(label);
        values.push_back(0.0);
        return id;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string tag;
            meta >> tag;
            if (tag == "threshold") {
                if (!(meta >> g.threshold)) {
                    throw ParseError("line " + std::to_string(line_no) + ": bad threshold");
                }
            } else if (tag == "node") {
                std::string label;
                if (!(meta >> label)) {
                    throw ParseError("line " + std::to_string(line_no) + ": bad node record");
                }
                const Index id = intern(label);
                double v;
                if (meta >> v) {
                    values[id] = v;
                    any_value = true;
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "x_label,y_label,mutual_cohesion") {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header x_label,y_label,mutual_cohesion");
            }
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string a, b, w;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, w)) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 comma-separated fields");
        }
        std::size_t used = 0;
        double weight;
        try {
            weight = std::stod(w, &used);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad weight '" + w + "'");
        }
        if (used != w.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": bad weight '" + w + "'");
        }
        Index ia = intern(a);
        Index ib = intern(b);
        if (ia == ib) throw ParseError("line " + std::to_string(line_no) + ": self-loop");
        if (ia > ib) std::swap(ia, ib);
        g.edges.push_back({ia, ib, weight});
    }
    if (!header_seen) throw ParseError("edge csv has no header line");
    if (any_value) g.node_values = std::move(values);

    std::sort(g.edges.begin(), g.edges.end(), [](const Edge& x, const Edge& y) {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
    for (std::size_t i = 1; i < g.edges.size(); ++i) {
        if (g.edges[i].a == g.edges[i - 1].a && g.edges[i].b == g.edges[i - 1].b) {
            throw ParseError("duplicate edge " + g.labels[g.edges[i].a] + "," +
                             g.labels[g.edges[i].b]);
        }
    }
    return g;
}

CohesionGraph ingest_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph json: ") + e.what());
    }
    CohesionGraph g;
    try {
        g.labels = doc.at("labels").get<std::vector<std::string>>();
        g.threshold = doc.at("threshold").get<double>();
        for (const auto& e : doc.at("edges")) {
            g.edges.push_back({e.at("source").get<Index>(), e.at("target").get<Index>(),
                               e.at("weight").get<double>()});
        }
        if (doc.contains("node_values") && !doc["node_values"].is_null()) {
            g.node_values = doc["node_values"].get<std::vector<double>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph json: ") + e.what());
    }
    for (const Edge& e : g.edges) {
        if (e.a >= g.labels.size() || e.b >= g.labels.size() || e.a >= e.b) {
            throw ParseError("bad edge endpoints in graph json");
        }
    }
    return g;
}

double edge_jaccard(const CohesionGraph& g1, const CohesionGraph& g2) {
    std::set<std::pair<std::string, std::string>> e1, e2;
    const auto key = [](const CohesionGraph& g, const Edge& e) {
        std::string a = g.labels[e.a];
        std::string b = g.labels[e.b];
        if (b < a) std::swap(a, b);
        return std::make_pair(a, b);
    };
    for (const Edge& e : g1.edges) e1.insert(key(g1, e));
    for (const Edge& e : g2.edges) e2.insert(key(g2, e));
    if (e1.empty() && e2.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& k : e1) inter += e2.count(k);
    const std::size_t uni = e1.size() + e2.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace pald::graph
