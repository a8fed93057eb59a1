#include "pald/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "pald/classical.hpp"
#include "pald/combine.hpp"
#include "pald/core.hpp"
#include "pald/structure.hpp"
#include "pald/uncertain.hpp"

namespace fs = std::filesystem;

namespace pald::cli {

const char* pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::distances: return "distances";
        case Pipeline::combine_d: return "combine-d";
        case Pipeline::combine_rq: return "combine-rq";
        case Pipeline::events: return "events";
        case Pipeline::uncertain: return "uncertain";
    }
    return "?";
}

int exit_code(ErrorCategory cat) {
    switch (cat) {
        case ErrorCategory::config: return 2;
        case ErrorCategory::parse: return 3;
        case ErrorCategory::structural: return 4;
        case ErrorCategory::validation: return 5;
        case ErrorCategory::io: return 6;
    }
    return 1;
}

namespace {

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_number(const std::string& cell, std::size_t row, std::size_t col) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != cell.size() || cell.empty()) {
        throw ParseError("row " + std::to_string(row) + " column " + std::to_string(col) +
                         ": cell '" + cell + "' is not a number");
    }
    if (!std::isfinite(v)) {
        throw ParseError("row " + std::to_string(row) + " column " + std::to_string(col) +
                         ": cell '" + cell + "' is not finite");
    }
    return v;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

struct LabeledSquare {
    std::vector<std::string> labels;
    std::vector<double> values;  // row-major n*n
};

LabeledSquare parse_labeled_square(std::istream& in) {
    const std::vector<std::string> lines = read_lines(in);
    if (lines.empty()) throw ParseError("empty table");

    const std::vector<std::string> header = split_csv_line(lines[0]);
    if (header.size() < 2) throw ParseError("header must list at least one label");
    LabeledSquare out;
    out.labels.assign(header.begin() + 1, header.end());
    const std::size_t n = out.labels.size();

    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.labels[i].empty()) throw ParseError("empty label in header");
        if (!seen.emplace(out.labels[i], i).second) {
            throw ParseError("duplicate label '" + out.labels[i] + "'");
        }
    }
    if (lines.size() != n + 1) {
        throw ParseError("expected " + std::to_string(n) + " data rows, found " +
                         std::to_string(lines.size() - 1));
    }

    out.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<std::string> cells = split_csv_line(lines[i + 1]);
        if (cells.size() != n + 1) {
            throw ParseError("row " + std::to_string(i + 2) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(n + 1));
        }
        if (cells[0] != out.labels[i]) {
            throw ParseError("row " + std::to_string(i + 2) + " label '" + cells[0] +
                             "' does not match column label '" + out.labels[i] + "'");
        }
        for (std::size_t j = 0; j < n; ++j) {
            out.values[i * n + j] = parse_number(cells[j + 1], i + 2, j + 2);
        }
    }
    return out;
}

}  // namespace

LabeledMatrix parse_distance_csv(std::istream& in) {
    LabeledSquare sq = parse_labeled_square(in);
    const Index n = sq.labels.size();
    LabeledMatrix out{std::move(sq.labels), DissimilarityMatrix(n)};
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) out.d(x, y) = sq.values[x * n + y];
    }
    return out;
}

LabeledCohesion parse_cohesion_csv(std::istream& in) {
    LabeledSquare sq = parse_labeled_square(in);
    const Index n = sq.labels.size();
    LabeledCohesion out{std::move(sq.labels), CohesionMatrix(n)};
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) out.c(x, y) = sq.values[x * n + y];
    }
    return out;
}

LabeledEvents parse_event_csv(std::istream& in) {
    const std::vector<std::string> lines = read_lines(in);
    if (lines.empty()) throw ParseError("empty event table");
    const std::vector<std::string> header = split_csv_line(lines[0]);
    const bool ok_header =
        (header.size() == 3 || header.size() == 4) && header[0] == "x" && header[1] == "y" &&
        header[2] == "value" && (header.size() == 3 || header[3] == "weight");
    if (!ok_header) {
        throw ParseError("event csv requires header 'x,y,value[,weight]'");
    }

    std::vector<std::string> labels;
    std::map<std::string, Index> by_label;
    const auto intern = [&](const std::string& label, std::size_t row) -> Index {
        if (label.empty()) throw ParseError("row " + std::to_string(row) + ": empty label");
        auto it = by_label.find(label);
        if (it != by_label.end()) return it->second;
        const Index id = labels.size();
        by_label.emplace(label, id);
        labels.push_back(label);
        return id;
    };

    struct Row {
        Index x, y;
        double value, weight;
    };
    std::vector<Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(lines[i]);
        if (cells.size() != 3 && cells.size() != 4) {
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected 3 or 4");
        }
        const Index x = intern(cells[0], i + 1);
        const Index y = intern(cells[1], i + 1);
        if (x == y) {
            throw ParseError("row " + std::to_string(i + 1) + ": self-pair '" + cells[0] + "'");
        }
        const double value = parse_number(cells[2], i + 1, 3);
        if (value < 0.0) {
            throw ParseError("row " + std::to_string(i + 1) + ": negative dissimilarity");
        }
        double weight = 1.0;
        if (cells.size() == 4) {
            weight = parse_number(cells[3], i + 1, 4);
            if (weight <= 0.0) {
                throw ParseError("row " + std::to_string(i + 1) + ": nonpositive weight");
            }
        }
        rows.push_back({x, y, value, weight});
    }
    if (labels.size() < 2) throw ParseError("event table needs at least two labels");

    event::EventTable table(labels.size());
    for (const Row& r : rows) table.add(r.x, r.y, r.value, r.weight);
    const auto missing = table.missing_pairs();
    if (!missing.empty()) {
        throw ParseError("incomplete event table: no events for pair (" +
                         labels[missing.front().first] + "," + labels[missing.front().second] +
                         ")");
    }
    return {std::move(labels), std::move(table)};
}

LabeledPoints parse_points_csv(std::istream& in) {
    const std::vector<std::string> lines = read_lines(in);
    if (lines.empty()) throw ParseError("empty points table");
    const std::vector<std::string> header = split_csv_line(lines[0]);
    if (header.size() != 2 || header[0] != "label" || header[1] != "value") {
        throw ParseError("points csv requires header 'label,value'");
    }
    LabeledPoints out;
    std::map<std::string, Index> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::vector<std::string> cells = split_csv_line(lines[i]);
        if (cells.size() != 2) {
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected 2");
        }
        if (cells[0].empty()) throw ParseError("row " + std::to_string(i + 1) + ": empty label");
        if (!seen.emplace(cells[0], out.labels.size()).second) {
            throw ParseError("duplicate label '" + cells[0] + "'");
        }
        out.labels.push_back(cells[0]);
        out.values.push_back(parse_number(cells[1], i + 1, 2));
    }
    return out;
}

namespace {

std::string load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string render_square_csv(const std::vector<std::string>& labels,
                              const CohesionMatrix& c) {
    std::ostringstream out;
    const Index n = labels.size();
    for (const auto& label : labels) out << "," << label;
    out << "\n";
    for (Index x = 0; x < n; ++x) {
        out << labels[x];
        for (Index y = 0; y < n; ++y) out << "," << fmt_full(c(x, y));
        out << "\n";
    }
    return out.str();
}

std::string render_depths_csv(const std::vector<std::string>& labels, const DepthVector& depths) {
    std::ostringstream out;
    out << "label,local_depth\n";
    for (Index x = 0; x < labels.size(); ++x) {
        out << labels[x] << "," << fmt_full(depths[x]) << "\n";
    }
    return out.str();
}

std::string render_thresholds_csv(double bound, double exact) {
    std::ostringstream out;
    out << "quantity,value\n";
    out << "threshold_bound," << fmt_full(bound) << "\n";
    out << "threshold_exact," << fmt_full(exact) << "\n";
    return out.str();
}

struct PipelineResult {
    std::vector<std::string> labels;
    CohesionMatrix c;
    double threshold_bound_value = 0.0;
    double threshold_exact_value = 0.0;
};

// Writes the artifact set for one cohesion matrix and returns the strong
// graph so callers can log cross-weight diagnostics.
graph::CohesionGraph emit_artifacts(const RunConfig& config, const PipelineResult& result,
                                    const std::string& suffix, std::ostream& log) {
    const Index n = result.labels.size();
    const double residual = std::abs(result.c.total() - static_cast<double>(n) / 2.0);
    const double limit = 1e-9 * static_cast<double>(n);
    log << "[pald] conservation residual " << fmt_full(residual) << " (limit " << fmt_full(limit)
        << ")\n";
    if (residual > limit) {
        throw ValidationError("conservation violated: |sum C - n/2| = " + fmt_full(residual));
    }

    const fs::path dir(config.out_dir);
    write_file(dir / ("cohesion" + suffix + ".csv"), render_square_csv(result.labels, result.c));
    write_file(dir / ("depths" + suffix + ".csv"),
               render_depths_csv(result.labels, local_depths(result.c)));
    write_file(dir / ("thresholds" + suffix + ".csv"),
               render_thresholds_csv(result.threshold_bound_value, result.threshold_exact_value));
    log << "[pald] threshold bound " << fmt_full(result.threshold_bound_value) << " exact "
        << fmt_full(result.threshold_exact_value) << "\n";

    const graph::ThresholdSpec spec = config.threshold_auto
                                          ? graph::ThresholdSpec::automatic()
                                          : graph::ThresholdSpec::value(config.threshold_value);
    // Local depths double as the node shading values of the exports.
    graph::CohesionGraph g =
        graph::strong_graph(result.c, result.labels, spec, local_depths(result.c));
    log << "[pald] strong ties" << suffix << ": " << g.edges.size() << "\n";

    for (graph::ExportFormat format : config.formats) {
        std::vector<graph::Point2> coords;
        const std::vector<graph::Point2>* coords_ptr = nullptr;
        if (format == graph::ExportFormat::svg) {
            coords = graph::layout(g, {config.layout_seed, config.layout_iterations});
            coords_ptr = &coords;
        }
        std::string name = "graph" + suffix;
        if (format == graph::ExportFormat::edge_csv) {
            name += "_edges.csv";
        } else {
            name += ".";
            name += std::string(graph::format_name(format));
        }
        write_file(dir / name, graph::export_string(g, format, coords_ptr));
        log << "[pald] wrote " << (dir / name).string() << "\n";
    }
    return g;
}

PipelineResult result_from_arrays(std::vector<std::string> labels, const TripletArray& r,
                                  const TripletArray& q, const CohesionOptions& opts) {
    PipelineResult res;
    res.labels = std::move(labels);
    res.c = cohesion(r, q, opts);
    res.threshold_bound_value = threshold_bound(res.c);
    res.threshold_exact_value = threshold_exact(r, q, opts);
    return res;
}

std::vector<LabeledMatrix> load_distance_inputs(const std::vector<std::string>& paths) {
    std::vector<LabeledMatrix> inputs;
    inputs.reserve(paths.size());
    for (const auto& path : paths) {
        std::istringstream in(load_file(path));
        try {
            inputs.push_back(parse_distance_csv(in));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    for (std::size_t k = 1; k < inputs.size(); ++k) {
        if (inputs[k].labels != inputs[0].labels) {
            throw ConfigError("input label sets differ between '" + paths[0] + "' and '" +
                              paths[k] + "'");
        }
    }
    return inputs;
}

void check_weights(const RunConfig& config, std::size_t source_count) {
    if (config.weights.empty()) {
        throw ConfigError("combine pipelines require --weights");
    }
    for (const auto& w : config.weights) {
        if (w.size() != source_count) {
            throw ConfigError("weight vector has " + std::to_string(w.size()) +
                              " entries for " + std::to_string(source_count) + " inputs");
        }
    }
}

std::string weight_suffix(const RunConfig& config, std::size_t k) {
    return config.weights.size() > 1 ? "_w" + std::to_string(k) : std::string{};
}

void run_combine_d(const RunConfig& config, std::ostream& log) {
    const auto inputs = load_distance_inputs(config.inputs);
    check_weights(config, inputs.size());
    std::vector<DissimilarityMatrix> ds;
    ds.reserve(inputs.size());
    for (const auto& in : inputs) ds.push_back(in.d);

    const CohesionOptions opts{config.jobs, true, 1e-9};
    graph::CohesionGraph previous;
    for (std::size_t k = 0; k < config.weights.size(); ++k) {
        const DissimilarityMatrix d = combine::combine_distances(ds, config.weights[k]);
        const TripletArray r = classical::relevance_from_distances(d, config.dense_cap);
        const TripletArray q = classical::support_from_distances(d, config.dense_cap);
        PipelineResult res = result_from_arrays(inputs[0].labels, r, q, opts);
        graph::CohesionGraph g = emit_artifacts(config, res, weight_suffix(config, k), log);
        if (k > 0) {
            log << "[pald] edge jaccard vs previous weights: "
                << fmt_full(graph::edge_jaccard(previous, g)) << "\n";
        }
        previous = std::move(g);
    }
}

void run_combine_rq(const RunConfig& config, std::ostream& log) {
    const auto inputs = load_distance_inputs(config.inputs);
    check_weights(config, inputs.size());

    std::vector<TripletArray> rs, qs;
    rs.reserve(inputs.size());
    qs.reserve(inputs.size());
    for (const auto& in : inputs) {
        rs.push_back(classical::relevance_from_distances(in.d, config.dense_cap));
        qs.push_back(classical::support_from_distances(in.d, config.dense_cap));
    }

    const CohesionOptions opts{config.jobs, true, 1e-9};
    graph::CohesionGraph previous;
    for (std::size_t k = 0; k < config.weights.size(); ++k) {
        const TripletArray r = combine::combine_triplet_arrays(rs, config.weights[k],
                                                               config.dense_cap);
        const TripletArray q = combine::combine_triplet_arrays(qs, config.weights[k],
                                                               config.dense_cap);
        PipelineResult res = result_from_arrays(inputs[0].labels, r, q, opts);
        graph::CohesionGraph g = emit_artifacts(config, res, weight_suffix(config, k), log);
        if (k > 0) {
            log << "[pald] edge jaccard vs previous weights: "
                << fmt_full(graph::edge_jaccard(previous, g)) << "\n";
        }
        previous = std::move(g);
    }
}

void run_events(const RunConfig& config, std::ostream& log) {
    std::istringstream in(load_file(config.inputs[0]));
    LabeledEvents events = [&] {
        try {
            return parse_event_csv(in);
        } catch (const ParseError& e) {
            throw ParseError(config.inputs[0] + ": " + e.what());
        }
    }();

    event::EventOptions opts;
    opts.mc_samples = config.mc_samples;
    opts.exact_limit = config.exact_limit;
    opts.independent_draws = config.independent_draws;
    opts.jobs = config.jobs;
    opts.dense_cap = config.dense_cap;
    if (events.table.max_triple_product() > config.exact_limit) {
        if (!config.seed) {
            throw ConfigError("--seed is required: some triples exceed the exact limit and "
                              "fall back to Monte Carlo");
        }
        opts.seed = *config.seed;
        log << "[pald] Monte Carlo active (max triple product "
            << events.table.max_triple_product() << " > exact limit " << config.exact_limit
            << ")\n";
    }

    const auto [r, q] = event::event_arrays(events.table, opts);
    const CohesionOptions copts{config.jobs, true, 1e-9};
    PipelineResult res = result_from_arrays(std::move(events.labels), r, q, copts);
    emit_artifacts(config, res, "", log);
}

void run_uncertain(const RunConfig& config, std::ostream& log) {
    std::istringstream in(load_file(config.inputs[0]));
    LabeledPoints points = [&] {
        try {
            return parse_points_csv(in);
        } catch (const ParseError& e) {
            throw ParseError(config.inputs[0] + ": " + e.what());
        }
    }();
    if (points.values.size() < 2) throw ConfigError("uncertain pipeline needs >= 2 points");

    const bool single = config.epsilon.has_value();
    const bool sweep = !config.epsilon_sweep.empty();
    if (single == sweep) {
        throw ConfigError("uncertain pipeline requires exactly one of --epsilon / --epsilon-sweep");
    }

    uncertain::UncertainArrayOptions aopts;
    aopts.jobs = config.jobs;
    aopts.dense_cap = config.dense_cap;
    const CohesionOptions copts{config.jobs, true, 1e-6};

    if (single) {
        uncertain::UncertainPoints1D pts{points.values, *config.epsilon};
        const auto [r, q] = uncertain::uncertain_arrays(pts, aopts);
        PipelineResult res = result_from_arrays(points.labels, r, q, copts);
        emit_artifacts(config, res, "", log);
        return;
    }

    std::ostringstream records;
    records << "epsilon,x_label,y_label,cohesion\n";
    for (std::size_t k = 0; k < config.epsilon_sweep.size(); ++k) {
        const double eps = config.epsilon_sweep[k];
        if (!(eps > 0.0) || (k > 0 && eps <= config.epsilon_sweep[k - 1])) {
            throw ConfigError("--epsilon-sweep values must be positive and strictly increasing");
        }
    }
    for (std::size_t k = 0; k < config.epsilon_sweep.size(); ++k) {
        const double eps = config.epsilon_sweep[k];
        uncertain::UncertainPoints1D pts{points.values, eps};
        const auto [r, q] = uncertain::uncertain_arrays(pts, aopts);
        PipelineResult res = result_from_arrays(points.labels, r, q, copts);
        log << "[pald] epsilon " << fmt_full(eps) << "\n";
        emit_artifacts(config, res, "_eps" + std::to_string(k), log);
        const Index n = res.labels.size();
        for (Index x = 0; x < n; ++x) {
            for (Index y = 0; y < n; ++y) {
                records << fmt_full(eps) << "," << res.labels[x] << "," << res.labels[y] << ","
                        << fmt_full(res.c(x, y)) << "\n";
            }
        }
    }
    write_file(fs::path(config.out_dir) / "sweep.csv", records.str());
    log << "[pald] wrote " << (fs::path(config.out_dir) / "sweep.csv").string() << "\n";
}

}  // namespace

void run(const RunConfig& config, std::ostream& log) {
    if (config.inputs.empty()) throw ConfigError("no input files given");
    const bool is_combine =
        config.pipeline == Pipeline::combine_d || config.pipeline == Pipeline::combine_rq;
    if (!is_combine && config.inputs.size() != 1) {
        throw ConfigError("pipeline takes exactly one input file");
    }
    if (!is_combine && !config.weights.empty()) {
        throw ConfigError("--weights only applies to the combine pipelines");
    }
    const bool is_uncertain = config.pipeline == Pipeline::uncertain;
    if (!is_uncertain && (config.epsilon || !config.epsilon_sweep.empty())) {
        throw ConfigError("--epsilon only applies to the uncertain pipeline");
    }

    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create out dir '" + config.out_dir + "': " + ec.message());

    log << "[pald] pipeline " << pipeline_name(config.pipeline) << "\n";
    switch (config.pipeline) {
        case Pipeline::distances: {
            std::istringstream in(load_file(config.inputs[0]));
            LabeledMatrix input = [&] {
                try {
                    return parse_distance_csv(in);
                } catch (const ParseError& e) {
                    throw ParseError(config.inputs[0] + ": " + e.what());
                }
            }();
            const CohesionOptions opts{config.jobs, true, 1e-9};
            const TripletArray r = classical::relevance_from_distances(input.d, config.dense_cap);
            const TripletArray q = classical::support_from_distances(input.d, config.dense_cap);
            PipelineResult res = result_from_arrays(std::move(input.labels), r, q, opts);
            emit_artifacts(config, res, "", log);
            return;
        }
        case Pipeline::combine_d: run_combine_d(config, log); return;
        case Pipeline::combine_rq: run_combine_rq(config, log); return;
        case Pipeline::events: run_events(config, log); return;
        case Pipeline::uncertain: run_uncertain(config, log); return;
    }
    throw ConfigError("unknown pipeline");
}

void diagnose(const DiagnoseConfig& config, std::ostream& out) {
    std::istringstream in(load_file(config.input));
    LabeledMatrix input = parse_distance_csv(in);

    std::map<std::string, Index> by_label;
    for (Index i = 0; i < input.labels.size(); ++i) by_label.emplace(input.labels[i], i);
    const auto resolve = [&](const std::vector<std::string>& names, const char* which) {
        std::vector<Index> ids;
        for (const auto& name : names) {
            auto it = by_label.find(name);
            if (it == by_label.end()) {
                throw ConfigError(std::string(which) + " label '" + name + "' not in input");
            }
            ids.push_back(it->second);
        }
        return ids;
    };
    const std::vector<Index> a = resolve(config.set_a, "--set-a");
    const std::vector<Index> b = resolve(config.set_b, "--set-b");
    if (a.empty() || b.empty()) throw ConfigError("both --set-a and --set-b must be nonempty");

    const TripletArray r = classical::relevance_from_distances(input.d);
    const TripletArray q = classical::support_from_distances(input.d);

    const auto report = [&](const char* name, const structure::PredicateResult& res) {
        out << name << ": " << (res ? "yes" : "no");
        if (!res) out << " (" << res.describe() << ")";
        out << "\n";
    };
    report("A sufficiently separated from B",
           structure::is_sufficiently_separated(r, q, a, b, config.tol));
    report("B sufficiently separated from A",
           structure::is_sufficiently_separated(r, q, b, a, config.tol));
    report("mutually separated", structure::is_mutually_separated(r, q, a, b, config.tol));
    report("B concentrated w.r.t. A", structure::is_concentrated(r, q, a, b, config.tol));
    report("A concentrated w.r.t. B", structure::is_concentrated(r, q, b, a, config.tol));
    if (a.size() == b.size()) {
        report("equivalent ordinal structure",
               structure::equivalent_ordinal_structure(r, q, a, b, config.tol));
    }
}

void export_graphs(const ExportConfig& config, std::ostream& log) {
    std::istringstream in(load_file(config.input));
    LabeledCohesion input = [&] {
        try {
            return parse_cohesion_csv(in);
        } catch (const ParseError& e) {
            throw ParseError(config.input + ": " + e.what());
        }
    }();
    if (config.formats.empty()) throw ConfigError("--format is required for export");

    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create out dir '" + config.out_dir + "': " + ec.message());

    const graph::ThresholdSpec spec = config.threshold_auto
                                          ? graph::ThresholdSpec::automatic()
                                          : graph::ThresholdSpec::value(config.threshold_value);
    graph::CohesionGraph g =
        graph::strong_graph(input.c, input.labels, spec, local_depths(input.c));
    log << "[pald] strong ties: " << g.edges.size() << "\n";
    for (graph::ExportFormat format : config.formats) {
        std::vector<graph::Point2> coords;
        const std::vector<graph::Point2>* coords_ptr = nullptr;
        if (format == graph::ExportFormat::svg) {
            coords = graph::layout(g, {config.layout_seed, config.layout_iterations});
            coords_ptr = &coords;
        }
        std::string name = format == graph::ExportFormat::edge_csv
                               ? "graph_edges.csv"
                               : "graph." + std::string(graph::format_name(format));
        write_file(fs::path(config.out_dir) / name,
                   graph::export_string(g, format, coords_ptr));
        log << "[pald] wrote " << (fs::path(config.out_dir) / name).string() << "\n";
    }
}

}  // namespace pald::cli
