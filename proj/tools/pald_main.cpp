// pald: partitioned local depth cohesion networks from exact or uncertain
// dissimilarity data.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pald/cli.hpp"
#include "pald/error.hpp"
#include "pald/graph.hpp"

namespace {

std::vector<double> parse_number_list(const std::string& csv, const char* flag) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw pald::ConfigError(std::string(flag) + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw pald::ConfigError(std::string(flag) + ": empty list");
    return out;
}

std::vector<pald::graph::ExportFormat> parse_formats(const std::vector<std::string>& raw) {
    std::vector<pald::graph::ExportFormat> formats;
    for (const auto& group : raw) {
        std::istringstream in(group);
        std::string item;
        while (std::getline(in, item, ',')) {
            formats.push_back(pald::graph::parse_format(item));
        }
    }
    return formats;
}

struct CommonFlags {
    unsigned jobs = 0;
    std::uint64_t dense_cap = pald::kDefaultDenseCap;
    std::string out_dir = ".";
    std::vector<std::string> formats;
    std::optional<double> threshold;

    void attach(CLI::App* cmd, bool with_graph_flags = true) {
        cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)")
            ->envname("PALD_JOBS");
        cmd->add_option("--dense-cap", dense_cap,
                        "Max n for dense triplet arrays; larger inputs stream lazily")
            ->envname("PALD_DENSE_CAP");
        cmd->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
        if (with_graph_flags) {
            cmd->add_option("--format", formats,
                            "Graph export formats (dot, graphml, json, edge-csv, svg); "
                            "repeatable or comma-separated");
            cmd->add_option("--threshold", threshold,
                            "Explicit strong-tie threshold (default: the trace bound)");
        }
    }

    void fill(pald::cli::RunConfig& config) const {
        config.jobs = jobs;
        config.dense_cap = dense_cap;
        config.out_dir = out_dir;
        config.formats = parse_formats(formats);
        if (threshold) {
            config.threshold_auto = false;
            config.threshold_value = *threshold;
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pald: cohesion networks via partitioned local depth"};
    app.require_subcommand(1);

    pald::cli::RunConfig config;
    std::optional<std::uint64_t> seed;
    std::uint64_t mc_samples = 100000;
    std::uint64_t exact_limit = 1000000;
    bool independent_draws = false;
    std::vector<std::string> weight_specs;
    std::optional<double> epsilon;
    std::string epsilon_sweep;
    std::uint64_t layout_seed = 0;
    int layout_iterations = 200;

    auto add_seeded = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Random seed for Monte Carlo paths")
            ->envname("PALD_SEED");
        cmd->add_option("--mc-samples", mc_samples, "Monte Carlo samples per triple")
            ->envname("PALD_MC_SAMPLES")
            ->capture_default_str();
        cmd->add_option("--exact-limit", exact_limit,
                        "Max N_xy*N_xz*N_yz enumerated exactly before Monte Carlo")
            ->envname("PALD_EXACT_LIMIT")
            ->capture_default_str();
    };
    auto add_layout = [&](CLI::App* cmd) {
        cmd->add_option("--layout-seed", layout_seed, "Layout seed (svg export)")
            ->capture_default_str();
        cmd->add_option("--layout-iterations", layout_iterations, "Layout iterations")
            ->capture_default_str();
    };

    // distances
    CommonFlags distances_flags;
    auto* distances = app.add_subcommand("distances", "Cohesion from a dissimilarity CSV");
    distances->add_option("input", config.inputs, "Square labelled dissimilarity CSV")
        ->required()
        ->expected(1);
    distances_flags.attach(distances);
    add_layout(distances);

    // combine-d
    CommonFlags combine_d_flags;
    auto* combine_d = app.add_subcommand(
        "combine-d", "Fuse several dissimilarity CSVs at the distance level (D*)");
    combine_d->add_option("inputs", config.inputs, "Dissimilarity CSVs over one label set")
        ->required()
        ->expected(-1);
    combine_d->add_option("--weights", weight_specs,
                          "Relative weights v1,v2,... (one per input; repeatable for "
                          "several weightings)")
        ->required();
    combine_d_flags.attach(combine_d);
    add_layout(combine_d);

    // combine-rq
    CommonFlags combine_rq_flags;
    auto* combine_rq = app.add_subcommand(
        "combine-rq", "Fuse several dissimilarity CSVs at the probability level (R*, Q*)");
    combine_rq->add_option("inputs", config.inputs, "Dissimilarity CSVs over one label set")
        ->required()
        ->expected(-1);
    combine_rq->add_option("--weights", weight_specs,
                           "Relative weights v1,v2,... (one per input; repeatable)")
        ->required();
    combine_rq_flags.attach(combine_rq);
    add_layout(combine_rq);

    // events
    CommonFlags events_flags;
    auto* events = app.add_subcommand("events", "Cohesion from per-pair event dissimilarities");
    events->add_option("input", config.inputs, "Long-format event CSV (x,y,value[,weight])")
        ->required()
        ->expected(1);
    events->add_flag("--independent-draws", independent_draws,
                     "Redraw each pair per comparison instead of one draw per event world");
    add_seeded(events);
    events_flags.attach(events);
    add_layout(events);

    // uncertain
    CommonFlags uncertain_flags;
    auto* uncertain = app.add_subcommand(
        "uncertain", "Cohesion for 1-D values observed within an epsilon ball");
    uncertain->add_option("input", config.inputs, "Points CSV (label,value)")
        ->required()
        ->expected(1);
    uncertain->add_option("--epsilon", epsilon, "Uncertainty radius");
    uncertain->add_option("--epsilon-sweep", epsilon_sweep,
                          "Comma-separated increasing radii; one cohesion matrix per value");
    uncertain_flags.attach(uncertain);
    add_layout(uncertain);

    // diagnose
    pald::cli::DiagnoseConfig diag;
    std::string diag_set_a, diag_set_b;
    auto* diagnose = app.add_subcommand(
        "diagnose", "Report separation/concentration structure of a labelled partition");
    diagnose->add_option("input", diag.input, "Square labelled dissimilarity CSV")->required();
    diagnose->add_option("--set-a", diag_set_a, "Comma-separated labels of set A")->required();
    diagnose->add_option("--set-b", diag_set_b, "Comma-separated labels of set B")->required();
    diagnose->add_option("--tol", diag.tol, "Entry tolerance for the predicates")
        ->capture_default_str();

    // export
    pald::cli::ExportConfig exp;
    std::vector<std::string> export_formats;
    std::optional<double> export_threshold;
    auto* export_cmd =
        app.add_subcommand("export", "Re-export graphs from a cohesion CSV written by a run");
    export_cmd->add_option("input", exp.input, "Cohesion CSV")->required();
    export_cmd->add_option("--format", export_formats, "Graph formats (repeatable)")->required();
    export_cmd->add_option("--threshold", export_threshold, "Explicit strong-tie threshold");
    export_cmd->add_option("--out-dir", exp.out_dir, "Output directory")->capture_default_str();
    export_cmd->add_option("--layout-seed", exp.layout_seed, "Layout seed (svg)")
        ->capture_default_str();
    export_cmd->add_option("--layout-iterations", exp.layout_iterations, "Layout iterations")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(diagnose)) {
            std::istringstream a(diag_set_a), b(diag_set_b);
            std::string item;
            while (std::getline(a, item, ',')) diag.set_a.push_back(item);
            while (std::getline(b, item, ',')) diag.set_b.push_back(item);
            pald::cli::diagnose(diag, std::cout);
            return 0;
        }
        if (app.got_subcommand(export_cmd)) {
            exp.formats = parse_formats(export_formats);
            if (export_threshold) {
                exp.threshold_auto = false;
                exp.threshold_value = *export_threshold;
            }
            pald::cli::export_graphs(exp, std::cout);
            return 0;
        }

        CommonFlags* flags = nullptr;
        if (app.got_subcommand(distances)) {
            config.pipeline = pald::cli::Pipeline::distances;
            flags = &distances_flags;
        } else if (app.got_subcommand(combine_d)) {
            config.pipeline = pald::cli::Pipeline::combine_d;
            flags = &combine_d_flags;
        } else if (app.got_subcommand(combine_rq)) {
            config.pipeline = pald::cli::Pipeline::combine_rq;
            flags = &combine_rq_flags;
        } else if (app.got_subcommand(events)) {
            config.pipeline = pald::cli::Pipeline::events;
            flags = &events_flags;
        } else if (app.got_subcommand(uncertain)) {
            config.pipeline = pald::cli::Pipeline::uncertain;
            flags = &uncertain_flags;
        } else {
            throw pald::ConfigError("no subcommand selected");
        }

        flags->fill(config);
        config.seed = seed;
        config.mc_samples = mc_samples;
        config.exact_limit = exact_limit;
        config.independent_draws = independent_draws;
        config.layout_seed = layout_seed;
        config.layout_iterations = layout_iterations;
        for (const auto& spec : weight_specs) {
            config.weights.push_back(parse_number_list(spec, "--weights"));
        }
        if (epsilon) config.epsilon = *epsilon;
        if (!epsilon_sweep.empty()) {
            config.epsilon_sweep = parse_number_list(epsilon_sweep, "--epsilon-sweep");
        }

        pald::cli::run(config, std::cout);
        return 0;
    } catch (const pald::Error& e) {
        std::cerr << "pald: error [" << pald::to_string(e.category()) << "]: " << e.what()
                  << "\n";
        return pald::cli::exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "pald: error [internal]: " << e.what() << "\n";
        return 1;
    }
}
