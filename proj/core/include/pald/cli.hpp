#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pald/error.hpp"
#include "pald/event.hpp"
#include "pald/graph.hpp"
#include "pald/matrix.hpp"
#include "pald/triplet_array.hpp"

namespace pald::cli {

enum class Pipeline { distances, combine_d, combine_rq, events, uncertain };

const char* pipeline_name(Pipeline p);

// Batch run description. Exactly one pipeline; a seed is required whenever
// the run can reach Monte Carlo sampling.
struct RunConfig {
    Pipeline pipeline = Pipeline::distances;
    std::vector<std::string> inputs;
    // Unnormalized weight vectors for the combine pipelines; each produces
    // one artifact set (suffix _w<k> when more than one is given).
    std::vector<std::vector<double>> weights;
    std::optional<double> epsilon;
    std::vector<double> epsilon_sweep;
    std::optional<std::uint64_t> seed;
    std::uint64_t mc_samples = 100000;
    std::uint64_t exact_limit = 1000000;
    bool independent_draws = false;
    bool threshold_auto = true;
    double threshold_value = 0.0;
    std::vector<graph::ExportFormat> formats;
    unsigned jobs = 0;
    Index dense_cap = kDefaultDenseCap;
    std::uint64_t layout_seed = 0;
    int layout_iterations = 200;
    std::string out_dir = ".";
};

struct LabeledMatrix {
    std::vector<std::string> labels;
    DissimilarityMatrix d;
};

struct LabeledCohesion {
    std::vector<std::string> labels;
    CohesionMatrix c;
};

struct LabeledEvents {
    std::vector<std::string> labels;
    event::EventTable table;
};

struct LabeledPoints {
    std::vector<std::string> labels;
    std::vector<double> values;
};

// Square numeric table; first row and first column carry labels, '.' is the
// decimal separator. Asymmetric tables are accepted. Raises ParseError for
// ragged rows, non-numeric cells (naming the cell), and duplicate labels.
LabeledMatrix parse_distance_csv(std::istream& in);
LabeledCohesion parse_cohesion_csv(std::istream& in);

// Long format `x,y,value[,weight]` with a header row; one event per row,
// duplicate rows kept (multiset semantics). Every pair of distinct labels
// must appear at least once.
LabeledEvents parse_event_csv(std::istream& in);

// `label,value` with a header row.
LabeledPoints parse_points_csv(std::istream& in);

// Executes the configured pipeline, writing cohesion/depth/threshold CSVs
// and any requested graph exports under out_dir. Logs the conservation
// residual and fails (ValidationError) if it exceeds 1e-9 * n. Output files
// are byte-identical across reruns for a fixed config, seed and input set,
// regardless of the jobs setting.
void run(const RunConfig& config, std::ostream& log);

struct DiagnoseConfig {
    std::string input;
    std::vector<std::string> set_a;
    std::vector<std::string> set_b;
    double tol = 0.0;
};

// Reports the separation/concentration structure of a labelled partition of
// a distance CSV.
void diagnose(const DiagnoseConfig& config, std::ostream& out);

struct ExportConfig {
    std::string input;  // cohesion CSV produced by a previous run
    std::vector<graph::ExportFormat> formats;
    bool threshold_auto = true;
    double threshold_value = 0.0;
    std::uint64_t layout_seed = 0;
    int layout_iterations = 200;
    std::string out_dir = ".";
};

void export_graphs(const ExportConfig& config, std::ostream& log);

// Exit code for a failure category (0 is success).
int exit_code(ErrorCategory cat);

}  // namespace pald::cli
