// JSON boundary: problem instances, report assembly for every CLI command,
// and the corpus self-test.  Reports are emitted with insertion-ordered keys
// and shortest-round-trip numbers, so identical inputs produce byte-identical
// files.
#pragma once

#include "om/matrixorbit.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace om {

using Json = nlohmann::ordered_json;

struct Options {
    double grid_pitch = 0.05;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    int budget = 24;
    bool exact_discs = false;
    double C = 1.0 / 3.0;     // distortion constant of the trace lower bound
    double cluster_tol = 0.0; // 0 = automatic
    double normal_tol = 1e-9;
    // Set when --grid-pitch came from the command line, in which case it also
    // overrides a per-instance wall radius.
    bool pitch_from_cli = false;
};

struct OptionOverrides {
    std::optional<double> grid_pitch;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> budget;
    std::optional<bool> exact_discs;
};

Options merge_options(Options base, const OptionOverrides& over);

struct Instance {
    std::string description;
    std::optional<ModelSpec> model;
    std::vector<Atom> x_atoms, y_atoms; // empty on matrix instances
    std::optional<CMatrix> x_matrix, y_matrix;
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> relation;
    WeightOrder order = WeightOrder::Group;
    std::optional<double> k1_h;
    K1Labels k1_labels;
    Options options;
    Json expected; // self-test block; null when absent
};

Instance parse_instance(const Json& j);
Instance load_instance(const std::string& path);

// Dispatch for the data commands: metrics, refine, unitary, k1, bounds,
// audit.  Throws om::error on any validation or invariant defect.
Json run_command(const std::string& command, const Instance& inst, const Options& opts);

// Runs every corpus file's declared command and compares the stored
// expectations; deterministic, so consecutive runs byte-match.
Json run_selftest(const std::string& corpus_dir);

// True unless the report carries "pass": false (audit and selftest).
bool report_pass(const Json& report);

// Serialization pieces shared with the tests.
Json double_to_json(double v); // infinities become "inf" / "-inf"
Json element_to_json(const GroupElement& g);
Json plan_to_json(const TransportPlan& plan);
Json certificate_to_json(const HallCertificate& cert);
Json metrics_to_json(const MetricReport& m);

} // namespace om
