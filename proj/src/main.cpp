// Command line front end: parses one subcommand, loads the instance, runs the
// requested computation and prints (or writes) the JSON report.  Errors leave
// a JSON diagnostic on stderr and map to the documented exit codes.
#include "om/errors.hpp"
#include "om/io.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifndef OM_CORPUS_DIR
#define OM_CORPUS_DIR "corpus"
#endif

namespace {

void emit(const om::Json& report, const std::string& out_path) {
    const std::string text = report.dump(2);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) om::fail(om::errc::invalid_option, "cannot open output file: " + out_path);
        out << text << '\n';
    }
}

int emit_error(const om::error& e) {
    om::Json j;
    om::Json inner;
    inner["code"] = om::errc_name(e.code());
    inner["message"] = e.what();
    if (!e.where().empty()) inner["where"] = e.where();
    j["error"] = std::move(inner);
    std::cerr << j.dump(2) << std::endl;
    return om::errc_exit_code(e.code());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance metrics, couplings and two-sided bounds for finite atomic instances"};
    app.require_subcommand(1);

    std::string in_path, out_path;
    std::string corpus_dir = OM_CORPUS_DIR;
    double grid_pitch = 0.0, tol = 0.0;
    std::uint64_t seed = 0;
    int budget = 0;
    bool exact_discs = false;

    const std::vector<std::pair<std::string, std::string>> data_commands = {
        {"metrics", "compute every metric of the instance with coupling certificates"},
        {"refine", "decide feasibility of the instance relation and produce a coupling"},
        {"unitary", "build the block-matching unitary for a matrix pair"},
        {"k1", "analyse complement regions and the label-mismatch obstruction"},
        {"bounds", "metrics plus the combined two-sided distance interval"},
        {"audit", "estimate the matrix distance and re-verify every promised bound"},
    };

    std::vector<CLI::App*> subs;
    for (const auto& [name, desc] : data_commands) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--in", in_path, "instance file (JSON)")->required();
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
        cmd->add_option("--grid-pitch", grid_pitch,
                        "disc grid pitch; also the complement wall radius");
        cmd->add_option("--tol", tol, "comparison tolerance");
        cmd->add_option("--seed", seed, "seed for the estimate restarts");
        cmd->add_option("--budget", budget, "restart budget for the estimate");
        cmd->add_flag("--exact-discs", exact_discs,
                      "augment the disc grid with analytic candidate centres");
        subs.push_back(cmd);
    }
    CLI::App* selftest = app.add_subcommand(
        "selftest", "run every corpus instance and compare the stored expectations");
    selftest->add_option("--corpus", corpus_dir, "corpus directory");
    selftest->add_option("--out", out_path, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (selftest->parsed()) {
            const om::Json report = om::run_selftest(corpus_dir);
            emit(report, out_path);
            return om::report_pass(report) ? 0 : 4;
        }
        for (std::size_t k = 0; k < subs.size(); ++k) {
            CLI::App* cmd = subs[k];
            if (!cmd->parsed()) continue;
            om::OptionOverrides over;
            if (cmd->count("--grid-pitch")) over.grid_pitch = grid_pitch;
            if (cmd->count("--tol")) over.tol = tol;
            if (cmd->count("--seed")) over.seed = seed;
            if (cmd->count("--budget")) over.budget = budget;
            if (cmd->count("--exact-discs")) over.exact_discs = true;

            const om::Instance inst = om::load_instance(in_path);
            const om::Options opts = om::merge_options(inst.options, over);
            const om::Json report = om::run_command(data_commands[k].first, inst, opts);
            emit(report, out_path);
            return om::report_pass(report) ? 0 : 4;
        }
        om::fail(om::errc::invalid_option, "no command selected");
    } catch (const om::error& e) {
        return emit_error(e);
    } catch (const std::exception& e) {
        om::Json j;
        j["error"] = {{"code", "internal"}, {"message", e.what()}};
        std::cerr << j.dump(2) << std::endl;
        return 1;
    }
}
