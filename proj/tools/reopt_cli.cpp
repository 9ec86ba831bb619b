#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reopt/errors.hpp"
#include "reopt/harness.hpp"
#include "reopt/verify.hpp"

namespace {

using reopt::ExperimentSpec;

std::vector<std::size_t> to_size_list(const nlohmann::json& v, const std::string& key) {
    std::vector<std::size_t> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(e.get<std::size_t>());
    } else {
        out.push_back(v.get<std::size_t>());
    }
    if (out.empty()) throw reopt::IoError("config: key '" + key + "' must not be empty");
    return out;
}

/// Config file keys mirror the flags one-to-one; flags given on the command
/// line win on conflict.
void apply_config(const std::string& path, ExperimentSpec& spec, std::string& out_stem) {
    std::ifstream in(path);
    if (!in) throw reopt::IoError(path + ": cannot open");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw reopt::IoError(path + ": " + e.what());
    }
    if (!j.is_object()) throw reopt::IoError(path + ": config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "problem")
                spec.problem = value.get<std::string>();
            else if (key == "variant")
                spec.variant = value.get<std::string>();
            else if (key == "algorithm")
                spec.algorithm = value.get<std::string>();
            else if (key == "gamma")
                spec.gamma_values = to_size_list(value, key);
            else if (key == "delta")
                spec.delta_values = to_size_list(value, key);
            else if (key == "coupled")
                spec.coupled = value.get<bool>();
            else if (key == "sign")
                spec.sign = value.get<int>();
            else if (key == "n")
                spec.n_values = to_size_list(value, key);
            else if (key == "reps")
                spec.repetitions = value.get<std::size_t>();
            else if (key == "seed")
                spec.base_seed = value.get<std::uint64_t>();
            else if (key == "budget")
                spec.max_evaluations = value.get<std::uint64_t>();
            else if (key == "milestones")
                spec.milestone_radii = to_size_list(value, key);
            else if (key == "epsilon")
                spec.epsilon = value.get<double>();
            else if (key == "jobs")
                spec.jobs = value.get<std::size_t>();
            else if (key == "instance")
                spec.instance_path = value.get<std::string>();
            else if (key == "flips")
                spec.flip_positions = to_size_list(value, key);
            else if (key == "out")
                out_stem = value.get<std::string>();
            else
                throw reopt::IoError(path + ": unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw reopt::IoError(path + ": " + e.what());
    }
}

struct SpecFlags {
    std::string problem, variant, algorithm, instance;
    std::vector<std::size_t> n_values, gamma_values, delta_values, milestones, flips;
    std::size_t reps = 1, jobs = 0;
    std::uint64_t seed = 1, budget = 0;
    double epsilon = 1.0;
    int sign = 1;
    bool coupled = false;
    std::string config, out;

    CLI::Option *o_problem = nullptr, *o_variant = nullptr, *o_algorithm = nullptr,
                *o_instance = nullptr, *o_n = nullptr, *o_gamma = nullptr, *o_delta = nullptr,
                *o_milestones = nullptr, *o_flips = nullptr, *o_reps = nullptr,
                *o_jobs = nullptr, *o_seed = nullptr, *o_budget = nullptr, *o_epsilon = nullptr,
                *o_sign = nullptr, *o_coupled = nullptr, *o_out = nullptr;
};

void add_common_flags(CLI::App& cmd, SpecFlags& f, bool lists) {
    f.o_problem = cmd.add_option("--problem", f.problem, "leadingones | linear | mst");
    f.o_variant = cmd.add_option(
        "--variant", f.variant,
        "leadingones: adversarial|random_neighbor|random_flips|explicit; "
        "linear: uniform|binval|onemax; mst: addition|removal");
    f.o_algorithm = cmd.add_option("--algorithm", f.algorithm, "rea | oea");
    if (lists) {
        f.o_n = cmd.add_option("--n", f.n_values, "size parameters");
        f.o_gamma = cmd.add_option("--gamma", f.gamma_values, "slot radii");
        f.o_delta = cmd.add_option("--delta", f.delta_values, "perturbation sizes");
        f.o_coupled =
            cmd.add_flag("--coupled", f.coupled, "zip gamma/delta lists instead of crossing");
    } else {
        f.n_values = {50};
        f.gamma_values = {1};
        f.delta_values = {1};
        f.o_n = cmd.add_option("--n", f.n_values[0], "size parameter");
        f.o_gamma = cmd.add_option("--gamma", f.gamma_values[0], "slot radius");
        f.o_delta = cmd.add_option("--delta", f.delta_values[0], "perturbation size");
    }
    f.o_reps = cmd.add_option("--reps", f.reps, "repetitions per cell");
    f.o_seed = cmd.add_option("--seed", f.seed, "base seed; repetition r uses seed+r");
    f.o_budget = cmd.add_option("--budget", f.budget,
                                "evaluation budget per run (0 = 200*L^2, at least 1e6)");
    f.o_milestones =
        cmd.add_option("--milestones", f.milestones, "tracked radii (default 0..delta)");
    f.o_epsilon = cmd.add_option("--epsilon", f.epsilon, "tail-check parameter");
    f.o_jobs = cmd.add_option("--jobs", f.jobs, "max concurrent repetitions (0 = all cores)");
    f.o_sign = cmd.add_option("--sign", f.sign, "linear bound shift: +1 or -1");
    f.o_instance = cmd.add_option("--instance", f.instance, "instance file");
    f.o_flips = cmd.add_option("--flip", f.flips, "explicit flip positions (leadingones)");
    cmd.add_option("--config", f.config, "JSON config; flags override its keys");
    f.o_out = cmd.add_option("--out", f.out, "output stem for <stem>.csv and <stem>.json");
}

ExperimentSpec merge_spec(const SpecFlags& f, std::string& out_stem) {
    ExperimentSpec spec;
    bool variant_given = f.o_variant->count() > 0;
    if (!f.config.empty()) {
        apply_config(f.config, spec, out_stem);
        variant_given = variant_given || spec.variant != ExperimentSpec{}.variant;
    }
    if (f.o_problem->count()) spec.problem = f.problem;
    if (f.o_variant->count()) spec.variant = f.variant;
    if (f.o_algorithm->count()) spec.algorithm = f.algorithm;
    if (f.o_n->count()) spec.n_values = f.n_values;
    if (f.o_gamma->count()) spec.gamma_values = f.gamma_values;
    if (f.o_delta->count()) spec.delta_values = f.delta_values;
    if (f.o_coupled && f.o_coupled->count()) spec.coupled = f.coupled;
    if (f.o_reps->count()) spec.repetitions = f.reps;
    if (f.o_seed->count()) spec.base_seed = f.seed;
    if (f.o_budget->count()) spec.max_evaluations = f.budget;
    if (f.o_milestones->count()) spec.milestone_radii = f.milestones;
    if (f.o_epsilon->count()) spec.epsilon = f.epsilon;
    if (f.o_jobs->count()) spec.jobs = f.jobs;
    if (f.o_sign->count()) spec.sign = f.sign;
    if (f.o_instance->count()) spec.instance_path = f.instance;
    if (f.o_flips->count()) spec.flip_positions = f.flips;
    if (f.o_out->count()) out_stem = f.out;

    if (!variant_given) {
        if (spec.problem == "linear") spec.variant = "uniform";
        if (spec.problem == "mst") spec.variant = "addition";
    }
    return spec;
}

int run_and_report(const ExperimentSpec& spec, const std::string& out_stem) {
    reopt::ExperimentResult result = reopt::run_experiment(spec, [](const std::string& line) {
        std::fprintf(stderr, "%s\n", line.c_str());
    });
    reopt::write_results(result, out_stem);
    std::fputs(reopt::render_table(result).c_str(), stdout);
    std::fprintf(stderr, "wrote %s.csv and %s.json\n", out_stem.c_str(), out_stem.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"re-optimization experiment runner"};
    app.require_subcommand(1);

    SpecFlags run_flags, sweep_flags;
    int exit_code = 0;

    CLI::App* cmd_run = app.add_subcommand("run", "run a single experiment");
    add_common_flags(*cmd_run, run_flags, false);
    cmd_run->callback([&]() {
        std::string out_stem = "reopt_out";
        exit_code = run_and_report(merge_spec(run_flags, out_stem), out_stem);
    });

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "run a grid of experiments over n/gamma/delta lists");
    add_common_flags(*cmd_sweep, sweep_flags, true);
    cmd_sweep->callback([&]() {
        std::string out_stem = "reopt_out";
        exit_code = run_and_report(merge_spec(sweep_flags, out_stem), out_stem);
    });

    std::uint64_t verify_seed = 1;
    std::string verify_out;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "run oracle cross-checks and invariant suites");
    cmd_verify->add_option("--seed", verify_seed, "seed for the randomized checks");
    cmd_verify->add_option("--out", verify_out, "optional JSON result file");
    cmd_verify->callback([&]() {
        const std::vector<reopt::CheckResult> checks = reopt::run_verify_suite(verify_seed);
        std::size_t failures = 0;
        for (const reopt::CheckResult& c : checks) {
            failures += !c.pass;
            std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                        c.detail.c_str());
        }
        std::printf("%zu/%zu checks passed\n", checks.size() - failures, checks.size());
        if (!verify_out.empty()) {
            nlohmann::ordered_json j;
            j["seed"] = verify_seed;
            j["checks"] = nlohmann::ordered_json::array();
            for (const reopt::CheckResult& c : checks)
                j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            j["failures"] = failures;
            std::ofstream out(verify_out, std::ios::binary);
            if (!out) throw reopt::IoError(verify_out + ": cannot open for writing");
            out << j.dump(2) << "\n";
        }
        exit_code = failures ? 1 : 0;
    });

    std::string report_in, report_out;
    double report_epsilon = 1.0;
    std::uint64_t report_seed = 0;
    CLI::App* cmd_report =
        app.add_subcommand("report", "recompute aggregates from a results CSV");
    cmd_report->add_option("--in", report_in, "results CSV")->required();
    cmd_report->add_option("--epsilon", report_epsilon,
                           "tail-check parameter used for the bound table");
    cmd_report->add_option("--seed", report_seed, "accepted for interface uniformity; unused");
    cmd_report->add_option("--out", report_out,
                           "optional stem to rewrite <stem>.csv and <stem>.json");
    cmd_report->callback([&]() {
        reopt::ExperimentResult result = reopt::read_results_csv(report_in, report_epsilon);
        std::fputs(reopt::render_table(result).c_str(), stdout);
        if (!report_out.empty()) reopt::write_results(result, report_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
