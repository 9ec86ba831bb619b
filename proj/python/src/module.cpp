#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reopt/harness.hpp"
#include "reopt/oracles.hpp"
#include "reopt/perturb.hpp"
#include "reopt/rea.hpp"

namespace py = pybind11;
using namespace reopt;
using nlohmann::json;

namespace {

std::vector<std::size_t> to_size_list(const json& v) {
    if (v.is_number_unsigned() || v.is_number_integer())
        return {v.get<std::size_t>()};
    return v.get<std::vector<std::size_t>>();
}

/// Accepts the same keys as the CLI config file.
ExperimentSpec spec_from_json(const std::string& text) {
    json doc = json::parse(text);
    ExperimentSpec spec;
    for (const auto& [key, value] : doc.items()) {
        if (key == "problem") spec.problem = value.get<std::string>();
        else if (key == "variant") spec.variant = value.get<std::string>();
        else if (key == "algorithm") spec.algorithm = value.get<std::string>();
        else if (key == "gamma") spec.gamma_values = to_size_list(value);
        else if (key == "delta") spec.delta_values = to_size_list(value);
        else if (key == "coupled") spec.coupled = value.get<bool>();
        else if (key == "sign") spec.sign = value.get<int>();
        else if (key == "n") spec.n_values = to_size_list(value);
        else if (key == "reps") spec.repetitions = value.get<std::size_t>();
        else if (key == "seed") spec.base_seed = value.get<std::uint64_t>();
        else if (key == "budget") spec.max_evaluations = value.get<std::uint64_t>();
        else if (key == "milestones") spec.milestone_radii = to_size_list(value);
        else if (key == "epsilon") spec.epsilon = value.get<double>();
        else if (key == "jobs") spec.jobs = value.get<std::size_t>();
        else if (key == "instance") spec.instance_path = value.get<std::string>();
        else if (key == "flips") spec.flip_positions = to_size_list(value);
        else throw IoError("unknown spec key: " + key);
    }
    return spec;
}

GraphInstance graph_from_edges(std::size_t node_count,
                               const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
    std::vector<GraphEdge> list;
    for (const auto& [u, v, w] : edges) list.push_back(GraphEdge{u, v, w});
    return GraphInstance(node_count, std::move(list));
}

py::dict record_to_dict(const RunRecord& rec) {
    py::dict d;
    d["seed"] = rec.seed;
    d["evaluations"] = rec.evaluations_used;
    d["termination"] = termination_name(rec.termination);
    d["final"] = rec.final_best.to_string();
    d["fitness"] = rec.final_fitness.to_string();
    py::dict stamps;
    for (const auto& [radius, t] : rec.milestones) stamps[py::int_(radius)] = t;
    d["milestones"] = stamps;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "core bindings for the (gamma+1) re-optimization EA";
    m.attr("__version__") = "1.0.0";

    m.def(
        "hamming",
        [](const std::string& a, const std::string& b) {
            return hamming_distance(Genome::from_string(a), Genome::from_string(b));
        },
        py::arg("a"), py::arg("b"), "Hamming distance between two 0/1 strings.");

    m.def(
        "leading_ones",
        [](const std::string& target, const std::string& x,
           std::optional<std::vector<std::size_t>> sigma) {
            LeadingOnesInstance inst(Genome::from_string(target),
                                     sigma ? std::move(*sigma)
                                           : identity_permutation(target.size()));
            return leadingones_value(inst, Genome::from_string(x));
        },
        py::arg("target"), py::arg("x"), py::arg("sigma") = std::nullopt,
        "Generalized LeadingOnes value of x against a target string and bit order.");

    m.def("neutral_bit_probability", &neutral_bit_probability, py::arg("n"), py::arg("t"),
          "Probability a bit keeps its value after t rounds of rate-1/n flips.");

    m.def(
        "greedy_linear_optimum",
        [](const std::vector<long long>& weights, std::size_t bound) {
            std::vector<double> wd(weights.begin(), weights.end());
            LinearConstrainedInstance inst(std::move(wd), bound);
            auto [genome, value] = greedy_linear_optimum(inst);
            return py::make_tuple(genome.to_string(), value.to_string());
        },
        py::arg("weights"), py::arg("bound"),
        "Optimal bounded selection for non-negative weights: (genome, value).");

    m.def(
        "mst",
        [](std::size_t node_count,
           const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
            const GraphInstance g = graph_from_edges(node_count, edges);
            const MstResult r = mst_oracle(g);
            return py::make_tuple(r.edge_ids, r.total_weight, r.components);
        },
        py::arg("node_count"), py::arg("edges"),
        "Minimum spanning forest: (edge ids, total weight, components).");

    m.def(
        "repair",
        [](const std::string& problem, const std::string& variant, std::size_t n,
           std::size_t gamma, std::size_t delta, std::uint64_t seed, int sign,
           std::uint64_t budget) {
            ExperimentSpec spec;
            spec.problem = problem;
            spec.variant = variant;
            spec.gamma_values = {gamma};
            spec.delta_values = {delta};
            spec.n_values = {n};
            spec.sign = sign;
            spec.base_seed = seed;
            validate_spec(spec);
            Rng inst_rng(instance_seed(seed));
            const ReoptInstance inst = build_instance(spec, n, gamma, delta, inst_rng);
            ReaConfig cfg;
            cfg.gamma = gamma;
            RunBudget run_budget;
            run_budget.max_evaluations =
                budget ? budget : auto_budget(inst.x_old.size());
            run_budget.target = inst.target_quality;
            const RunRecord rec = rea_run(inst.x_old, *inst.new_problem, cfg, run_budget,
                                          RngSeed{seed});
            return record_to_dict(rec);
        },
        py::arg("problem"), py::arg("variant"), py::arg("n"), py::arg("gamma"),
        py::arg("delta"), py::arg("seed"), py::arg("sign") = 1, py::arg("budget") = 0,
        "One re-optimization run on a generated instance; returns the run record.");

    m.def(
        "run_experiment_json",
        [](const std::string& spec_json) {
            const ExperimentSpec spec = spec_from_json(spec_json);
            validate_spec(spec);
            ExperimentResult result;
            {
                py::gil_scoped_release release;
                result = run_experiment(spec);
            }
            return py::make_tuple(results_csv(result), aggregate_json_text(result),
                                  render_table(result));
        },
        py::arg("spec_json"),
        "Full experiment from a JSON spec; returns (csv, aggregate json, table).");
}
