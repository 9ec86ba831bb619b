#include "reopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "reopt/errors.hpp"
#include "reopt/instance_io.hpp"
#include "reopt/oracles.hpp"
#include "reopt/union_find.hpp"

namespace reopt {

namespace {

const std::set<std::string>& variants_for(const std::string& problem) {
    static const std::set<std::string> lo = {"adversarial", "random_neighbor", "random_flips",
                                             "explicit"};
    static const std::set<std::string> linear = {"uniform", "binval", "onemax"};
    static const std::set<std::string> mst = {"addition", "removal"};
    static const std::set<std::string> none = {};
    if (problem == "leadingones") return lo;
    if (problem == "linear") return linear;
    if (problem == "mst") return mst;
    return none;
}

} // namespace

void validate_spec(const ExperimentSpec& spec) {
    if (spec.problem != "leadingones" && spec.problem != "linear" && spec.problem != "mst")
        throw ContractError("spec: unknown problem '" + spec.problem + "'");
    const auto& variants = variants_for(spec.problem);
    if (!variants.count(spec.variant))
        throw ContractError("spec: unknown variant '" + spec.variant + "' for problem '" +
                            spec.problem + "'");
    if (spec.algorithm != "rea" && spec.algorithm != "oea")
        throw ContractError("spec: unknown algorithm '" + spec.algorithm + "'");
    if (spec.repetitions < 1) throw ContractError("spec: repetitions must be at least 1");
    if (spec.n_values.empty()) throw ContractError("spec: n list must not be empty");
    if (spec.gamma_values.empty()) throw ContractError("spec: gamma list must not be empty");
    if (spec.delta_values.empty()) throw ContractError("spec: delta list must not be empty");
    if (spec.coupled && spec.gamma_values.size() != spec.delta_values.size())
        throw ContractError("spec: coupled sweep needs gamma and delta lists of equal length");
    for (std::size_t d : spec.delta_values)
        if (d < 1) throw ContractError("spec: delta must be at least 1");
    if (spec.sign != 1 && spec.sign != -1) throw ContractError("spec: sign must be +1 or -1");
    if (spec.epsilon < 0) throw ContractError("spec: epsilon must be non-negative");
    if (spec.variant == "explicit") {
        if (spec.flip_positions.empty())
            throw ContractError("spec: explicit variant needs flip positions");
        for (std::size_t d : spec.delta_values)
            if (d != spec.flip_positions.size())
                throw ContractError(
                    "spec: explicit variant: delta must equal the number of flip positions");
    }
}

SummaryStats summarize(std::vector<double> values) {
    SummaryStats s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    const std::size_t k = values.size();
    s.median = k % 2 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(k);
    if (k > 1) {
        double ss = 0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(k - 1));
    }
    return s;
}

MilestoneRow check_upper_bound(const std::vector<RunRecord>& records, std::size_t radius,
                               std::size_t gamma, std::size_t genome_length, double epsilon) {
    MilestoneRow row;
    row.radius = radius;
    row.mu_plus = 2.0 * std::exp(1.0) * static_cast<double>(gamma + 1) *
                  static_cast<double>(radius) * static_cast<double>(genome_length);

    const std::size_t total = records.size();
    double sum = 0;
    std::size_t exceed = 0;
    const double threshold = (1.0 + epsilon) * row.mu_plus;
    for (const RunRecord& r : records) {
        auto it = r.milestones.find(radius);
        if (it == r.milestones.end()) {
            ++exceed;
            continue;
        }
        ++row.defined;
        sum += static_cast<double>(it->second);
        if (radius > 0 && static_cast<double>(it->second) >= threshold) ++exceed;
    }
    row.mean_t = row.defined ? sum / static_cast<double>(row.defined) : 0.0;
    row.mean_ok =
        radius == 0 || (row.defined == total && total > 0 && row.mean_t <= row.mu_plus);

    row.tail_cap = std::exp(-epsilon * epsilon * static_cast<double>(radius) /
                            (2.0 * (1.0 + epsilon)));
    if (total > 0) {
        row.exceed_rate = static_cast<double>(exceed) / static_cast<double>(total);
        row.allowance =
            3.0 * std::sqrt(std::max(row.tail_cap * (1.0 - row.tail_cap), 0.0) /
                            static_cast<double>(total));
    }
    row.tail_ok = row.exceed_rate <= row.tail_cap + row.allowance;
    return row;
}

CellResult aggregate_cell(CellKey key, std::vector<RunRecord> records,
                          const std::vector<std::size_t>& radii, double epsilon) {
    CellResult cell;
    cell.key = std::move(key);
    cell.n_param = cell.key.genome_length;

    std::vector<double> evals;
    evals.reserve(records.size());
    for (const RunRecord& r : records) {
        evals.push_back(static_cast<double>(r.evaluations_used));
        if (r.termination == Termination::TargetHit) ++cell.target_hits;
    }
    cell.evaluations = summarize(std::move(evals));
    for (std::size_t r : radii)
        cell.milestones.push_back(
            check_upper_bound(records, r, cell.key.gamma, cell.key.genome_length, epsilon));
    cell.records = std::move(records);
    return cell;
}

ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
    std::set<double> distinct;
    for (const auto& [x, y] : points) {
        if (x <= 0 || y <= 0)
            throw ContractError("fit_scaling_exponent: sizes and means must be positive");
        distinct.insert(x);
    }
    if (distinct.size() < 3)
        throw ContractError("fit_scaling_exponent: needs at least 3 distinct sizes");

    const std::size_t k = points.size();
    double sx = 0, sy = 0;
    std::vector<double> lx(k), ly(k);
    for (std::size_t i = 0; i < k; ++i) {
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / static_cast<double>(k);
    const double my = sy / static_cast<double>(k);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    ScalingFit fit;
    fit.points = k;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = ly[i] - (intercept + fit.exponent * lx[i]);
        ssr += r * r;
    }
    if (k > 2) fit.stderr_value = std::sqrt(ssr / static_cast<double>(k - 2) / sxx);
    return fit;
}

std::vector<GroupFit> compute_fits(const std::vector<CellResult>& cells) {
    struct Group {
        GroupFit head;
        std::vector<std::pair<double, double>> points;
    };
    std::vector<Group> groups;
    for (const CellResult& cell : cells) {
        auto match = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.head.problem == cell.key.problem && g.head.algorithm == cell.key.algorithm &&
                   g.head.gamma == cell.key.gamma && g.head.delta == cell.key.delta;
        });
        if (match == groups.end()) {
            groups.push_back(
                Group{GroupFit{cell.key.problem, cell.key.algorithm, cell.key.gamma,
                               cell.key.delta, {}},
                      {}});
            match = std::prev(groups.end());
        }
        match->points.emplace_back(static_cast<double>(cell.key.genome_length),
                                   cell.evaluations.mean);
    }

    std::vector<GroupFit> fits;
    for (Group& g : groups) {
        std::set<double> distinct;
        bool positive = true;
        for (const auto& [x, y] : g.points) {
            distinct.insert(x);
            positive = positive && y > 0;
        }
        if (distinct.size() < 3 || !positive) continue;
        g.head.fit = fit_scaling_exponent(g.points);
        fits.push_back(g.head);
    }
    return fits;
}

std::uint64_t instance_seed(std::uint64_t run_seed) {
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t auto_budget(std::size_t genome_length) {
    const std::uint64_t quadratic =
        200ULL * static_cast<std::uint64_t>(genome_length) * genome_length;
    return std::max<std::uint64_t>(1000000ULL, quadratic);
}

namespace {

std::vector<std::size_t> random_distinct_positions(std::size_t n, std::size_t count, Rng& rng) {
    if (count > n)
        throw ContractError("random flip positions: delta exceeds n");
    std::set<std::size_t> chosen;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (chosen.size() < count) chosen.insert(pick(rng));
    return {chosen.begin(), chosen.end()};
}

} // namespace

ReoptInstance build_instance(const ExperimentSpec& spec, std::size_t n, std::size_t gamma,
                             std::size_t delta, Rng& inst_rng) {
    (void)gamma;
    if (spec.problem == "leadingones") {
        Genome z;
        Permutation sigma;
        if (!spec.instance_path.empty()) {
            LeadingOnesInstance file = load_leadingones_instance(spec.instance_path);
            z = file.target;
            sigma = file.sigma;
            n = z.size();
        } else {
            z = Genome(n, true);
            sigma = identity_permutation(n);
        }
        if (spec.variant == "adversarial") {
            std::vector<std::size_t> positions;
            if (delta > n)
                throw ContractError("build_instance: delta exceeds n");
            for (std::size_t j = 0; j < delta; ++j) positions.push_back(sigma[j]);
            return make_leadingones_target_flip(z, std::move(sigma), positions);
        }
        if (spec.variant == "random_flips")
            return make_leadingones_target_flip(z, std::move(sigma),
                                                random_distinct_positions(n, delta, inst_rng));
        if (spec.variant == "explicit")
            return make_leadingones_target_flip(z, std::move(sigma), spec.flip_positions);
        if (spec.variant == "random_neighbor") {
            // The file target (or all-ones) is the new optimum; x_old sits one
            // flip away with new fitness at most n/2.
            std::uniform_int_distribution<std::size_t> pick(0, n / 2);
            const std::size_t flipped = sigma[pick(inst_rng)];
            Genome x_old = z;
            x_old.flip(flipped);
            return make_leadingones_target_flip(x_old, std::move(sigma), {flipped});
        }
    } else if (spec.problem == "linear") {
        std::vector<double> weights;
        std::size_t b_old;
        if (!spec.instance_path.empty()) {
            LinearConstrainedInstance file = load_linear_instance(spec.instance_path);
            weights = file.weights;
            b_old = file.bound;
        } else if (spec.variant == "binval") {
            weights = LinearConstrainedInstance::binval_weights(n);
            b_old = n / 2;
        } else if (spec.variant == "onemax") {
            weights = LinearConstrainedInstance::onemax_weights(n);
            b_old = n / 2;
        } else {
            std::uniform_int_distribution<std::uint64_t> draw(1, 1000000);
            weights.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                weights.push_back(static_cast<double>(draw(inst_rng)));
            b_old = n / 2;
        }
        return make_linear_reopt(weights, b_old, delta, spec.sign);
    } else if (spec.problem == "mst") {
        GraphInstance graph = spec.instance_path.empty()
                                  ? random_connected_graph(n, n + 1, inst_rng)
                                  : load_graph_instance(spec.instance_path);
        if (spec.variant == "addition")
            return make_mst_addition_reopt(graph, random_new_edges(graph, delta, inst_rng));
        return make_mst_removal_reopt(graph, random_removable_edge_ids(graph, delta, inst_rng));
    }
    throw ContractError("build_instance: unknown problem '" + spec.problem + "'");
}

namespace {

// Minimum-weight way to reduce the component count of a spanning forest by
// add_count: repeatedly add the cheapest edge joining two components (ties by
// edge id). Stops early once the selection is connected.
Genome kruskal_extension(const GraphInstance& graph, const Genome& forest,
                         std::size_t add_count) {
    UnionFind uf(graph.node_count);
    for (std::size_t id = 0; id < graph.m(); ++id)
        if (forest[id]) uf.unite(graph.edges[id].u, graph.edges[id].v);

    std::vector<std::size_t> order(graph.m());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (graph.edges[a].weight != graph.edges[b].weight)
            return graph.edges[a].weight < graph.edges[b].weight;
        return a < b;
    });

    Genome out = forest;
    std::size_t added = 0;
    for (std::size_t id : order) {
        if (added == add_count) break;
        if (out[id]) continue;
        if (uf.unite(graph.edges[id].u, graph.edges[id].v)) {
            out.set(id, true);
            ++added;
        }
    }
    return out;
}

} // namespace

std::vector<MilestoneTarget> milestone_targets(const ReoptInstance& inst,
                                               const std::vector<std::size_t>& radii) {
    std::vector<std::size_t> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    const Problem& problem = *inst.new_problem;
    std::vector<MilestoneTarget> out;
    out.reserve(sorted.size());

    if (auto* lo = dynamic_cast<const LeadingOnesProblem*>(&problem)) {
        const LeadingOnesInstance& li = lo->instance();
        std::vector<std::size_t> mismatch_by_rank;
        for (std::size_t j = 0; j < li.n(); ++j) {
            const std::size_t pos = li.sigma[j];
            if (inst.x_old[pos] != li.target[pos]) mismatch_by_rank.push_back(pos);
        }
        for (std::size_t r : sorted) {
            Genome witness = inst.x_old;
            for (std::size_t k = 0; k < std::min(r, mismatch_by_rank.size()); ++k)
                witness.flip(mismatch_by_rank[k]);
            out.push_back(MilestoneTarget{r, problem.evaluate(witness)});
        }
        return out;
    }

    if (auto* lin = dynamic_cast<const LinearPenaltyProblem*>(&problem)) {
        const LinearConstrainedInstance& li = lin->instance();
        const std::size_t ones = inst.x_old.count_ones();
        std::vector<std::size_t> pool;
        const bool growing = li.bound >= ones;
        for (std::size_t i = 0; i < li.n(); ++i)
            if (inst.x_old[i] != growing) pool.push_back(i);
        std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
            return growing ? li.weights[a] > li.weights[b] : li.weights[a] < li.weights[b];
        });
        const std::size_t span = growing ? li.bound - ones : ones - li.bound;
        for (std::size_t r : sorted) {
            Genome witness = inst.x_old;
            for (std::size_t k = 0; k < std::min(r, span); ++k) witness.flip(pool[k]);
            out.push_back(MilestoneTarget{r, problem.evaluate(witness)});
        }
        return out;
    }

    if (auto* mst = dynamic_cast<const MstProblem*>(&problem)) {
        const GraphInstance& graph = mst->graph();
        UnionFind uf(graph.node_count);
        for (std::size_t id = 0; id < graph.m(); ++id)
            if (inst.x_old[id]) uf.unite(graph.edges[id].u, graph.edges[id].v);
        const std::size_t components = uf.components();
        if (components == 1) {
            const std::size_t removable =
                inst.x_old.count_ones() - (graph.node_count - 1);
            for (std::size_t r : sorted) {
                Genome witness =
                    greedy_edge_removal_witness(inst.x_old, graph, std::min(r, removable));
                out.push_back(MilestoneTarget{r, problem.evaluate(witness)});
            }
        } else {
            for (std::size_t r : sorted) {
                Genome witness = kruskal_extension(graph, inst.x_old, r);
                out.push_back(MilestoneTarget{r, problem.evaluate(witness)});
            }
        }
        return out;
    }

    for (std::size_t r : sorted) {
        const std::size_t n = problem.dimension();
        if (n > 24 && r > 3)
            throw LimitError("milestone target for radius " + std::to_string(r) +
                             ": no closed form for problem '" + problem.name() +
                             "' and the exhaustive ball oracle guard (n <= 24 or radius <= 3) "
                             "is not satisfied");
        out.push_back(MilestoneTarget{r, ball_optimum(problem, inst.x_old, r).best_value});
    }
    return out;
}

namespace {

struct Combo {
    std::size_t gamma;
    std::size_t delta;
};

std::vector<Combo> enumerate_combos(const ExperimentSpec& spec) {
    std::vector<Combo> combos;
    if (spec.coupled) {
        for (std::size_t k = 0; k < spec.gamma_values.size(); ++k)
            combos.push_back(Combo{spec.gamma_values[k], spec.delta_values[k]});
    } else {
        for (std::size_t g : spec.gamma_values)
            for (std::size_t d : spec.delta_values) combos.push_back(Combo{g, d});
    }
    return combos;
}

std::vector<std::size_t> radii_for(const ExperimentSpec& spec, std::size_t delta) {
    if (!spec.milestone_radii.empty()) return spec.milestone_radii;
    std::vector<std::size_t> out(delta + 1);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

std::vector<RunRecord> run_cell(const ExperimentSpec& spec, std::size_t n, const Combo& combo,
                                const std::vector<std::size_t>& radii) {
    const std::size_t reps = spec.repetitions;
    std::vector<RunRecord> records(reps);
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&]() {
        while (true) {
            const std::size_t r = cursor.fetch_add(1);
            if (r >= reps) return;
            try {
                const std::uint64_t run_seed = spec.base_seed + r;
                Rng inst_rng(instance_seed(run_seed));
                ReoptInstance inst =
                    build_instance(spec, n, combo.gamma, combo.delta, inst_rng);
                const std::vector<MilestoneTarget> targets = milestone_targets(inst, radii);
                RunBudget budget;
                budget.max_evaluations =
                    spec.max_evaluations ? spec.max_evaluations
                                         : auto_budget(inst.new_problem->dimension());
                budget.target = inst.target_quality;
                if (spec.algorithm == "rea") {
                    ReaConfig cfg;
                    cfg.gamma = combo.gamma;
                    records[r] = rea_run(inst.x_old, *inst.new_problem, cfg, budget,
                                         RngSeed{run_seed}, targets);
                } else {
                    records[r] = oea_run(inst.x_old, *inst.new_problem, MutationConfig::standard(),
                                         budget, RngSeed{run_seed}, targets);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::size_t jobs = spec.jobs ? spec.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, reps);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return records;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                void (*progress)(const std::string&)) {
    validate_spec(spec);

    ExperimentResult result;
    result.spec = spec;

    const std::vector<Combo> combos = enumerate_combos(spec);
    std::set<std::size_t> radii_union;
    const std::size_t total_cells = combos.size() * spec.n_values.size();
    std::size_t done = 0;

    for (const Combo& combo : combos) {
        const std::vector<std::size_t> radii = radii_for(spec, combo.delta);
        radii_union.insert(radii.begin(), radii.end());
        for (std::size_t n : spec.n_values) {
            if (progress) {
                char line[160];
                std::snprintf(line, sizeof line,
                              "[%zu/%zu] %s %s n=%zu gamma=%zu delta=%zu reps=%zu", done + 1,
                              total_cells, spec.problem.c_str(), spec.algorithm.c_str(), n,
                              combo.gamma, combo.delta, spec.repetitions);
                progress(line);
            }
            std::vector<RunRecord> records = run_cell(spec, n, combo, radii);

            CellKey key;
            key.problem = spec.problem;
            key.algorithm = spec.algorithm;
            key.genome_length = records.front().final_best.size();
            key.gamma = combo.gamma;
            key.delta = combo.delta;

            CellResult cell = aggregate_cell(std::move(key), std::move(records), radii,
                                             spec.epsilon);
            cell.variant = spec.variant;
            cell.n_param = n;
            cell.sign = spec.sign;
            result.cells.push_back(std::move(cell));
            ++done;
        }
    }

    result.radii.assign(radii_union.begin(), radii_union.end());
    result.fits = compute_fits(result.cells);
    return result;
}

std::string results_csv(const ExperimentResult& result) {
    std::string out = "seed,n,gamma,delta,algorithm,problem,evaluations,termination";
    for (std::size_t r : result.radii) out += ",T_" + std::to_string(r);
    out += "\n";
    for (const CellResult& cell : result.cells) {
        for (const RunRecord& rec : cell.records) {
            out += std::to_string(rec.seed);
            out += "," + std::to_string(cell.key.genome_length);
            out += "," + std::to_string(cell.key.gamma);
            out += "," + std::to_string(cell.key.delta);
            out += "," + cell.key.algorithm;
            out += "," + cell.key.problem;
            out += "," + std::to_string(rec.evaluations_used);
            out += ",";
            out += termination_name(rec.termination);
            for (std::size_t r : result.radii) {
                auto it = rec.milestones.find(r);
                out += ",";
                if (it != rec.milestones.end()) out += std::to_string(it->second);
            }
            out += "\n";
        }
    }
    return out;
}

namespace {

nlohmann::ordered_json stats_json(const SummaryStats& s) {
    return nlohmann::ordered_json{{"mean", s.mean},     {"median", s.median}, {"min", s.min},
                                  {"max", s.max},       {"stddev", s.stddev}, {"count", s.count}};
}

} // namespace

std::string aggregate_json_text(const ExperimentResult& result) {
    nlohmann::ordered_json j;
    const ExperimentSpec& spec = result.spec;
    j["spec"] = {{"problem", spec.problem},
                 {"variant", spec.variant},
                 {"algorithm", spec.algorithm},
                 {"gamma", spec.gamma_values},
                 {"delta", spec.delta_values},
                 {"coupled", spec.coupled},
                 {"sign", spec.sign},
                 {"n", spec.n_values},
                 {"repetitions", spec.repetitions},
                 {"seed", spec.base_seed},
                 {"budget", spec.max_evaluations},
                 {"milestones", spec.milestone_radii},
                 {"epsilon", spec.epsilon},
                 {"instance", spec.instance_path}};
    j["radii"] = result.radii;

    j["cells"] = nlohmann::ordered_json::array();
    for (const CellResult& cell : result.cells) {
        nlohmann::ordered_json c;
        c["problem"] = cell.key.problem;
        c["variant"] = cell.variant;
        c["algorithm"] = cell.key.algorithm;
        c["n"] = cell.key.genome_length;
        c["n_param"] = cell.n_param;
        c["sign"] = cell.sign;
        c["gamma"] = cell.key.gamma;
        c["delta"] = cell.key.delta;
        c["target_hits"] = cell.target_hits;
        c["evaluations"] = stats_json(cell.evaluations);
        c["milestones"] = nlohmann::ordered_json::array();
        for (const MilestoneRow& row : cell.milestones) {
            c["milestones"].push_back({{"radius", row.radius},
                                       {"defined", row.defined},
                                       {"mean_T", row.mean_t},
                                       {"mu_plus", row.mu_plus},
                                       {"mean_ok", row.mean_ok},
                                       {"exceed_rate", row.exceed_rate},
                                       {"tail_cap", row.tail_cap},
                                       {"allowance", row.allowance},
                                       {"tail_ok", row.tail_ok}});
        }
        j["cells"].push_back(std::move(c));
    }

    j["fits"] = nlohmann::ordered_json::array();
    for (const GroupFit& f : result.fits) {
        j["fits"].push_back({{"problem", f.problem},
                             {"algorithm", f.algorithm},
                             {"gamma", f.gamma},
                             {"delta", f.delta},
                             {"points", f.fit.points},
                             {"exponent", f.fit.exponent},
                             {"stderr", f.fit.stderr_value}});
    }
    return j.dump(2) + "\n";
}

void write_results(const ExperimentResult& result, const std::string& out_stem) {
    const std::filesystem::path stem(out_stem);
    if (stem.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(stem.parent_path(), ec);
        if (ec) throw IoError(stem.parent_path().string() + ": cannot create directory");
    }
    for (const auto& [suffix, text] :
         {std::pair<const char*, std::string>{".csv", results_csv(result)},
          {".json", aggregate_json_text(result)}}) {
        const std::string path = out_stem + suffix;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError(path + ": cannot open for writing");
        out << text;
        if (!out) throw IoError(path + ": write failed");
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& path, std::size_t lineno,
                        const char* field) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(lineno) + ": field '" + field +
                      "': expected integer, got '" + text + "'");
    }
}

} // namespace

ExperimentResult read_results_csv(const std::string& path, double epsilon) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open");

    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_csv_line(line);
    const std::vector<std::string> fixed = {"seed",    "n",           "gamma",
                                            "delta",   "algorithm",   "problem",
                                            "evaluations", "termination"};
    if (header.size() < fixed.size())
        throw IoError(path + ":1: incomplete header");
    for (std::size_t i = 0; i < fixed.size(); ++i)
        if (header[i] != fixed[i])
            throw IoError(path + ":1: expected column '" + fixed[i] + "', got '" + header[i] +
                          "'");
    std::vector<std::size_t> radii;
    for (std::size_t i = fixed.size(); i < header.size(); ++i) {
        if (header[i].rfind("T_", 0) != 0)
            throw IoError(path + ":1: expected milestone column, got '" + header[i] + "'");
        radii.push_back(parse_u64(header[i].substr(2), path, 1, "radius"));
    }

    std::vector<CellKey> order;
    std::vector<std::vector<RunRecord>> groups;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != header.size())
            throw IoError(path + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(header.size()) + " fields, got " +
                          std::to_string(f.size()));

        CellKey key;
        key.problem = f[5];
        key.algorithm = f[4];
        key.genome_length = parse_u64(f[1], path, lineno, "n");
        key.gamma = parse_u64(f[2], path, lineno, "gamma");
        key.delta = parse_u64(f[3], path, lineno, "delta");

        RunRecord rec;
        rec.seed = parse_u64(f[0], path, lineno, "seed");
        rec.evaluations_used = parse_u64(f[6], path, lineno, "evaluations");
        if (f[7] == "target_hit")
            rec.termination = Termination::TargetHit;
        else if (f[7] == "budget_exhausted")
            rec.termination = Termination::BudgetExhausted;
        else
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": field 'termination': unknown value '" + f[7] + "'");
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const std::string& cellv = f[8 + i];
            if (cellv.empty()) continue;
            rec.milestones[radii[i]] = parse_u64(cellv, path, lineno, header[8 + i].c_str());
        }

        auto it = std::find(order.begin(), order.end(), key);
        if (it == order.end()) {
            order.push_back(key);
            groups.emplace_back();
            it = std::prev(order.end());
        }
        groups[static_cast<std::size_t>(it - order.begin())].push_back(std::move(rec));
    }

    ExperimentResult result;
    result.spec.epsilon = epsilon;
    result.radii = radii;
    for (std::size_t g = 0; g < order.size(); ++g)
        result.cells.push_back(aggregate_cell(order[g], std::move(groups[g]), radii, epsilon));
    result.fits = compute_fits(result.cells);
    return result;
}

namespace {

void append_row(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    out += buf;
    out += "\n";
}

} // namespace

std::string render_table(const ExperimentResult& result) {
    std::string out;
    append_row(out, "%-12s %-4s %6s %5s %5s %5s %5s %12s %12s %10s %10s %10s", "problem", "algo",
               "n", "gamma", "delta", "reps", "hits", "mean", "median", "min", "max", "stddev");
    for (const CellResult& cell : result.cells) {
        append_row(out, "%-12s %-4s %6zu %5zu %5zu %5zu %5zu %12.2f %12.1f %10.0f %10.0f %10.2f",
                   cell.key.problem.c_str(), cell.key.algorithm.c_str(), cell.key.genome_length,
                   cell.key.gamma, cell.key.delta, cell.evaluations.count, cell.target_hits,
                   cell.evaluations.mean, cell.evaluations.median, cell.evaluations.min,
                   cell.evaluations.max, cell.evaluations.stddev);
    }

    bool any_milestones = false;
    for (const CellResult& cell : result.cells) any_milestones |= !cell.milestones.empty();
    if (any_milestones) {
        out += "\n";
        append_row(out, "%-12s %-4s %6s %5s %5s %6s %7s %12s %12s %7s %8s %8s %7s", "problem",
                   "algo", "n", "gamma", "delta", "radius", "defined", "mean_T", "mu_plus",
                   "mean_ok", "exceed", "cap+3s", "tail_ok");
        for (const CellResult& cell : result.cells) {
            for (const MilestoneRow& row : cell.milestones) {
                append_row(out,
                           "%-12s %-4s %6zu %5zu %5zu %6zu %7zu %12.2f %12.1f %7s %8.4f %8.4f %7s",
                           cell.key.problem.c_str(), cell.key.algorithm.c_str(),
                           cell.key.genome_length, cell.key.gamma, cell.key.delta, row.radius,
                           row.defined, row.mean_t, row.mu_plus, row.mean_ok ? "yes" : "no",
                           row.exceed_rate, row.tail_cap + row.allowance,
                           row.tail_ok ? "yes" : "no");
            }
        }
    }

    if (!result.fits.empty()) {
        out += "\n";
        append_row(out, "%-12s %-4s %5s %5s %6s %9s %9s", "problem", "algo", "gamma", "delta",
                   "points", "exponent", "stderr");
        for (const GroupFit& f : result.fits) {
            append_row(out, "%-12s %-4s %5zu %5zu %6zu %9.3f %9.3f", f.problem.c_str(),
                       f.algorithm.c_str(), f.gamma, f.delta, f.fit.points, f.fit.exponent,
                       f.fit.stderr_value);
        }
    }
    return out;
}

} // namespace reopt
