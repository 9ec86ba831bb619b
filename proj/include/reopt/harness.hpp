#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reopt/perturb.hpp"
#include "reopt/rea.hpp"

namespace reopt {

/// Declarative experiment: a problem family plus perturbation, an algorithm,
/// and the grid of sizes and parameters to run it over. `run` uses single
/// gamma/delta values; `sweep` takes lists (cartesian product, or zipped
/// pairs when `coupled` is set). Repetition r runs with seed base_seed + r.
struct ExperimentSpec {
    std::string problem = "leadingones"; // leadingones | linear | mst
    std::string variant = "adversarial"; // see build_instance
    std::string algorithm = "rea";       // rea | oea
    std::vector<std::size_t> gamma_values = {1};
    std::vector<std::size_t> delta_values = {1};
    bool coupled = false;
    int sign = 1;                        // linear bound shift direction
    std::vector<std::size_t> n_values = {50};
    std::size_t repetitions = 1;
    std::uint64_t base_seed = 1;
    std::uint64_t max_evaluations = 0;   // 0 = auto (200 * L^2, at least 1e6)
    std::vector<std::size_t> milestone_radii; // empty = 0..delta
    double epsilon = 1.0;                // tail-check parameter
    std::size_t jobs = 0;                // 0 = hardware concurrency
    std::string instance_path;           // optional instance file
    std::vector<std::size_t> flip_positions; // explicit LeadingOnes flips
};

void validate_spec(const ExperimentSpec& spec);

struct SummaryStats {
    double mean = 0, median = 0, min = 0, max = 0, stddev = 0;
    std::size_t count = 0;
};

SummaryStats summarize(std::vector<double> values);

/// Bound report for one tracked radius: mean T_i against mu+ = 2e(gamma+1)in,
/// and the exceedance rate of (1+epsilon)mu+ against the tail cap
/// exp(-epsilon^2 i / (2(1+epsilon))) plus a 3-sigma binomial allowance.
/// Radius 0 is the initialization itself; its mean check is vacuous.
struct MilestoneRow {
    std::size_t radius = 0;
    std::size_t defined = 0;
    double mean_t = 0;
    double mu_plus = 0;
    bool mean_ok = true;
    double exceed_rate = 0;
    double tail_cap = 0;
    double allowance = 0;
    bool tail_ok = true;
};

MilestoneRow check_upper_bound(const std::vector<RunRecord>& records, std::size_t radius,
                               std::size_t gamma, std::size_t genome_length, double epsilon);

struct CellKey {
    std::string problem;
    std::string algorithm;
    std::size_t genome_length = 0; // the CSV "n" column
    std::size_t gamma = 0;
    std::size_t delta = 0;

    bool operator==(const CellKey&) const = default;
};

struct CellResult {
    CellKey key;
    std::string variant;        // display only; not in the CSV
    std::size_t n_param = 0;    // generator size parameter (nodes for mst)
    int sign = 1;
    std::vector<RunRecord> records;
    SummaryStats evaluations;
    std::size_t target_hits = 0;
    std::vector<MilestoneRow> milestones;
};

CellResult aggregate_cell(CellKey key, std::vector<RunRecord> records,
                          const std::vector<std::size_t>& radii, double epsilon);

struct ScalingFit {
    double exponent = 0;
    double stderr_value = 0;
    std::size_t points = 0;
};

/// Least-squares slope of log(mean) vs log(n) over (n, mean) pairs. Requires
/// at least 3 distinct n and positive means.
ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& points);

struct GroupFit {
    std::string problem;
    std::string algorithm;
    std::size_t gamma = 0;
    std::size_t delta = 0;
    ScalingFit fit;
};

/// One fit per (problem, algorithm, gamma, delta) group having at least 3
/// distinct genome lengths, in first-appearance order.
std::vector<GroupFit> compute_fits(const std::vector<CellResult>& cells);

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<std::size_t> radii; // tracked milestone radii (CSV T_ columns)
    std::vector<CellResult> cells;
    std::vector<GroupFit> fits;
};

/// Runs every (gamma, delta, n) cell of the spec; repetitions execute in
/// parallel (spec.jobs threads) with output independent of the thread count.
/// An optional progress callback receives one line per started cell.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                void (*progress)(const std::string&) = nullptr);

/// Instance construction for one repetition (deterministic in inst_rng).
ReoptInstance build_instance(const ExperimentSpec& spec, std::size_t n, std::size_t gamma,
                             std::size_t delta, Rng& inst_rng);

/// Per-radius fitness targets (the radius-i Hamming ball optima around
/// x_old), computed family-specifically in closed form; unknown problems fall
/// back to the exhaustive ball oracle within its guards.
std::vector<MilestoneTarget> milestone_targets(const ReoptInstance& inst,
                                               const std::vector<std::size_t>& radii);

/// Decorrelates the instance stream from the run stream of the same seed.
std::uint64_t instance_seed(std::uint64_t run_seed);

std::uint64_t auto_budget(std::size_t genome_length);

// Persistence: <stem>.csv per-run rows, <stem>.json aggregate. Byte-stable
// for identical inputs.
std::string results_csv(const ExperimentResult& result);
std::string aggregate_json_text(const ExperimentResult& result);
void write_results(const ExperimentResult& result, const std::string& out_stem);

/// Parses a results CSV and recomputes all aggregates (cells in
/// first-appearance order, fits per group). The returned result's spec field
/// carries only epsilon.
ExperimentResult read_results_csv(const std::string& path, double epsilon);

/// Fixed-width summary table shared by `run`, `sweep`, and `report`: built
/// only from CSV-derivable fields so a report reproduces it byte-for-byte.
std::string render_table(const ExperimentResult& result);

} // namespace reopt
