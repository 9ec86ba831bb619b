#pragma once

#include <cstdint>
#include <vector>

#include "reopt/bitstring.hpp"
#include "reopt/problems.hpp"

namespace reopt {

/// Exact optimum over the closed Hamming ball of the given radius.
struct BallOptimum {
    std::size_t radius = 0;
    FitnessValue best_value;
    Genome witness;
};

/// Exhaustive optimum over {y : H(y, anchor) <= radius}. Among optima the
/// witness flips the lexicographically smallest index set. Guarded: refuses
/// instances with n > 24 unless radius <= 3.
BallOptimum ball_optimum(const Problem& problem, const Genome& anchor, std::size_t radius);

/// The B largest-weight items, ties broken by lower index, with the value of
/// the resulting genome under the instance's penalty fitness. For
/// non-negative weights this is a global optimum; negative weights are
/// refused because the greedy argument no longer applies.
std::pair<Genome, FitnessValue> greedy_linear_optimum(const LinearConstrainedInstance& inst);

/// Kruskal's algorithm with union-find; ties broken by edge id. On a
/// disconnected graph this returns a minimum spanning forest.
struct MstResult {
    std::vector<std::size_t> edge_ids; // sorted ascending
    double total_weight = 0.0;
    std::size_t components = 1;

    Genome as_genome(std::size_t m) const;
};

MstResult mst_oracle(const GraphInstance& graph);

/// Probability that a bit subjected to t independent flips with probability
/// 1/n each still has its initial value: 1/2 + (1 - 2/n)^t / 2.
double neutral_bit_probability(std::size_t n, std::uint64_t t);

/// Optimal connected edge selection at Hamming distance exactly `distance`
/// from x_old, obtained by greedily removing the heaviest selected edge whose
/// removal keeps the selection connected (ties by lowest edge id). x_old must
/// select a connected spanning subgraph.
Genome greedy_edge_removal_witness(const Genome& x_old, const GraphInstance& graph,
                                   std::size_t distance);

} // namespace reopt
