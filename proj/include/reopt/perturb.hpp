#pragma once

#include <cstdint>
#include <vector>

#include "reopt/bitstring.hpp"
#include "reopt/problems.hpp"

namespace reopt {

/// A re-optimization task: the previous optimum x_old, the perturbed problem
/// it must be repaired against, and the fitness quality that counts as done.
/// delta_true is the smallest Hamming radius around x_old containing a
/// solution of that quality.
struct ReoptInstance {
    ProblemPtr old_problem;
    ProblemPtr new_problem;
    Genome x_old;
    FitnessValue target_quality;
    std::size_t delta_true = 0;
};

// LeadingOnes target flips. All constructors make x_old the optimum of the
// old target and set target_quality to the new optimum value n.

/// Core form: old target z_old (= x_old), new target = z_old with the given
/// positions flipped.
ReoptInstance make_leadingones_target_flip(const Genome& z_old, Permutation sigma,
                                           const std::vector<std::size_t>& flip_positions);

/// Old target z = all-ones; new target flips the given positions of z;
/// x_old = z.
ReoptInstance make_leadingones_reopt(std::size_t n, Permutation sigma,
                                     const std::vector<std::size_t>& flip_positions);

/// Worst-case start: new target is all-ones and x_old disagrees with it in
/// exactly the first `delta` positions checked by sigma, so the new fitness
/// of x_old is 0.
ReoptInstance make_leadingones_adversarial(std::size_t n, std::size_t delta, Permutation sigma);

/// x_old is a uniformly random Hamming neighbor of the all-ones optimum with
/// new fitness at most n/2; delta_true = 1.
ReoptInstance make_leadingones_random_neighbor(std::size_t n, Permutation sigma, Rng& rng);

// Constrained linear: the cardinality bound moves from B_old to B_old ± delta.

/// Requires delta >= 1 and delta <= min{B_old, n - B_old}; weights must be
/// non-negative. x_old is the greedy optimum at bound B_old; target_quality
/// is the greedy optimum value at the shifted bound.
ReoptInstance make_linear_reopt(const std::vector<double>& weights, std::size_t b_old,
                                std::size_t delta, int sign);

// Minimum spanning tree: edges appear or disappear.

/// Appends `new_edges` to a connected graph. x_old is the old MST genome
/// extended by ones for every added edge; delta_true = |new_edges|.
ReoptInstance make_mst_addition_reopt(const GraphInstance& graph,
                                      const std::vector<GraphEdge>& new_edges);

/// Deletes the given edge ids (genome positions are dropped, surviving edge
/// order preserved). x_old is the truncated old MST genome, a spanning forest
/// with delta_true + 1 components where delta_true counts removed MST edges.
/// Refuses removals that disconnect the graph, naming a violated cut.
ReoptInstance make_mst_removal_reopt(const GraphInstance& graph,
                                     const std::vector<std::size_t>& removed_edge_ids);

// Random generators for the experiment harness.

/// Connected graph: a random spanning tree plus `extra_edges` distinct
/// non-parallel edges, weights pairwise-distinct integers from [1, W] with
/// W = max(1000, 2(nv - 1 + extra_edges)).
GraphInstance random_connected_graph(std::size_t node_count, std::size_t extra_edges, Rng& rng);

/// `count` fresh edges absent from the graph (no parallels, no self-loops),
/// weights pairwise distinct and distinct from every existing weight.
std::vector<GraphEdge> random_new_edges(const GraphInstance& graph, std::size_t count, Rng& rng);

/// `count` distinct edge ids whose joint removal keeps the graph connected,
/// sampled one at a time uniformly among the currently safe choices.
std::vector<std::size_t> random_removable_edge_ids(const GraphInstance& graph, std::size_t count,
                                                   Rng& rng);

} // namespace reopt
