#include "reopt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reopt/errors.hpp"
#include "reopt/union_find.hpp"

namespace reopt {

namespace {

// Advances `comb` (sorted, size k, values < n) to the next combination in
// lexicographic order. Returns false when exhausted.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (comb[i] != i + n - k) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

BallOptimum ball_optimum(const Problem& problem, const Genome& anchor, std::size_t radius) {
    const std::size_t n = problem.dimension();
    if (anchor.size() != n)
        throw ContractError("ball_optimum: anchor length does not match problem dimension");
    if (n > 24 && radius > 3)
        throw LimitError("ball_optimum: refusing n > 24 with radius > 3 (enumeration guard)");

    const Direction dir = problem.direction();
    BallOptimum out;
    out.radius = radius;
    out.best_value = problem.evaluate(anchor);
    out.witness = anchor;
    std::vector<std::size_t> best_flips;

    const std::size_t max_k = std::min(radius, n);
    for (std::size_t k = 1; k <= max_k; ++k) {
        std::vector<std::size_t> comb(k);
        std::iota(comb.begin(), comb.end(), std::size_t{0});
        do {
            Genome y = flip_bits(anchor, comb);
            FitnessValue v = problem.evaluate(y);
            if (fitness_strictly_better(dir, v, out.best_value)) {
                out.best_value = v;
                out.witness = std::move(y);
                best_flips = comb;
            } else if (!fitness_strictly_better(dir, out.best_value, v) &&
                       lex_less(comb, best_flips)) {
                out.witness = std::move(y);
                best_flips = comb;
            }
        } while (next_combination(comb, n));
    }
    return out;
}

std::pair<Genome, FitnessValue> greedy_linear_optimum(const LinearConstrainedInstance& inst) {
    const std::size_t n = inst.weights.size();
    for (double w : inst.weights)
        if (w < 0.0)
            throw ContractError("greedy_linear_optimum: negative weights are not supported");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (inst.weights[a] != inst.weights[b]) return inst.weights[a] > inst.weights[b];
        return a < b;
    });

    Genome g(n);
    for (std::size_t i = 0; i < inst.bound; ++i) g.set(order[i], true);
    LinearPenaltyProblem problem(inst);
    return {g, problem.evaluate(g)};
}

Genome MstResult::as_genome(std::size_t m) const {
    Genome g(m);
    for (std::size_t id : edge_ids) {
        if (id >= m) throw ContractError("MstResult::as_genome: edge id out of range");
        g.set(id, true);
    }
    return g;
}

MstResult mst_oracle(const GraphInstance& graph) {
    const std::size_t m = graph.m();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (graph.edges[a].weight != graph.edges[b].weight)
            return graph.edges[a].weight < graph.edges[b].weight;
        return a < b;
    });

    MstResult out;
    UnionFind uf(graph.node_count);
    for (std::size_t id : order) {
        const GraphEdge& e = graph.edges[id];
        if (uf.unite(e.u, e.v)) {
            out.edge_ids.push_back(id);
            out.total_weight += e.weight;
        }
    }
    std::sort(out.edge_ids.begin(), out.edge_ids.end());
    out.components = uf.components();
    return out;
}

double neutral_bit_probability(std::size_t n, std::uint64_t t) {
    if (n < 2)
        throw ContractError("neutral_bit_probability: requires n >= 2");
    return 0.5 + 0.5 * std::pow(1.0 - 2.0 / static_cast<double>(n), static_cast<double>(t));
}

namespace {

bool selection_connected(const GraphInstance& graph, const std::vector<char>& selected,
                         std::size_t skip_id) {
    UnionFind uf(graph.node_count);
    for (std::size_t id = 0; id < graph.m(); ++id) {
        if (!selected[id] || id == skip_id) continue;
        uf.unite(graph.edges[id].u, graph.edges[id].v);
    }
    return uf.components() == 1;
}

} // namespace

Genome greedy_edge_removal_witness(const Genome& x_old, const GraphInstance& graph,
                                   std::size_t distance) {
    const std::size_t m = graph.m();
    if (x_old.size() != m)
        throw ContractError("greedy_edge_removal_witness: genome length does not match edge count");

    std::vector<char> selected(m, 0);
    for (std::size_t id = 0; id < m; ++id) selected[id] = x_old[id] ? 1 : 0;
    constexpr std::size_t no_skip = static_cast<std::size_t>(-1);
    if (!selection_connected(graph, selected, no_skip))
        throw ContractError("greedy_edge_removal_witness: anchor selection is not connected");

    for (std::size_t step = 0; step < distance; ++step) {
        std::size_t pick = no_skip;
        for (std::size_t id = 0; id < m; ++id) {
            if (!selected[id]) continue;
            if (!selection_connected(graph, selected, id)) continue;
            if (pick == no_skip || graph.edges[id].weight > graph.edges[pick].weight)
                pick = id;
        }
        if (pick == no_skip)
            throw ContractError("greedy_edge_removal_witness: no connected solution at distance " +
                                std::to_string(step + 1));
        selected[pick] = 0;
    }

    Genome g(m);
    for (std::size_t id = 0; id < m; ++id)
        if (selected[id]) g.set(id, true);
    return g;
}

} // namespace reopt
