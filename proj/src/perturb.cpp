#include "reopt/perturb.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "reopt/errors.hpp"
#include "reopt/oracles.hpp"
#include "reopt/union_find.hpp"

namespace reopt {

namespace {

Genome all_ones(std::size_t n) {
    Genome g(n);
    for (std::size_t i = 0; i < n; ++i) g.set(i, true);
    return g;
}

void check_sigma(std::size_t n, const Permutation& sigma) {
    if (sigma.size() != n || !is_permutation(sigma))
        throw ContractError("leadingones reopt: sigma is not a permutation of [0..n-1]");
}

} // namespace

ReoptInstance make_leadingones_target_flip(const Genome& z_old, Permutation sigma,
                                           const std::vector<std::size_t>& flip_positions) {
    const std::size_t n = z_old.size();
    check_sigma(n, sigma);
    if (flip_positions.empty())
        throw ContractError("make_leadingones_target_flip: at least one flip position required");

    Genome z_new = flip_bits(z_old, flip_positions);

    ReoptInstance out;
    out.old_problem = std::make_shared<LeadingOnesProblem>(LeadingOnesInstance(z_old, sigma));
    out.new_problem = std::make_shared<LeadingOnesProblem>(
        LeadingOnesInstance(std::move(z_new), std::move(sigma)));
    out.x_old = z_old;
    out.target_quality = FitnessValue::scalar(static_cast<double>(n));
    out.delta_true = flip_positions.size();
    return out;
}

ReoptInstance make_leadingones_reopt(std::size_t n, Permutation sigma,
                                     const std::vector<std::size_t>& flip_positions) {
    return make_leadingones_target_flip(all_ones(n), std::move(sigma), flip_positions);
}

ReoptInstance make_leadingones_adversarial(std::size_t n, std::size_t delta, Permutation sigma) {
    check_sigma(n, sigma);
    if (delta < 1 || delta > n)
        throw ContractError("make_leadingones_adversarial: delta must be in [1, n]");

    // x_old disagrees with the all-ones target in exactly the first delta
    // positions checked by sigma.
    Genome x_old = all_ones(n);
    std::vector<std::size_t> positions;
    positions.reserve(delta);
    for (std::size_t j = 0; j < delta; ++j) positions.push_back(sigma[j]);
    for (std::size_t p : positions) x_old.flip(p);
    return make_leadingones_target_flip(x_old, std::move(sigma), positions);
}

ReoptInstance make_leadingones_random_neighbor(std::size_t n, Permutation sigma, Rng& rng) {
    check_sigma(n, sigma);
    if (n < 2)
        throw ContractError("make_leadingones_random_neighbor: requires n >= 2");

    // Flipping the bit checked j-th leaves new fitness exactly j, so drawing
    // j <= n/2 enforces the low-fitness start.
    std::uniform_int_distribution<std::size_t> pick(0, n / 2);
    const std::size_t j = pick(rng);

    Genome x_old = all_ones(n);
    x_old.flip(sigma[j]);
    const std::size_t flipped = sigma[j];
    return make_leadingones_target_flip(x_old, std::move(sigma), {flipped});
}

ReoptInstance make_linear_reopt(const std::vector<double>& weights, std::size_t b_old,
                                std::size_t delta, int sign) {
    const std::size_t n = weights.size();
    if (sign != 1 && sign != -1)
        throw ContractError("make_linear_reopt: sign must be +1 or -1");
    if (delta < 1 || delta > std::min(b_old, n - b_old))
        throw ContractError("make_linear_reopt: requires 1 <= delta <= min{B_old, n - B_old}");

    LinearConstrainedInstance old_inst(weights, b_old);
    const std::size_t b_new = sign > 0 ? b_old + delta : b_old - delta;
    LinearConstrainedInstance new_inst(weights, b_new);

    auto [x_old, old_value] = greedy_linear_optimum(old_inst);
    auto [x_new, new_value] = greedy_linear_optimum(new_inst);
    (void)old_value;
    (void)x_new;

    ReoptInstance out;
    out.old_problem = std::make_shared<LinearPenaltyProblem>(std::move(old_inst));
    out.new_problem = std::make_shared<LinearPenaltyProblem>(std::move(new_inst));
    out.x_old = std::move(x_old);
    out.target_quality = new_value;
    out.delta_true = delta;
    return out;
}

namespace {

std::pair<std::size_t, std::size_t> normalized(const GraphEdge& e) {
    return {std::min(e.u, e.v), std::max(e.u, e.v)};
}

} // namespace

ReoptInstance make_mst_addition_reopt(const GraphInstance& graph,
                                      const std::vector<GraphEdge>& new_edges) {
    if (new_edges.empty())
        throw ContractError("make_mst_addition_reopt: at least one added edge required");
    if (!graph.is_connected())
        throw ContractError("make_mst_addition_reopt: old graph must be connected");

    std::set<std::pair<std::size_t, std::size_t>> present;
    for (const GraphEdge& e : graph.edges) present.insert(normalized(e));
    for (const GraphEdge& e : new_edges) {
        if (!present.insert(normalized(e)).second)
            throw ContractError("make_mst_addition_reopt: duplicate edge " +
                                std::to_string(e.u) + "-" + std::to_string(e.v));
    }

    std::vector<GraphEdge> combined = graph.edges;
    combined.insert(combined.end(), new_edges.begin(), new_edges.end());
    GraphInstance new_graph(graph.node_count, std::move(combined));

    const std::size_t delta = new_edges.size();
    Genome x_old = mst_oracle(graph).as_genome(graph.m());
    for (std::size_t k = 0; k < delta; ++k) x_old.push_back(true);

    MstResult new_mst = mst_oracle(new_graph);

    ReoptInstance out;
    out.old_problem = std::make_shared<MstProblem>(graph);
    out.new_problem = std::make_shared<MstProblem>(std::move(new_graph));
    out.x_old = std::move(x_old);
    out.target_quality = FitnessValue::lex(1, new_mst.total_weight);
    out.delta_true = delta;
    return out;
}

ReoptInstance make_mst_removal_reopt(const GraphInstance& graph,
                                     const std::vector<std::size_t>& removed_edge_ids) {
    if (!graph.is_connected())
        throw ContractError("make_mst_removal_reopt: old graph must be connected");

    std::vector<char> removed(graph.m(), 0);
    for (std::size_t id : removed_edge_ids) {
        if (id >= graph.m())
            throw ContractError("make_mst_removal_reopt: edge id out of range");
        if (removed[id])
            throw ContractError("make_mst_removal_reopt: duplicate edge id " + std::to_string(id));
        removed[id] = 1;
    }

    UnionFind uf(graph.node_count);
    for (std::size_t id = 0; id < graph.m(); ++id)
        if (!removed[id]) uf.unite(graph.edges[id].u, graph.edges[id].v);
    if (uf.components() != 1) {
        const std::size_t side = uf.find(0);
        std::string cut;
        for (std::size_t v = 0; v < graph.node_count; ++v) {
            if (uf.find(v) != side) continue;
            if (!cut.empty()) cut += ", ";
            cut += std::to_string(v);
        }
        throw ContractError("make_mst_removal_reopt: removal disconnects the graph; "
                            "no remaining edge crosses the cut {" + cut + "}");
    }

    Genome old_mst = mst_oracle(graph).as_genome(graph.m());

    std::vector<GraphEdge> surviving;
    Genome x_old;
    std::size_t delta_true = 0;
    for (std::size_t id = 0; id < graph.m(); ++id) {
        if (removed[id]) {
            if (old_mst[id]) ++delta_true;
            continue;
        }
        surviving.push_back(graph.edges[id]);
        x_old.push_back(old_mst[id]);
    }
    GraphInstance new_graph(graph.node_count, std::move(surviving));
    MstResult new_mst = mst_oracle(new_graph);

    ReoptInstance out;
    out.old_problem = std::make_shared<MstProblem>(graph);
    out.new_problem = std::make_shared<MstProblem>(std::move(new_graph));
    out.x_old = std::move(x_old);
    out.target_quality = FitnessValue::lex(1, new_mst.total_weight);
    out.delta_true = delta_true;
    return out;
}

namespace {

std::vector<double> distinct_weights(std::size_t count, std::uint64_t max_value,
                                     const std::set<std::uint64_t>& taken, Rng& rng) {
    std::set<std::uint64_t> used = taken;
    std::vector<double> out;
    out.reserve(count);
    std::uniform_int_distribution<std::uint64_t> draw(1, max_value);
    while (out.size() < count) {
        const std::uint64_t w = draw(rng);
        if (used.insert(w).second) out.push_back(static_cast<double>(w));
    }
    return out;
}

} // namespace

GraphInstance random_connected_graph(std::size_t node_count, std::size_t extra_edges, Rng& rng) {
    if (node_count < 2)
        throw ContractError("random_connected_graph: requires at least 2 nodes");
    const std::size_t max_extra = node_count * (node_count - 1) / 2 - (node_count - 1);
    if (extra_edges > max_extra)
        throw ContractError("random_connected_graph: extra_edges exceeds simple-graph capacity");

    std::vector<std::size_t> order(node_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = node_count; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(order[i - 1], order[pick(rng)]);
    }

    std::set<std::pair<std::size_t, std::size_t>> present;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i < node_count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        const std::size_t u = order[pick(rng)];
        const std::size_t v = order[i];
        pairs.emplace_back(std::min(u, v), std::max(u, v));
        present.insert(pairs.back());
    }
    std::uniform_int_distribution<std::size_t> node(0, node_count - 1);
    while (pairs.size() < node_count - 1 + extra_edges) {
        const std::size_t u = node(rng);
        const std::size_t v = node(rng);
        if (u == v) continue;
        const auto key = std::make_pair(std::min(u, v), std::max(u, v));
        if (!present.insert(key).second) continue;
        pairs.push_back(key);
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);

    const std::size_t m = pairs.size();
    std::vector<double> weights =
        distinct_weights(m, std::max<std::uint64_t>(1000, 2 * m), {}, rng);
    std::vector<GraphEdge> edges;
    edges.reserve(m);
    for (std::size_t id = 0; id < m; ++id)
        edges.push_back(GraphEdge{pairs[id].first, pairs[id].second, weights[id]});
    return GraphInstance(node_count, std::move(edges));
}

std::vector<GraphEdge> random_new_edges(const GraphInstance& graph, std::size_t count, Rng& rng) {
    const std::size_t nv = graph.node_count;
    std::set<std::pair<std::size_t, std::size_t>> present;
    std::set<std::uint64_t> used_weights;
    for (const GraphEdge& e : graph.edges) {
        present.insert(normalized(e));
        used_weights.insert(static_cast<std::uint64_t>(e.weight));
    }
    if (nv * (nv - 1) / 2 - graph.m() < count)
        throw ContractError("random_new_edges: not enough absent edges");

    std::vector<double> weights = distinct_weights(
        count, std::max<std::uint64_t>(1000, 2 * (graph.m() + count)), used_weights, rng);

    std::vector<GraphEdge> out;
    std::uniform_int_distribution<std::size_t> node(0, nv - 1);
    while (out.size() < count) {
        const std::size_t u = node(rng);
        const std::size_t v = node(rng);
        if (u == v) continue;
        const auto key = std::make_pair(std::min(u, v), std::max(u, v));
        if (!present.insert(key).second) continue;
        out.push_back(GraphEdge{key.first, key.second, weights[out.size()]});
    }
    return out;
}

std::vector<std::size_t> random_removable_edge_ids(const GraphInstance& graph, std::size_t count,
                                                   Rng& rng) {
    if (!graph.is_connected())
        throw ContractError("random_removable_edge_ids: graph must be connected");

    std::vector<char> removed(graph.m(), 0);
    std::vector<std::size_t> out;
    for (std::size_t step = 0; step < count; ++step) {
        std::vector<std::size_t> safe;
        for (std::size_t id = 0; id < graph.m(); ++id) {
            if (removed[id]) continue;
            UnionFind uf(graph.node_count);
            for (std::size_t j = 0; j < graph.m(); ++j)
                if (!removed[j] && j != id) uf.unite(graph.edges[j].u, graph.edges[j].v);
            if (uf.components() == 1) safe.push_back(id);
        }
        if (safe.empty())
            throw ContractError("random_removable_edge_ids: no safe edge left to remove");
        std::uniform_int_distribution<std::size_t> pick(0, safe.size() - 1);
        const std::size_t id = safe[pick(rng)];
        removed[id] = 1;
        out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace reopt
