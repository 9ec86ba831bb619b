#include "reopt/problems.hpp"

#include <algorithm>
#include <cmath>

#include "reopt/union_find.hpp"

namespace reopt {

Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

Permutation random_permutation(std::size_t n, Rng& rng) {
    Permutation p = identity_permutation(n);
    for (std::size_t i = n; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(p[i - 1], p[pick(rng)]);
    }
    return p;
}

bool is_permutation(const Permutation& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t v : sigma) {
        if (v >= sigma.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

LeadingOnesInstance::LeadingOnesInstance(Genome z, Permutation s)
    : target(std::move(z)), sigma(std::move(s)) {
    if (target.empty()) throw ContractError("LeadingOnesInstance: empty target");
    if (sigma.size() != target.size() || !is_permutation(sigma))
        throw ContractError("LeadingOnesInstance: sigma is not a permutation of [0..n-1]");
}

std::int64_t leadingones_value(const LeadingOnesInstance& inst, const Genome& x) {
    if (x.size() != inst.n())
        throw ContractError("leadingones_value: genome length mismatch");
    const std::size_t n = inst.n();
    std::size_t j = 0;
    while (j < n) {
        const std::size_t pos = inst.sigma[j];
        if (x[pos] != inst.target[pos]) break;
        ++j;
    }
    return static_cast<std::int64_t>(j);
}

LinearConstrainedInstance::LinearConstrainedInstance(std::vector<double> w, std::size_t B,
                                                     std::optional<double> penalty)
    : weights(std::move(w)), bound(B), penalty_override(penalty) {
    if (weights.empty()) throw ContractError("LinearConstrainedInstance: empty weights");
    if (bound > weights.size())
        throw ContractError("LinearConstrainedInstance: bound exceeds n");
    for (double x : weights)
        if (!std::isfinite(x))
            throw ContractError("LinearConstrainedInstance: non-finite weight");
}

double LinearConstrainedInstance::max_abs_weight() const {
    double m = 0.0;
    for (double x : weights) m = std::max(m, std::fabs(x));
    return m;
}

std::vector<double> LinearConstrainedInstance::onemax_weights(std::size_t n) {
    return std::vector<double>(n, 1.0);
}

std::vector<double> LinearConstrainedInstance::binval_weights(std::size_t n) {
    if (n > 62)
        throw ContractError("binval_weights: n > 62 loses integer exactness");
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = static_cast<double>(std::int64_t{1} << (n - 1 - i));
    return w;
}

LinearPenaltyProblem::LinearPenaltyProblem(LinearConstrainedInstance inst)
    : inst_(std::move(inst)) {
    bool integral = !inst_.penalty_override.has_value();
    for (double w : inst_.weights) {
        if (std::nearbyint(w) != w || std::fabs(w) > 4.6e18) {
            integral = false;
            break;
        }
    }
    if (integral) {
        int_weights_.reserve(inst_.n());
        std::int64_t wmax = 0;
        for (double w : inst_.weights) {
            const auto iw = static_cast<std::int64_t>(w);
            int_weights_.push_back(iw);
            wmax = std::max(wmax, iw < 0 ? -iw : iw);
        }
        penalty_int_ = static_cast<WideInt>(inst_.n()) * wmax + 1;
    } else {
        penalty_ = inst_.penalty_override
                       ? *inst_.penalty_override
                       : static_cast<double>(inst_.n()) * inst_.max_abs_weight() + 1.0;
    }
}

FitnessValue LinearPenaltyProblem::evaluate(const Genome& x) const {
    if (x.size() != inst_.n())
        throw ContractError("LinearPenaltyProblem: genome length mismatch");
    const std::size_t n = inst_.n();
    std::size_t ones = 0;
    if (!int_weights_.empty()) {
        WideInt profit = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i]) {
                profit += int_weights_[i];
                ++ones;
            }
        }
        const WideInt excess =
            ones > inst_.bound ? static_cast<WideInt>(ones - inst_.bound) : 0;
        return FitnessValue::exact(profit - penalty_int_ * excess);
    }
    double profit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i]) {
            profit += inst_.weights[i];
            ++ones;
        }
    }
    const double excess = ones > inst_.bound ? static_cast<double>(ones - inst_.bound) : 0.0;
    return FitnessValue::scalar(profit - penalty_ * excess);
}

GraphInstance::GraphInstance(std::size_t nodes, std::vector<GraphEdge> edge_list)
    : node_count(nodes), edges(std::move(edge_list)) {
    for (const GraphEdge& e : edges) {
        if (e.u >= node_count || e.v >= node_count)
            throw ContractError("GraphInstance: edge endpoint out of range");
        if (e.u == e.v) throw ContractError("GraphInstance: self-loop");
        if (!(e.weight > 0.0)) throw ContractError("GraphInstance: weight must be positive");
    }
}

bool GraphInstance::is_connected() const {
    if (node_count == 0) return true;
    UnionFind uf(node_count);
    for (const GraphEdge& e : edges) uf.unite(e.u, e.v);
    return uf.components() == 1;
}

FitnessValue MstProblem::evaluate(const Genome& x) const {
    if (x.size() != graph_.m())
        throw ContractError("MstProblem: genome length must equal the edge count");
    UnionFind uf(graph_.node_count);
    double weight = 0.0;
    for (std::size_t i = 0; i < graph_.m(); ++i) {
        if (x[i]) {
            const GraphEdge& e = graph_.edges[i];
            uf.unite(e.u, e.v);
            weight += e.weight;
        }
    }
    return FitnessValue::lex(static_cast<std::int64_t>(uf.components()), weight);
}

} // namespace reopt
