#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reopt/bitstring.hpp"
#include "reopt/fitness.hpp"

namespace reopt {

/// Bijection on [0..n-1]. Element k names the k-th position checked.
using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t n);
Permutation random_permutation(std::size_t n, Rng& rng);
bool is_permutation(const Permutation& sigma);

/// A fitness evaluator with a fixed optimization direction. Evaluation is
/// pure; instances are immutable after construction and safe to share.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::size_t dimension() const = 0;
    virtual Direction direction() const = 0;
    virtual FitnessValue evaluate(const Genome& x) const = 0;
    virtual std::string name() const = 0;
};

using ProblemPtr = std::shared_ptr<const Problem>;

// ---------------------------------------------------------------------------
// Generalized LeadingOnes
// ---------------------------------------------------------------------------

/// Target string z and check order sigma. The unique optimum is z with
/// fitness n; the value of x is the length of the longest sigma-ordered
/// prefix on which x agrees with z. Indices are 0-based throughout.
struct LeadingOnesInstance {
    Genome target;
    Permutation sigma;

    LeadingOnesInstance(Genome z, Permutation s);

    std::size_t n() const { return target.size(); }
};

/// Value of the longest matching sigma-prefix; short-circuits on the first
/// mismatch, so a call costs O(f(x) + 1).
std::int64_t leadingones_value(const LeadingOnesInstance& inst, const Genome& x);

class LeadingOnesProblem final : public Problem {
public:
    explicit LeadingOnesProblem(LeadingOnesInstance inst) : inst_(std::move(inst)) {}

    std::size_t dimension() const override { return inst_.n(); }
    Direction direction() const override { return Direction::Maximize; }
    FitnessValue evaluate(const Genome& x) const override {
        return FitnessValue::scalar(static_cast<double>(leadingones_value(inst_, x)));
    }
    std::string name() const override { return "leadingones"; }

    const LeadingOnesInstance& instance() const { return inst_; }

private:
    LeadingOnesInstance inst_;
};

// ---------------------------------------------------------------------------
// Linear profit under a uniform (cardinality) constraint
// ---------------------------------------------------------------------------

/// Linear profit weights with cardinality bound B. The penalty constant
/// defaults to n * |w_max| + 1, which makes every feasible solution beat
/// every infeasible one.
struct LinearConstrainedInstance {
    std::vector<double> weights;
    std::size_t bound = 0;
    std::optional<double> penalty_override;

    LinearConstrainedInstance(std::vector<double> w, std::size_t B,
                              std::optional<double> penalty = std::nullopt);

    std::size_t n() const { return weights.size(); }
    double max_abs_weight() const;

    static std::vector<double> onemax_weights(std::size_t n);
    /// w_i = 2^(n-1-i) for 0-based i. Exact up to n = 62.
    static std::vector<double> binval_weights(std::size_t n);
};

/// Profit minus C * max(ones - B, 0), to be maximized. Instances whose
/// weights are all integral evaluate in exact wide-integer arithmetic; other
/// instances use plain doubles with exact (epsilon-free) comparison, which
/// the acceptance rule of the EA requires.
class LinearPenaltyProblem final : public Problem {
public:
    explicit LinearPenaltyProblem(LinearConstrainedInstance inst);

    std::size_t dimension() const override { return inst_.n(); }
    Direction direction() const override { return Direction::Maximize; }
    FitnessValue evaluate(const Genome& x) const override;
    std::string name() const override { return "linear"; }

    const LinearConstrainedInstance& instance() const { return inst_; }
    bool exact_arithmetic() const { return !int_weights_.empty() || inst_.n() == 0; }

private:
    LinearConstrainedInstance inst_;
    std::vector<std::int64_t> int_weights_; // non-empty iff all weights integral
    WideInt penalty_int_ = 0;
    double penalty_ = 0.0;
};

// ---------------------------------------------------------------------------
// Minimum spanning tree
// ---------------------------------------------------------------------------

struct GraphEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;

    bool operator==(const GraphEdge&) const = default;
};

/// Edge-weighted undirected graph. Node ids are 0-based; edge ids are the
/// positions in the edge list, which is also the genome layout for the MST
/// problems. Weights are strictly positive; self-loops are rejected.
struct GraphInstance {
    std::size_t node_count = 0;
    std::vector<GraphEdge> edges;

    GraphInstance() = default;
    GraphInstance(std::size_t nodes, std::vector<GraphEdge> edge_list);

    std::size_t m() const { return edges.size(); }
    bool is_connected() const;
};

/// Lexicographic MST fitness (component count, selected weight), minimized.
/// Component counts include isolated nodes.
class MstProblem final : public Problem {
public:
    explicit MstProblem(GraphInstance g) : graph_(std::move(g)) {}

    std::size_t dimension() const override { return graph_.m(); }
    Direction direction() const override { return Direction::Minimize; }
    FitnessValue evaluate(const Genome& x) const override;
    std::string name() const override { return "mst"; }

    const GraphInstance& graph() const { return graph_; }

private:
    GraphInstance graph_;
};

} // namespace reopt
