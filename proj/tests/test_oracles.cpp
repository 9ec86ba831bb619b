#include <doctest.h>

#include <cmath>

#include "reopt/errors.hpp"
#include "reopt/oracles.hpp"
#include "reopt/perturb.hpp"

using namespace reopt;

namespace {

LeadingOnesProblem lo_problem(const std::string& z) {
    Genome target = Genome::from_string(z);
    const std::size_t n = target.size();
    return LeadingOnesProblem(LeadingOnesInstance(std::move(target), identity_permutation(n)));
}

} // namespace

TEST_CASE("ball_optimum") {
    LeadingOnesProblem p = lo_problem("1111");
    const Genome anchor = Genome::from_string("0101");

    SUBCASE("radius 0 returns the anchor") {
        const BallOptimum b = ball_optimum(p, anchor, 0);
        CHECK(b.witness == anchor);
        CHECK(compare(b.best_value, p.evaluate(anchor)) == 0);
    }

    SUBCASE("radius 1 enumeration") {
        const BallOptimum b = ball_optimum(p, anchor, 1);
        CHECK(b.witness == Genome::from_string("1101"));
        CHECK(compare(b.best_value, FitnessValue::scalar(2)) == 0);
    }

    SUBCASE("radius n reaches the global optimum") {
        const BallOptimum b = ball_optimum(p, anchor, 4);
        CHECK(b.witness == Genome::from_string("1111"));
        CHECK(compare(b.best_value, FitnessValue::scalar(4)) == 0);
    }

    SUBCASE("ties resolve to the lexicographically smallest flip set") {
        // With unit weights every single added item scores 1; the witness
        // must come from flip set {0}.
        LinearPenaltyProblem unit(
            LinearConstrainedInstance(LinearConstrainedInstance::onemax_weights(4), 4));
        const BallOptimum b = ball_optimum(unit, Genome::from_string("0000"), 1);
        CHECK(b.witness == Genome::from_string("1000"));
        CHECK(compare(b.best_value, FitnessValue::exact(1)) == 0);
    }

    SUBCASE("enumeration guard") {
        LeadingOnesProblem big = lo_problem(std::string(30, '1'));
        CHECK_THROWS_AS(ball_optimum(big, Genome(30), 4), LimitError);
        CHECK_NOTHROW(ball_optimum(big, Genome(30), 3));
        CHECK_THROWS_AS(ball_optimum(p, Genome(3), 1), ContractError);
    }
}

TEST_CASE("greedy_linear_optimum") {
    SUBCASE("all-ones weights") {
        LinearConstrainedInstance inst(LinearConstrainedInstance::onemax_weights(5), 2);
        const auto [witness, value] = greedy_linear_optimum(inst);
        CHECK(witness.count_ones() == 2);
        CHECK(compare(value, FitnessValue::exact(2)) == 0);
    }

    SUBCASE("power-of-two weights") {
        LinearConstrainedInstance inst(LinearConstrainedInstance::binval_weights(5), 2);
        const auto [witness, value] = greedy_linear_optimum(inst);
        CHECK(witness == Genome::from_string("11000"));
        CHECK(compare(value, FitnessValue::exact(24)) == 0);
    }

    SUBCASE("unsorted weights") {
        LinearConstrainedInstance inst({3, 1, 2}, 2);
        const auto [witness, value] = greedy_linear_optimum(inst);
        CHECK(witness == Genome::from_string("101"));
        CHECK(compare(value, FitnessValue::exact(5)) == 0);
    }

    SUBCASE("negative weights refused") {
        CHECK_THROWS_AS(greedy_linear_optimum(LinearConstrainedInstance({1, -1}, 1)),
                        ContractError);
    }
}

TEST_CASE("mst_oracle") {
    SUBCASE("triangle") {
        const MstResult r = mst_oracle(GraphInstance(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}}));
        CHECK(r.total_weight == 3);
        CHECK(r.components == 1);
        CHECK(r.edge_ids == std::vector<std::size_t>{0, 1});
        CHECK(r.as_genome(3) == Genome::from_string("110"));
    }

    SUBCASE("forest on a disconnected graph") {
        const MstResult r = mst_oracle(GraphInstance(4, {{0, 1, 4}, {2, 3, 6}}));
        CHECK(r.total_weight == 10);
        CHECK(r.components == 2);
    }

    SUBCASE("equal weights break ties by edge id") {
        const MstResult r = mst_oracle(GraphInstance(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}}));
        CHECK(r.edge_ids == std::vector<std::size_t>{0, 1});
    }
}

TEST_CASE("neutral_bit_probability") {
    CHECK(neutral_bit_probability(10, 0) == 1.0);
    CHECK(neutral_bit_probability(2, 1) == 0.5);
    CHECK_THROWS_AS(neutral_bit_probability(1, 1), ContractError);

    SUBCASE("matches a simulated flip chain") {
        const std::size_t n = 100, t = 50;
        Rng rng(17);
        std::bernoulli_distribution flip(1.0 / n);
        const std::size_t chains = 1000000;
        std::size_t same = 0;
        for (std::size_t c = 0; c < chains; ++c) {
            bool parity = false;
            for (std::size_t s = 0; s < t; ++s) parity ^= flip(rng);
            same += !parity;
        }
        CHECK(std::abs(static_cast<double>(same) / chains -
                       neutral_bit_probability(n, t)) <= 0.002);
    }
}

TEST_CASE("greedy_edge_removal_witness") {
    GraphInstance combined(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 10}});
    const Genome x_old = Genome::from_string("111");

    CHECK(greedy_edge_removal_witness(x_old, combined, 0) == x_old);
    CHECK(greedy_edge_removal_witness(x_old, combined, 1) == Genome::from_string("110"));

    SUBCASE("final distance lands on the new graph's tree") {
        const Genome w = greedy_edge_removal_witness(x_old, combined, 1);
        CHECK(w == mst_oracle(combined).as_genome(3));
    }

    SUBCASE("light chord displaces the heaviest tree edge") {
        GraphInstance light(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 1.5}});
        CHECK(greedy_edge_removal_witness(Genome::from_string("111"), light, 1) ==
              Genome::from_string("101"));
    }

    SUBCASE("no connected solution at the requested distance") {
        CHECK_THROWS_AS(greedy_edge_removal_witness(x_old, combined, 3), ContractError);
        CHECK_THROWS_AS(
            greedy_edge_removal_witness(Genome::from_string("110"), combined, 1),
            ContractError);
    }

    SUBCASE("disconnected anchor refused") {
        CHECK_THROWS_AS(greedy_edge_removal_witness(Genome::from_string("100"), combined, 0),
                        ContractError);
    }
}

TEST_CASE("removal witness weights shrink along the chain") {
    Rng rng(23);
    GraphInstance graph = random_connected_graph(7, 5, rng);
    const Genome full(graph.m(), true);
    const std::size_t max_d = graph.m() - (graph.node_count - 1);
    double prev = -1;
    for (std::size_t d = 1; d <= max_d; ++d) {
        const Genome w = greedy_edge_removal_witness(full, graph, d);
        double weight = 0;
        for (std::size_t id = 0; id < graph.m(); ++id)
            if (w[id]) weight += graph.edges[id].weight;
        if (prev >= 0) CHECK(weight <= prev);
        prev = weight;
    }
    CHECK(greedy_edge_removal_witness(full, graph, max_d) ==
          mst_oracle(graph).as_genome(graph.m()));
}
