#include <doctest.h>

#include <cmath>
#include <map>

#include "reopt/errors.hpp"
#include "reopt/perturb.hpp"
#include "reopt/rea.hpp"

using namespace reopt;

namespace {

LeadingOnesProblem lo_problem(const std::string& z) {
    Genome target = Genome::from_string(z);
    const std::size_t n = target.size();
    return LeadingOnesProblem(LeadingOnesInstance(std::move(target), identity_permutation(n)));
}

} // namespace

TEST_CASE("rea_init shapes the population") {
    LeadingOnesProblem p = lo_problem("1111");

    ReaConfig tight;
    tight.gamma = 0;
    ReaState s0 = rea_init(Genome::from_string("0111"), p, tight);
    CHECK(s0.slots.size() == 2);
    CHECK(s0.slots[0].has_value());
    CHECK_FALSE(s0.slots[1].has_value());
    CHECK(s0.evaluations == 1);
    CHECK(compare(s0.slots[0]->fitness, FitnessValue::scalar(0)) == 0);
    CHECK(compare(s0.best.fitness, FitnessValue::scalar(0)) == 0);
    CHECK(s0.best.genome == Genome::from_string("0111"));

    ReaConfig cfg;
    cfg.gamma = 2;
    CHECK(rea_init(Genome::from_string("0111"), p, cfg).slots.size() == 4);
    CHECK_THROWS_AS(rea_init(Genome::from_string("01"), p, cfg), ContractError);
}

TEST_CASE("rea_select_parent distribution") {
    const std::size_t draws = 100000;
    auto g = [](const std::string& s) { return Genome::from_string(s); };

    ReaState state;
    state.x_old = g("00000");
    state.gamma = 1;
    state.direction = Direction::Maximize;
    state.slots.assign(3, std::nullopt);
    state.best = SlotEntry{g("11111"), FitnessValue::scalar(5)};

    SUBCASE("sole slot equal to best collapses to best") {
        state.slots[0] = SlotEntry{g("11111"), FitnessValue::scalar(5)};
        Rng rng(1);
        for (int i = 0; i < 2000; ++i) CHECK(rea_select_parent(state, rng) == state.best.genome);
    }

    SUBCASE("two differing slots split 1/2 1/4 1/4") {
        state.gamma = 2;
        state.slots.assign(4, std::nullopt);
        state.slots[0] = SlotEntry{g("00000"), FitnessValue::scalar(0)};
        state.slots[3] = SlotEntry{g("00111"), FitnessValue::scalar(0)};
        Rng rng(2);
        std::map<std::string, std::size_t> counts;
        for (std::size_t i = 0; i < draws; ++i)
            ++counts[rea_select_parent(state, rng).to_string()];
        CHECK(std::abs(counts["11111"] / double(draws) - 0.50) <= 0.01);
        CHECK(std::abs(counts["00000"] / double(draws) - 0.25) <= 0.01);
        CHECK(std::abs(counts["00111"] / double(draws) - 0.25) <= 0.01);
    }

    SUBCASE("three differing slots get 1/6 each") {
        state.slots[0] = SlotEntry{g("00000"), FitnessValue::scalar(0)};
        state.slots[1] = SlotEntry{g("10000"), FitnessValue::scalar(1)};
        state.slots[2] = SlotEntry{g("11000"), FitnessValue::scalar(2)};
        Rng rng(3);
        std::map<std::string, std::size_t> counts;
        for (std::size_t i = 0; i < draws; ++i)
            ++counts[rea_select_parent(state, rng).to_string()];
        CHECK(std::abs(counts["11111"] / double(draws) - 0.5) <= 0.01);
        for (const char* s : {"00000", "10000", "11000"})
            CHECK(std::abs(counts[s] / double(draws) - 1.0 / 6.0) <= 0.01);
    }
}

TEST_CASE("rea_absorb acceptance and slot placement") {
    LeadingOnesProblem p = lo_problem("1111");
    ReaConfig cfg;
    cfg.gamma = 1;
    ReaState state = rea_init(Genome::from_string("0111"), p, cfg);

    rea_absorb(state, Genome::from_string("1111"), p);
    CHECK(state.evaluations == 2);
    CHECK(state.best.genome == Genome::from_string("1111"));
    CHECK(compare(state.best.fitness, FitnessValue::scalar(4)) == 0);
    REQUIRE(state.slots[1].has_value());
    CHECK(state.slots[1]->genome == Genome::from_string("1111"));

    SUBCASE("worse offspring at an occupied distance only bumps the counter") {
        const ReaState before = state;
        rea_absorb(state, Genome::from_string("0101"), p);
        CHECK(state.evaluations == before.evaluations + 1);
        CHECK(state.best.genome == before.best.genome);
        REQUIRE(state.slots[1].has_value());
        CHECK(state.slots[1]->genome == before.slots[1]->genome);
        CHECK(!state.slots[2].has_value());
    }

    SUBCASE("first offspring in a distance class fills its empty slot") {
        rea_absorb(state, Genome::from_string("0000"), p);
        REQUIRE(state.slots[2].has_value());
        CHECK(state.slots[2]->genome == Genome::from_string("0000"));
        CHECK(state.best.genome == Genome::from_string("1111"));
    }

    SUBCASE("slot 0 is never overwritten") {
        rea_absorb(state, Genome::from_string("0111"), p);
        CHECK(state.slots[0]->genome == Genome::from_string("0111"));
    }
}

TEST_CASE("rea_step with a zero mutation rate keeps the best genome") {
    LeadingOnesProblem p = lo_problem("11111111");
    ReaConfig cfg;
    cfg.gamma = 1;
    cfg.mutation = MutationConfig::fixed(0.0);
    ReaState state = rea_init(Genome::from_string("11110111"), p, cfg);
    Rng rng(4);
    for (int i = 0; i < 25; ++i) {
        const Genome before = state.best.genome;
        rea_step(state, p, cfg, rng);
        CHECK(state.best.genome == before);
    }
    CHECK(state.evaluations == 26);
}

TEST_CASE("rea_run termination contract") {
    LeadingOnesProblem p = lo_problem("11111111111111111111");
    const Genome x_old = flip_bits(Genome(20, true), {0});
    ReaConfig cfg;
    cfg.gamma = 1;

    SUBCASE("pre-satisfied target stops after the initial evaluation") {
        RunBudget budget;
        budget.max_evaluations = 100;
        budget.target = p.evaluate(x_old);
        const RunRecord rec = rea_run(x_old, p, cfg, budget, RngSeed{5});
        CHECK(rec.evaluations_used == 1);
        CHECK(rec.termination == Termination::TargetHit);
    }

    SUBCASE("unreachable target exhausts the budget exactly") {
        RunBudget budget;
        budget.max_evaluations = 10;
        budget.target = FitnessValue::scalar(21);
        const RunRecord rec = rea_run(x_old, p, cfg, budget, RngSeed{5});
        CHECK(rec.evaluations_used == 10);
        CHECK(rec.termination == Termination::BudgetExhausted);
        CHECK_THROWS_AS(rea_run(x_old, p, cfg, RunBudget{0, std::nullopt}, RngSeed{5}),
                        ContractError);
    }

    SUBCASE("distance-1 repair stays within the linear bound on average") {
        RunBudget budget;
        budget.max_evaluations = 1000000;
        budget.target = FitnessValue::scalar(20);
        double total = 0;
        const int seeds = 100;
        for (int s = 0; s < seeds; ++s) {
            const RunRecord rec = rea_run(x_old, p, cfg, budget, RngSeed{100ULL + s});
            CHECK(rec.termination == Termination::TargetHit);
            total += static_cast<double>(rec.evaluations_used);
        }
        CHECK(total / seeds <= 2 * std::exp(1.0) * 2 * 20);
    }
}

TEST_CASE("rea_run is deterministic per seed") {
    ReoptInstance inst = make_leadingones_adversarial(30, 2, identity_permutation(30));
    ReaConfig cfg;
    cfg.gamma = 2;
    RunBudget budget;
    budget.max_evaluations = 100000;
    budget.target = inst.target_quality;
    const RunRecord a = rea_run(inst.x_old, *inst.new_problem, cfg, budget, RngSeed{42});
    const RunRecord b = rea_run(inst.x_old, *inst.new_problem, cfg, budget, RngSeed{42});
    CHECK(a.evaluations_used == b.evaluations_used);
    CHECK(a.final_best == b.final_best);
    const RunRecord c = rea_run(inst.x_old, *inst.new_problem, cfg, budget, RngSeed{43});
    CHECK((c.evaluations_used != a.evaluations_used || c.final_best == a.final_best));
}

TEST_CASE("oea_run baseline") {
    SUBCASE("zero mutation rate never moves") {
        LeadingOnesProblem p = lo_problem("1111");
        RunBudget budget;
        budget.max_evaluations = 50;
        budget.target = FitnessValue::scalar(4);
        const RunRecord rec = oea_run(Genome::from_string("0111"), p, MutationConfig::fixed(0.0),
                                      budget, RngSeed{6});
        CHECK(rec.termination == Termination::BudgetExhausted);
        CHECK(rec.final_best == Genome::from_string("0111"));
    }

    SUBCASE("all-ones weights from all-zeros reaches the bound quickly") {
        const std::size_t n = 16;
        LinearPenaltyProblem p(
            LinearConstrainedInstance(LinearConstrainedInstance::onemax_weights(n), n));
        RunBudget budget;
        budget.max_evaluations = 10000;
        budget.target = FitnessValue::exact(static_cast<WideInt>(n));
        int hits = 0;
        for (int s = 0; s < 100; ++s) {
            const RunRecord rec = oea_run(Genome(n), p, MutationConfig::standard(), budget,
                                          RngSeed{200ULL + s});
            hits += rec.termination == Termination::TargetHit;
        }
        CHECK(hits >= 99);
    }
}
