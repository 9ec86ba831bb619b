#include "reopt/rea.hpp"

#include <algorithm>

#include "reopt/errors.hpp"

namespace reopt {

ReaState rea_init(const Genome& x_old, const Problem& problem, const ReaConfig& cfg) {
    if (x_old.size() != problem.dimension())
        throw ContractError("rea_init: x_old length does not match problem dimension");
    if (cfg.gamma > problem.dimension())
        throw ContractError("rea_init: gamma exceeds problem dimension");

    ReaState s;
    s.x_old = x_old;
    s.gamma = cfg.gamma;
    s.direction = problem.direction();
    s.slots.assign(cfg.gamma + 2, std::nullopt);
    FitnessValue f0 = problem.evaluate(x_old);
    s.evaluations = 1;
    s.slots[0] = SlotEntry{x_old, f0};
    s.best = SlotEntry{x_old, f0};
    return s;
}

const Genome& rea_select_parent(const ReaState& state, Rng& rng) {
    if (std::bernoulli_distribution(0.5)(rng)) return state.best.genome;

    std::vector<std::size_t> candidates;
    candidates.reserve(state.slots.size());
    for (std::size_t i = 0; i < state.slots.size(); ++i) {
        if (state.slots[i] && state.slots[i]->genome != state.best.genome)
            candidates.push_back(i);
    }
    if (candidates.empty()) return state.best.genome;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return state.slots[candidates[pick(rng)]]->genome;
}

void rea_absorb(ReaState& state, const Genome& y, const Problem& problem) {
    FitnessValue fy = problem.evaluate(y);
    ++state.evaluations;

    if (fitness_better_or_equal(state.direction, fy, state.best.fitness))
        state.best = SlotEntry{y, fy};

    const std::size_t i = std::min(hamming_distance(y, state.x_old), state.gamma + 1);
    if (i == 0) return;
    auto& slot = state.slots[i];
    if (!slot || fitness_better_or_equal(state.direction, fy, slot->fitness))
        slot = SlotEntry{y, fy};
}

void rea_step(ReaState& state, const Problem& problem, const ReaConfig& cfg, Rng& rng) {
    const Genome& parent = rea_select_parent(state, rng);
    Genome y = standard_bit_mutation(parent, cfg.mutation, rng);
    rea_absorb(state, y, problem);
}

const char* termination_name(Termination t) {
    return t == Termination::TargetHit ? "target_hit" : "budget_exhausted";
}

namespace {

void validate_budget(const RunBudget& budget) {
    if (budget.max_evaluations < 1)
        throw ContractError("RunBudget: max_evaluations must be at least 1");
}

// Stamps milestones in radius order as the best-so-far fitness crosses each
// target value; returns the index of the first target not yet reached.
struct MilestoneWatcher {
    std::vector<MilestoneTarget> targets;
    std::size_t next = 0;

    explicit MilestoneWatcher(std::vector<MilestoneTarget> t) : targets(std::move(t)) {
        std::sort(targets.begin(), targets.end(),
                  [](const MilestoneTarget& a, const MilestoneTarget& b) {
                      return a.radius < b.radius;
                  });
    }

    void observe(Direction dir, const FitnessValue& best, std::uint64_t evaluations,
                 RunRecord& record) {
        while (next < targets.size() &&
               fitness_better_or_equal(dir, best, targets[next].value)) {
            record.milestones[targets[next].radius] = evaluations;
            ++next;
        }
    }
};

bool target_reached(Direction dir, const RunBudget& budget, const FitnessValue& best) {
    return budget.target && fitness_better_or_equal(dir, best, *budget.target);
}

} // namespace

RunRecord rea_run(const Genome& x_old, const Problem& problem, const ReaConfig& cfg,
                  const RunBudget& budget, RngSeed seed,
                  const std::vector<MilestoneTarget>& milestone_targets) {
    validate_budget(budget);
    Rng rng = seed.make_engine();
    ReaState s = rea_init(x_old, problem, cfg);

    RunRecord record;
    record.seed = seed.value;
    MilestoneWatcher watcher(milestone_targets);
    watcher.observe(s.direction, s.best.fitness, s.evaluations, record);

    record.termination = Termination::BudgetExhausted;
    if (target_reached(s.direction, budget, s.best.fitness)) {
        record.termination = Termination::TargetHit;
    } else {
        while (s.evaluations < budget.max_evaluations) {
            rea_step(s, problem, cfg, rng);
            watcher.observe(s.direction, s.best.fitness, s.evaluations, record);
            if (target_reached(s.direction, budget, s.best.fitness)) {
                record.termination = Termination::TargetHit;
                break;
            }
        }
    }

    record.evaluations_used = s.evaluations;
    record.final_best = s.best.genome;
    record.final_fitness = s.best.fitness;
    return record;
}

RunRecord oea_run(const Genome& x_start, const Problem& problem, const MutationConfig& mutation,
                  const RunBudget& budget, RngSeed seed,
                  const std::vector<MilestoneTarget>& milestone_targets) {
    validate_budget(budget);
    if (x_start.size() != problem.dimension())
        throw ContractError("oea_run: x_start length does not match problem dimension");

    Rng rng = seed.make_engine();
    const Direction dir = problem.direction();
    Genome x = x_start;
    FitnessValue fx = problem.evaluate(x);
    std::uint64_t evaluations = 1;

    RunRecord record;
    record.seed = seed.value;
    MilestoneWatcher watcher(milestone_targets);
    watcher.observe(dir, fx, evaluations, record);

    record.termination = Termination::BudgetExhausted;
    if (target_reached(dir, budget, fx)) {
        record.termination = Termination::TargetHit;
    } else {
        while (evaluations < budget.max_evaluations) {
            Genome y = standard_bit_mutation(x, mutation, rng);
            FitnessValue fy = problem.evaluate(y);
            ++evaluations;
            if (fitness_better_or_equal(dir, fy, fx)) {
                x = std::move(y);
                fx = fy;
            }
            watcher.observe(dir, fx, evaluations, record);
            if (target_reached(dir, budget, fx)) {
                record.termination = Termination::TargetHit;
                break;
            }
        }
    }

    record.evaluations_used = evaluations;
    record.final_best = x;
    record.final_fitness = fx;
    return record;
}

} // namespace reopt
