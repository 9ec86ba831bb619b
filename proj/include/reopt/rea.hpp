#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "reopt/bitstring.hpp"
#include "reopt/problems.hpp"

namespace reopt {

/// Configuration of the (gamma+1) re-optimization EA. The search direction
/// comes from the problem, not the config.
struct ReaConfig {
    std::size_t gamma = 1;
    MutationConfig mutation = MutationConfig::standard();
};

struct SlotEntry {
    Genome genome;
    FitnessValue fitness;
};

/// Population state: slot i (0 <= i <= gamma) holds the best solution seen at
/// Hamming distance exactly i from the anchor x_old, slot gamma+1 the best at
/// any larger distance. Slot 0 permanently holds x_old. `best` tracks the
/// best-so-far solution x* independently of the slots.
struct ReaState {
    Genome x_old;
    std::size_t gamma = 0;
    Direction direction = Direction::Maximize;
    std::vector<std::optional<SlotEntry>> slots;
    SlotEntry best;
    std::uint64_t evaluations = 0;
};

/// Builds the initial state: slot 0 and best are x_old evaluated under the
/// new fitness (counts as one evaluation); slots 1..gamma+1 start undefined.
ReaState rea_init(const Genome& x_old, const Problem& problem, const ReaConfig& cfg);

/// With probability 1/2 returns best.genome; otherwise a uniform choice among
/// defined slots whose genome differs bitwise from best.genome (falling back
/// to best.genome when no such slot exists).
const Genome& rea_select_parent(const ReaState& state, Rng& rng);

/// Evaluates offspring y and applies the acceptance rules: best is replaced
/// on at-least-as-good fitness, then slot min{H(y, x_old), gamma+1} is
/// replaced on at-least-as-good fitness (an empty slot takes the first point
/// seen at its distance). Slot 0 is never overwritten.
void rea_absorb(ReaState& state, const Genome& y, const Problem& problem);

/// One loop iteration: select parent, mutate, absorb.
void rea_step(ReaState& state, const Problem& problem, const ReaConfig& cfg, Rng& rng);

enum class Termination { TargetHit, BudgetExhausted };

const char* termination_name(Termination t);

struct RunBudget {
    std::uint64_t max_evaluations = 1;
    std::optional<FitnessValue> target;
};

/// Fitness level to time-stamp: milestones[radius] records the first
/// evaluation count at which the best-so-far fitness reached `value`.
struct MilestoneTarget {
    std::size_t radius = 0;
    FitnessValue value;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::uint64_t evaluations_used = 0;
    Termination termination = Termination::BudgetExhausted;
    std::map<std::size_t, std::uint64_t> milestones;
    Genome final_best;
    FitnessValue final_fitness;
};

/// Full run: init, then steps until budget.target is reached by best
/// (TargetHit) or max_evaluations are spent (BudgetExhausted).
RunRecord rea_run(const Genome& x_old, const Problem& problem, const ReaConfig& cfg,
                  const RunBudget& budget, RngSeed seed,
                  const std::vector<MilestoneTarget>& milestone_targets = {});

/// Classic (1+1) EA baseline: single parent, offspring accepted when at least
/// as good. Same budget and milestone contract as rea_run.
RunRecord oea_run(const Genome& x_start, const Problem& problem, const MutationConfig& mutation,
                  const RunBudget& budget, RngSeed seed,
                  const std::vector<MilestoneTarget>& milestone_targets = {});

} // namespace reopt
