#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

// Private generator for one slot; identical across serial and parallel runs.
Rng slot_rng(std::uint64_t seed, std::size_t slot);

struct SaParams {
    double t_init = 1.0;
    double t_final = 0.01;
    double alpha = 0.01;          // linear decrement per temperature level
    int k_factor = 10;            // local iterations per level = k_factor * N
    double boltzmann_k = 1.0;
    double shake_flip_prob = 0.2;
    std::uint64_t rng_seed = 1;
    // Rejection-sampling draws before a neighborhood is enumerated exactly.
    int rejection_attempts = 32;
    // Random draws for the initial solution before the last draw is repaired.
    int initial_draws = 10000;

    void validate() const;

    // Number of temperature levels run while T > t_final; 99 under defaults.
    std::size_t temperature_levels() const;

    bool operator==(const SaParams&) const = default;
};

// Neighborhood moves. They only touch SBS bits; the macro bit stays on.
SwitchVector neighbor_one_reserve(const SwitchVector& sw, Rng& rng);
SwitchVector neighbor_two_reserve(const SwitchVector& sw, Rng& rng);
SwitchVector neighbor_swap(const SwitchVector& sw, Rng& rng);

// Flips every SBS bit independently with probability params.shake_flip_prob.
// The result may be infeasible.
SwitchVector shake(const SwitchVector& sw, const SaParams& params, Rng& rng);

// Metropolis rule for maximization: a candidate at least as good is always
// accepted, a worse one with probability exp(-gap / (K * T)).
bool metropolis_accept(double current_revenue, double candidate_revenue, double temperature,
                       const SaParams& params, Rng& rng);

struct SlotSolution {
    SwitchVector switch_vector;
    RevenueBreakdown revenue;
    std::uint64_t evaluations = 0;
};

struct SaTrace {
    std::vector<double> best_per_level;  // best-so-far revenue after each level
    std::uint64_t null_moves = 0;        // steps whose neighborhood had no feasible member
    std::uint64_t accepted = 0;
};

// Simulated annealing with sequential 1-reserve / 2-reserve / swap
// neighborhoods and shaking between temperature levels. Evaluations counts
// candidate evaluations: exactly 3 * k_factor * N per temperature level.
SlotSolution sa_solve_slot(const Scenario& scenario, std::size_t slot, const SaParams& params,
                           SaTrace* trace = nullptr);

inline constexpr std::size_t kDefaultEsCap = 24;

// Enumerates all 2^N switch vectors and returns the feasible maximizer. Ties go
// to the fewest sleeping SBSs, then the lowest off mask. Evaluations = 2^N.
// Throws Refusal when N exceeds `cap`.
SlotSolution es_solve_slot(const Scenario& scenario, std::size_t slot, std::size_t cap = kDefaultEsCap);

// Per-SBS utility: demanded RBs over capacity minus PN load. Entry j - 1
// belongs to SBS j.
std::vector<double> utility_vector(const Scenario& scenario, std::size_t slot);

enum class SortOrder { Ascending, Descending };

// SBS indices ordered by utility; ties keep index order.
std::vector<std::size_t> utility_order(const Scenario& scenario, std::size_t slot, SortOrder order);

// Sleeps SBSs in utility order until the next one would overflow the macro.
// Ascending is the A-type heuristic, Descending the D-type.
SlotSolution sorting_solve_slot(const Scenario& scenario, std::size_t slot, SortOrder order);

enum class Method { SA, ES, AType, DType };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct SolveOptions {
    SaParams sa;
    std::size_t es_cap = kDefaultEsCap;
    unsigned threads = 1;
};

// Solves every slot independently and aggregates revenue, runtime and
// evaluation counts.
SolverResult solve_day(const Scenario& scenario, Method method, const SolveOptions& options = {});

}  // namespace hetnet
