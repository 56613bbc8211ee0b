#include <bit>

#include "hetnet/econ.hpp"
#include "hetnet/error.hpp"
#include "hetnet/feasibility.hpp"
#include "hetnet/solvers.hpp"

namespace hetnet {

SlotSolution es_solve_slot(const Scenario& scenario, std::size_t slot, std::size_t cap) {
    const std::size_t n = scenario.num_sbs();
    if (n > cap || n >= 63) {
        throw Refusal("exhaustive search refused: " + std::to_string(n) + " SBSs exceeds the enumeration cap of " +
                      std::to_string(cap));
    }
    if (slot >= scenario.num_slots()) throw DomainError("slot out of range");

    const std::uint64_t count = std::uint64_t{1} << n;
    SwitchVector sw = SwitchVector::all_on(n);
    SwitchVector best = sw;
    RevenueBreakdown best_revenue;
    int best_off = -1;

    for (std::uint64_t mask = 0; mask < count; ++mask) {
        if (mask != 0) {
            // Only the bits that changed since mask - 1 need flipping.
            std::uint64_t changed = mask ^ (mask - 1);
            while (changed != 0) {
                const int bit = std::countr_zero(changed);
                sw.flip_sbs(static_cast<std::size_t>(bit) + 1);
                changed &= changed - 1;
            }
        }
        if (!is_feasible(scenario, slot, sw).feasible) continue;
        const RevenueBreakdown r = total_revenue_slot(scenario, slot, sw);
        const int off = std::popcount(mask);
        // Ascending mask order means an exact tie with equal off-count keeps the lower mask.
        if (best_off < 0 || r.total > best_revenue.total || (r.total == best_revenue.total && off < best_off)) {
            best = sw;
            best_revenue = r;
            best_off = off;
        }
    }
    // All-on is feasible by the scenario invariants, so best_off >= 0 here.
    return {best, best_revenue, count};
}

}  // namespace hetnet
