#include <algorithm>
#include <numeric>

#include "hetnet/econ.hpp"
#include "hetnet/error.hpp"
#include "hetnet/feasibility.hpp"
#include "hetnet/solvers.hpp"

namespace hetnet {

std::vector<double> utility_vector(const Scenario& scenario, std::size_t slot) {
    std::vector<double> out(scenario.num_sbs());
    for (std::size_t j = 1; j <= scenario.num_sbs(); ++j) {
        const double demand = static_cast<double>(scenario.demand(j, slot)) / scenario.station(j).rb_capacity;
        out[j - 1] = demand - scenario.load(j, slot);
    }
    return out;
}

std::vector<std::size_t> utility_order(const Scenario& scenario, std::size_t slot, SortOrder order) {
    const std::vector<double> u = utility_vector(scenario, slot);
    std::vector<std::size_t> idx(u.size());
    std::iota(idx.begin(), idx.end(), std::size_t{1});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return order == SortOrder::Descending ? u[a - 1] > u[b - 1] : u[a - 1] < u[b - 1];
    });
    return idx;
}

SlotSolution sorting_solve_slot(const Scenario& scenario, std::size_t slot, SortOrder order) {
    if (slot >= scenario.num_slots()) throw DomainError("slot out of range");
    SwitchVector sw = SwitchVector::all_on(scenario.num_sbs());
    std::uint64_t evaluations = 1;
    for (std::size_t j : utility_order(scenario, slot, order)) {
        SwitchVector candidate = sw;
        candidate.set_sbs(j, false);
        ++evaluations;
        // Once the macro is full no further SBS is switched off.
        if (!is_feasible(scenario, slot, candidate).feasible) break;
        sw = std::move(candidate);
    }
    return {sw, total_revenue_slot(scenario, slot, sw), evaluations};
}

}  // namespace hetnet
