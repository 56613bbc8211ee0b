#include "hetnet/feasibility.hpp"

#include <cmath>

#include "hetnet/error.hpp"
#include "hetnet/exact_sum.hpp"

namespace hetnet {

void check_switch(const Scenario& scenario, const SwitchVector& sw) {
    if (sw.num_stations() != scenario.num_stations()) {
        throw InvariantError("switch vector has " + std::to_string(sw.num_stations()) + " entries, scenario has " +
                             std::to_string(scenario.num_stations()) + " stations");
    }
}

double mbs_load_contribution(const Scenario& scenario, std::size_t sbs, std::size_t slot) {
    const double load = scenario.load(sbs, slot);
    if (scenario.offload_mode() == OffloadMode::Direct) return load;
    return load * static_cast<double>(scenario.station(sbs).rb_capacity) /
           static_cast<double>(scenario.macro().rb_capacity);
}

double offloaded_mbs_load(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    check_switch(scenario, sw);
    ExactSum sum;
    sum.add(scenario.load(0, slot));
    for (std::size_t j = 1; j < sw.num_stations(); ++j) {
        if (sw.is_off(j)) sum.add(mbs_load_contribution(scenario, j, slot));
    }
    return sum.value();
}

OffloadReport is_feasible(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    check_switch(scenario, sw);
    const bool scaled = scenario.offload_mode() == OffloadMode::CapacityScaled;
    const double mbs_rb = static_cast<double>(scenario.macro().rb_capacity);

    ExactSum before;
    ExactSum after;
    ExactSum mbs;
    const double own = scenario.load(0, slot);
    before.add(own);
    after.add(own);
    mbs.add(own);
    for (std::size_t j = 1; j < sw.num_stations(); ++j) {
        const double load = scenario.load(j, slot);
        before.add(load);
        if (sw.is_on(j)) {
            after.add(load);
            continue;
        }
        const double moved = mbs_load_contribution(scenario, j, slot);
        mbs.add(moved);
        // Served traffic re-expressed in the SBS's own units.
        after.add(scaled ? moved * mbs_rb / static_cast<double>(scenario.station(j).rb_capacity) : moved);
    }

    OffloadReport r;
    r.mbs_load_after = mbs.value();
    r.demand_before = before.value();
    r.demand_after = after.value();
    r.feasible = r.mbs_load_after <= scenario.mbs_capacity_limit() &&
                 std::fabs(r.demand_before - r.demand_after) <= kConservationTolerance;
    return r;
}

}  // namespace hetnet
