#pragma once

#include "hetnet/model.hpp"

namespace hetnet {

// Tolerance on the traffic-conservation comparison.
inline constexpr double kConservationTolerance = 1e-12;

struct OffloadReport {
    double mbs_load_after = 0.0;  // macro load once sleeping SBSs are offloaded
    double demand_before = 0.0;   // total cell demand with every station on
    double demand_after = 0.0;    // total demand served after offloading
    bool feasible = false;
};

// Throws InvariantError when the switch does not match the scenario's station count.
void check_switch(const Scenario& scenario, const SwitchVector& sw);

// Normalized macro load that SBS `sbs` adds when it sleeps in `slot`.
double mbs_load_contribution(const Scenario& scenario, std::size_t sbs, std::size_t slot);

// Macro load after offloading every sleeping SBS. Summed exactly, so the value
// is monotone in the off-set.
double offloaded_mbs_load(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);

// Capacity check on the offloaded macro load (boundary accepted) plus a
// numeric re-check of traffic conservation.
OffloadReport is_feasible(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);

}  // namespace hetnet
