#pragma once

#include "hetnet/model.hpp"

namespace hetnet {

// Power draw of an active station: p_o + load * zeta * p_tx.
// Throws DomainError unless 0 <= load <= 1.
double bs_power(const BaseStation& bs, double load);

// kWh consumed by one watt held for one slot of the scenario's grid.
double kwh_per_watt_slot(const Scenario& scenario);

// Cell power with every station on, each serving its own traffic.
double all_on_power_slot(const Scenario& scenario, std::size_t slot);

// Cell power under `sw`: sleeping SBSs draw their sleep power and the macro
// runs at the offloaded load.
double hetnet_power_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);

// all_on_power_slot - hetnet_power_slot. May be negative when the macro's
// load slope outweighs what the sleeping SBS saves.
double power_saving_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);

double energy_revenue_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);
double leasing_revenue_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);
RevenueBreakdown total_revenue_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);

// Revenue change from putting SBS `sbs` to sleep in `slot`, with the macro's
// extra load term charged to that SBS. Because macro power is affine in load,
// the revenue of any switch is the sum of these gains over its sleeping SBSs.
RevenueBreakdown switch_off_gain(const Scenario& scenario, std::size_t slot, std::size_t sbs);

}  // namespace hetnet
