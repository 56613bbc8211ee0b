#include "hetnet/econ.hpp"

#include <string>

#include "hetnet/error.hpp"
#include "hetnet/feasibility.hpp"

namespace hetnet {

double bs_power(const BaseStation& bs, double load) {
    if (!(load >= 0.0 && load <= 1.0)) {
        throw DomainError("load " + std::to_string(load) + " outside [0, 1]");
    }
    return bs.p_o + load * bs.load_slope();
}

double kwh_per_watt_slot(const Scenario& scenario) {
    // W * min -> kWh
    return static_cast<double>(scenario.grid().slot_min()) / 60000.0;
}

double all_on_power_slot(const Scenario& scenario, std::size_t slot) {
    double total = 0.0;
    for (std::size_t i = 0; i < scenario.num_stations(); ++i) {
        total += bs_power(scenario.station(i), scenario.load(i, slot));
    }
    return total;
}

double hetnet_power_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    const BaseStation& mbs = scenario.macro();
    // The offloaded macro load exceeds 1 for infeasible switches; the affine
    // model is still evaluated there so that such candidates can be scored.
    double total = mbs.p_o + offloaded_mbs_load(scenario, slot, sw) * mbs.load_slope();
    for (std::size_t j = 1; j < scenario.num_stations(); ++j) {
        const BaseStation& bs = scenario.station(j);
        total += sw.is_on(j) ? bs_power(bs, scenario.load(j, slot)) : *bs.p_sleep;
    }
    return total;
}

double power_saving_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    return all_on_power_slot(scenario, slot) - hetnet_power_slot(scenario, slot, sw);
}

double energy_revenue_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    return power_saving_slot(scenario, slot, sw) * kwh_per_watt_slot(scenario) *
           scenario.pricing().electricity(slot);
}

double leasing_revenue_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    check_switch(scenario, sw);
    long long rbs = 0;
    for (std::size_t j = 1; j < sw.num_stations(); ++j) {
        if (sw.is_off(j)) rbs += scenario.demand(j, slot);
    }
    return static_cast<double>(rbs) * scenario.pricing().spectrum(slot);
}

RevenueBreakdown total_revenue_slot(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    return RevenueBreakdown::of(energy_revenue_slot(scenario, slot, sw), leasing_revenue_slot(scenario, slot, sw));
}

RevenueBreakdown switch_off_gain(const Scenario& scenario, std::size_t slot, std::size_t sbs) {
    if (sbs == 0 || sbs >= scenario.num_stations()) throw DomainError("switch_off_gain needs an SBS index");
    const BaseStation& bs = scenario.station(sbs);
    const double watts = bs_power(bs, scenario.load(sbs, slot)) - *bs.p_sleep -
                         mbs_load_contribution(scenario, sbs, slot) * scenario.macro().load_slope();
    const double energy = watts * kwh_per_watt_slot(scenario) * scenario.pricing().electricity(slot);
    const double leasing = scenario.demand(sbs, slot) * scenario.pricing().spectrum(slot);
    return RevenueBreakdown::of(energy, leasing);
}

}  // namespace hetnet
