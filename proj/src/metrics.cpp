#include "hetnet/metrics.hpp"

#include <algorithm>
#include <map>

#include "hetnet/config.hpp"
#include "hetnet/econ.hpp"
#include "hetnet/error.hpp"
#include "hetnet/exact_sum.hpp"
#include "hetnet/feasibility.hpp"

namespace hetnet {

double network_throughput(const Scenario& scenario, std::size_t slot, const SwitchVector& sw) {
    const OffloadReport report = is_feasible(scenario, slot, sw);
    if (!report.feasible) {
        throw PreconditionError("throughput is undefined for an infeasible switch (slot " + std::to_string(slot) +
                                ")");
    }
    return report.demand_after;
}

RevenueBreakdown reevaluate_daily(const Scenario& scenario, const SolverResult& result) {
    RevenueBreakdown daily;
    for (std::size_t t = 0; t < result.per_slot_switch.size(); ++t) {
        daily += total_revenue_slot(scenario, t, result.per_slot_switch[t]);
    }
    return daily;
}

InvarianceReport throughput_invariance_report(const std::vector<ScenarioVariant>& variants, Method method,
                                              const SolveOptions& options) {
    InvarianceReport report;
    if (variants.empty()) return report;
    const Scenario& first = variants.front().scenario;
    for (const auto& v : variants) {
        if (v.scenario.pn_traffic() != first.pn_traffic() || v.scenario.stations() != first.stations()) {
            throw PreconditionError("variant '" + v.label + "' does not share the primary network's traffic");
        }
    }

    report.invariant = true;
    for (const auto& v : variants) {
        const SolverResult result = solve_day(v.scenario, method, options);
        std::vector<double> row(v.scenario.num_slots());
        for (std::size_t t = 0; t < row.size(); ++t) {
            row[t] = network_throughput(v.scenario, t, result.per_slot_switch[t]);
        }
        if (!report.throughput.empty() && row != report.throughput.front()) report.invariant = false;
        report.labels.push_back(v.label);
        report.throughput.push_back(std::move(row));
    }
    return report;
}

BenchStudy runtime_scaling(const std::vector<std::size_t>& n_list, const std::vector<Method>& methods,
                           std::uint64_t seed, const BenchOptions& options) {
    if (options.repetitions < 1) throw ConfigError("repetitions must be at least 1");
    SolveOptions solve = options.solve;
    solve.threads = 1;
    solve.es_cap = options.es_cap;

    BenchStudy study;
    for (Method method : methods) {
        for (std::size_t n : n_list) {
            if (n < 1) throw ConfigError("bench sizes must be at least 1");
            if (method == Method::ES && n > options.es_cap) {
                study.refusals.push_back("es refused at n_sbs=" + std::to_string(n) + ": above the enumeration cap of " +
                                         std::to_string(options.es_cap));
                continue;
            }
            const Scenario scenario = build_scenario(bench_config(n, seed));
            std::vector<std::int64_t> times;
            SolverResult result;
            for (int rep = 0; rep < options.repetitions; ++rep) {
                result = solve_day(scenario, method, solve);
                times.push_back(result.runtime_ns);
            }
            std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());

            BenchRecord rec;
            rec.method = method;
            rec.n_sbs = n;
            rec.runtime_ns = std::max<std::int64_t>(1, times[times.size() / 2]);
            rec.evaluations = std::max<std::uint64_t>(1, result.evaluations);
            rec.daily_revenue = reevaluate_daily(scenario, result).total;
            study.records.push_back(rec);
        }
    }
    return study;
}

MarketStats market_stats(const Scenario& scenario, const SolverResult& result) {
    // RBs grouped by the price they were sold at, so a single price comes back unrounded.
    std::map<double, std::int64_t> by_price;
    for (std::size_t t = 0; t < result.per_slot_switch.size(); ++t) {
        const SwitchVector& sw = result.per_slot_switch[t];
        std::int64_t rbs = 0;
        for (std::size_t j = 1; j < sw.num_stations(); ++j) {
            if (sw.is_off(j)) rbs += scenario.demand(j, t);
        }
        if (rbs > 0) by_price[scenario.pricing().spectrum(t)] += rbs;
    }

    MarketStats stats;
    ExactSum expenditure;
    for (const auto& [price, rbs] : by_price) {
        expenditure.add(price * static_cast<double>(rbs));
        stats.rbs_leased += rbs;
    }
    stats.expenditure = expenditure.value();
    if (by_price.size() == 1) {
        stats.unit_cost = by_price.begin()->first;
    } else if (stats.rbs_leased > 0) {
        stats.unit_cost = stats.expenditure / static_cast<double>(stats.rbs_leased);
    }
    return stats;
}

}  // namespace hetnet
