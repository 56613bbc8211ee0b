#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/solvers.hpp"

namespace hetnet {

// Normalized demand the cell serves under `sw`: the active SBSs' own loads plus
// everything the macro carries, in each station's own units. Throws
// PreconditionError when `sw` is infeasible.
double network_throughput(const Scenario& scenario, std::size_t slot, const SwitchVector& sw);

// Re-scores every slot of `result` with the revenue model.
RevenueBreakdown reevaluate_daily(const Scenario& scenario, const SolverResult& result);

struct ScenarioVariant {
    std::string label;
    Scenario scenario;
};

struct InvarianceReport {
    bool invariant = false;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> throughput;  // [variant][slot]
};

// Solves every variant with `method` and compares per-slot throughput exactly.
// Throws PreconditionError when the variants do not share PN traffic.
InvarianceReport throughput_invariance_report(const std::vector<ScenarioVariant>& variants, Method method,
                                              const SolveOptions& options = {});

struct BenchRecord {
    Method method = Method::SA;
    std::size_t n_sbs = 0;
    std::int64_t runtime_ns = 0;
    std::uint64_t evaluations = 0;
    double daily_revenue = 0.0;
};

struct BenchStudy {
    std::vector<BenchRecord> records;
    std::vector<std::string> refusals;  // one line per (N, method) pair that was not run
};

// Exhaustive search stops here in the scaling study.
inline constexpr std::size_t kBenchEsCap = 20;

struct BenchOptions {
    SolveOptions solve;  // threads is ignored: runs are serial
    std::size_t es_cap = kBenchEsCap;
    int repetitions = 1;  // the median runtime is reported
};

// For every N and method, solves one day of the seeded bench scenario with N SBSs.
BenchStudy runtime_scaling(const std::vector<std::size_t>& n_list, const std::vector<Method>& methods,
                           std::uint64_t seed, const BenchOptions& options = {});

struct MarketStats {
    double expenditure = 0.0;  // GBP paid by the SN over the day
    std::int64_t rbs_leased = 0;
    std::optional<double> unit_cost;  // expenditure / rbs_leased, absent when nothing was leased
};

MarketStats market_stats(const Scenario& scenario, const SolverResult& result);

}  // namespace hetnet
