// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hetnet/commands.hpp"
#include "hetnet/config.hpp"
#include "hetnet/econ.hpp"
#include "hetnet/feasibility.hpp"
#include "hetnet/metrics.hpp"
#include "hetnet/solvers.hpp"
#include "oracles.hpp"

using namespace hetnet;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) { return format_double(v); }

Scenario reference(PriceKind pricing, DemandMode demand) {
    ScenarioConfig c = reference_config();
    c.pricing.kind = pricing;
    c.demand = demand;
    return build_scenario(c);
}

struct Variant {
    std::string label;
    Scenario scenario;
};

std::vector<Variant> reference_variants() {
    std::vector<Variant> v;
    for (PriceKind p : {PriceKind::Fixed, PriceKind::Dynamic}) {
        for (DemandMode d : {DemandMode::NonDelayTolerant, DemandMode::DelayTolerant}) {
            v.push_back({std::string(to_string(p)) + "-" + std::string(to_string(d)), reference(p, d)});
        }
    }
    return v;
}

// 1. ES against an independent naive enumeration.
Outcome oracle_exactness() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    int mismatches = 0;
    int checked = 0;
    for (std::size_t n : {2U, 4U, 8U}) {
        const Scenario s = oracle::random_scenario(rng, n, 50);
        for (std::size_t t = 0; t < s.num_slots(); ++t) {
            const SlotSolution es = es_solve_slot(s, t);
            const oracle::Best best = oracle::exhaustive(s, t);
            ++checked;
            if (es.switch_vector.off_mask() != best.mask ||
                std::fabs(es.revenue.total - static_cast<double>(best.revenue)) > 1e-9) {
                ++mismatches;
            }
        }
    }
    const double secs = seconds_since(start);
    return {mismatches == 0 && secs < 10.0,
            std::to_string(checked) + " slots, " + std::to_string(mismatches) + " mismatches, " + fmt(secs) + " s"};
}

// 2. SA close to ES on the reference day over 5 seeds.
Outcome sa_near_optimal(const Scenario& s, const SolverResult& es) {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SolveOptions opts;
        opts.sa.rng_seed = seed;
        const SolverResult sa = solve_day(s, Method::SA, opts);
        std::size_t close = 0;
        for (std::size_t t = 0; t < s.num_slots(); ++t) {
            if (sa.per_slot_revenue[t].total >= 0.95 * es.per_slot_revenue[t].total) ++close;
        }
        const double share = static_cast<double>(close) / static_cast<double>(s.num_slots());
        const double daily = sa.daily.total / es.daily.total;
        ok = ok && share >= 0.97 && sa.daily.total >= 0.97 * es.daily.total;
        detail += "seed " + std::to_string(seed) + ": " + std::to_string(close) + "/144 slots, daily ratio " +
                  fmt(daily) + "; ";
    }
    const double secs = seconds_since(start);
    return {ok && secs < 120.0, detail + fmt(secs) + " s"};
}

// 3. ES dominates every other method on every slot.
Outcome dominance(const std::vector<Variant>& variants) {
    std::mt19937_64 rng(303);
    std::vector<Scenario> scenarios;
    for (const auto& v : variants) scenarios.push_back(v.scenario);
    for (int i = 0; i < 4; ++i) scenarios.push_back(oracle::random_scenario(rng, 6, 24));
    scenarios.push_back(oracle::random_scenario(rng, 6, 24, OffloadMode::CapacityScaled));

    std::size_t violations = 0, slots = 0;
    for (const auto& s : scenarios) {
        const SolverResult es = solve_day(s, Method::ES);
        for (Method m : {Method::SA, Method::AType, Method::DType}) {
            const SolverResult r = solve_day(s, m);
            for (std::size_t t = 0; t < s.num_slots(); ++t) {
                ++slots;
                if (!(es.per_slot_revenue[t].total >= r.per_slot_revenue[t].total)) ++violations;
            }
        }
    }
    return {violations == 0, std::to_string(slots) + " slot comparisons, " + std::to_string(violations) + " violations"};
}

// 4. Capacity, conservation and throughput for every emitted switch.
Outcome qos(const std::vector<Variant>& variants) {
    std::size_t bad = 0, checked = 0;
    for (const auto& v : variants) {
        const Scenario& s = v.scenario;
        for (Method m : {Method::SA, Method::ES, Method::AType, Method::DType}) {
            const SolverResult r = solve_day(s, m);
            for (std::size_t t = 0; t < s.num_slots(); ++t) {
                ++checked;
                const SwitchVector& sw = r.per_slot_switch[t];
                const OffloadReport rep = is_feasible(s, t, sw);
                const bool capacity = rep.mbs_load_after <= s.mbs_capacity_limit();
                const bool conserved = std::fabs(rep.demand_before - rep.demand_after) <= kConservationTolerance;
                const bool same = network_throughput(s, t, sw) == network_throughput(s, t, SwitchVector::all_on(s.num_sbs()));
                if (!(rep.feasible && capacity && conserved && same && oracle::feasible(s, t, sw))) ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(checked) + " switch vectors, " + std::to_string(bad) + " violations"};
}

// 5. Throughput identical across pricing and demand variants.
Outcome invariance(const std::vector<Variant>& variants) {
    std::vector<ScenarioVariant> sv;
    for (const auto& v : variants) sv.push_back({v.label, v.scenario});
    bool ok = true;
    std::string detail;
    for (Method m : {Method::SA, Method::ES}) {
        const InvarianceReport r = throughput_invariance_report(sv, m);
        ok = ok && r.invariant;
        detail += std::string(to_string(m)) + (r.invariant ? " invariant; " : " differs; ");
    }
    return {ok, detail + std::to_string(sv.size()) + " variants"};
}

// 6. SA revenue under dynamic pricing: DT at least 5% above NDT.
Outcome dt_revenue(const Scenario& ndt, const Scenario& dt) {
    const double a = solve_day(ndt, Method::SA).daily.total;
    const double b = solve_day(dt, Method::SA).daily.total;
    return {b >= 1.05 * a, "NDT " + fmt(a) + ", DT " + fmt(b) + ", ratio " + fmt(b / a)};
}

// 7. SN market: DT spends more, leases more and pays less per RB.
Outcome sn_market(const Scenario& ndt, const Scenario& dt) {
    bool ok = true;
    std::string detail;
    for (Method m : {Method::SA, Method::ES}) {
        const MarketStats a = market_stats(ndt, solve_day(ndt, m));
        const MarketStats b = market_stats(dt, solve_day(dt, m));
        const bool unit = a.unit_cost && b.unit_cost && *b.unit_cost < *a.unit_cost;
        ok = ok && b.expenditure > a.expenditure && b.rbs_leased > a.rbs_leased && unit;
        detail += std::string(to_string(m)) + ": GBP " + fmt(a.expenditure) + " -> " + fmt(b.expenditure) + ", RBs " +
                  std::to_string(a.rbs_leased) + " -> " + std::to_string(b.rbs_leased) + ", unit " +
                  (a.unit_cost ? fmt(*a.unit_cost) : "-") + " -> " + (b.unit_cost ? fmt(*b.unit_cost) : "-") + "; ";
    }
    return {ok, detail};
}

// 8. Evaluation counts and wall time on the bench sweep.
Outcome complexity() {
    BenchOptions opts;
    opts.repetitions = 3;
    const BenchStudy study = runtime_scaling({4, 8, 12, 16}, {Method::ES, Method::SA}, 7, opts);
    std::vector<const BenchRecord*> es, sa;
    for (const auto& r : study.records) (r.method == Method::ES ? es : sa).push_back(&r);
    if (es.size() != 4 || sa.size() != 4) return {false, "bench sweep incomplete"};

    bool counts = true;
    for (std::size_t i = 1; i < es.size(); ++i) counts = counts && es[i]->evaluations == 16 * es[i - 1]->evaluations;
    for (const auto* r : sa) counts = counts && r->evaluations == 144u * 99u * (10u * r->n_sbs) * 3u;
    const double ratio = static_cast<double>(es[3]->runtime_ns) / static_cast<double>(sa[3]->runtime_ns);
    return {counts && ratio >= 4.0, std::string("counts ") + (counts ? "exact" : "wrong") + ", ES/SA wall time at N=16 " +
                                        fmt(ratio) + " (ES " + fmt(es[3]->runtime_ns / 1e9) + " s, SA " +
                                        fmt(sa[3]->runtime_ns / 1e9) + " s)"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 9. Byte-identical run outputs for the same config and seed.
Outcome determinism() {
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("hetnet_acceptance_" + std::to_string(rd()));
    fs::create_directories(dir);
    const fs::path cfg = dir / "reference.json";
    std::ofstream(cfg) << config_to_json(reference_config()).dump(2);

    Overrides o;
    o.seed = 3;
    std::ostringstream err;
    bool ok = true;
    for (Method m : {Method::SA, Method::ES}) {
        const int a = cmd_run(cfg, m, dir / "a", o, err);
        const int b = cmd_run(cfg, m, dir / "b", o, err);
        ok = ok && a == kExitOk && b == kExitOk;
        for (const char* f : {"revenue_per_slot.csv", "switch_per_slot.csv"}) {
            const std::string x = slurp(dir / "a" / f);
            ok = ok && !x.empty() && x == slurp(dir / "b" / f);
        }
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    return {ok, "SA and ES, revenue_per_slot.csv and switch_per_slot.csv"};
}

// 10. Metropolis acceptance frequency.
Outcome metropolis() {
    bool ok = true;
    std::string detail;
    struct Case {
        double gap, temperature, k;
    };
    for (const Case c : {Case{0.5, 1.0, 1.0}, Case{1.0, 0.25, 2.0}}) {
        SaParams params;
        params.boltzmann_k = c.k;
        Rng rng = stream_rng(10, static_cast<std::uint64_t>(c.gap * 100));
        const int trials = 100000;
        int accepted = 0;
        for (int i = 0; i < trials; ++i) accepted += metropolis_accept(1.0, 1.0 - c.gap, c.temperature, params, rng);
        const double p = std::exp(-c.gap / (c.k * c.temperature));
        const double sigma = std::sqrt(trials * p * (1.0 - p));
        const double z = (accepted - trials * p) / sigma;
        ok = ok && std::fabs(z) <= 3.0;
        detail += "p " + fmt(p) + " observed " + fmt(static_cast<double>(accepted) / trials) + " (z " + fmt(z) + "); ";
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const auto variants = reference_variants();
    const Scenario& dyn_ndt = variants[2].scenario;
    const Scenario& dyn_dt = variants[3].scenario;
    const SolverResult es_ref = solve_day(dyn_ndt, Method::ES);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle exactness", oracle_exactness},
        {"SA near-optimality", [&] { return sa_near_optimal(dyn_ndt, es_ref); }},
        {"ES dominance", [&] { return dominance(variants); }},
        {"QoS invariants", [&] { return qos(variants); }},
        {"throughput invariance", [&] { return invariance(variants); }},
        {"DT above NDT revenue", [&] { return dt_revenue(dyn_ndt, dyn_dt); }},
        {"SN market", [&] { return sn_market(dyn_ndt, dyn_dt); }},
        {"complexity scaling", complexity},
        {"determinism", determinism},
        {"Metropolis statistics", metropolis},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << "criterion " << (i + 1) << " " << criteria[i].first << ": " << (o.pass ? "PASS" : "FAIL") << "  ["
                  << o.detail << "]" << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
