#include "hetnet/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include "hetnet/error.hpp"
#include "hetnet/feasibility.hpp"
#include "json.hpp"

namespace hetnet {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

struct Loaded {
    ScenarioConfig config;
    Scenario scenario;
};

Loaded load(const fs::path& config_path, const Overrides& o) {
    ScenarioConfig config = load_config(config_path);
    if (o.seed) config.sa.rng_seed = *o.seed;
    if (o.offload_mode) config.offload_mode = *o.offload_mode;
    if (o.pricing) config.pricing.kind = *o.pricing;
    if (o.demand) config.demand = *o.demand;
    Scenario scenario = build_scenario(config, config_path.parent_path());
    return {std::move(config), std::move(scenario)};
}

SolveOptions solve_options(const ScenarioConfig& config, const Overrides& o) {
    SolveOptions opts;
    opts.sa = config.sa;
    opts.threads = std::max(1U, o.threads);
    return opts;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_revenue_csv(const fs::path& path, const Scenario& s, const SolverResult& r) {
    auto out = open_out(path);
    out << "slot,energy,leasing,total,mbs_load,feasible\n";
    for (std::size_t t = 0; t < s.num_slots(); ++t) {
        const OffloadReport report = is_feasible(s, t, r.per_slot_switch[t]);
        const RevenueBreakdown& rev = r.per_slot_revenue[t];
        out << t << ',' << format_double(rev.energy) << ',' << format_double(rev.leasing) << ','
            << format_double(rev.total) << ',' << format_double(report.mbs_load_after) << ','
            << (report.feasible ? 1 : 0) << '\n';
    }
}

void write_switch_csv(const fs::path& path, const SolverResult& r) {
    auto out = open_out(path);
    out << "slot,gamma\n";
    for (std::size_t t = 0; t < r.per_slot_switch.size(); ++t) {
        out << t << ',' << r.per_slot_switch[t].to_string() << '\n';
    }
}

// Runs `body`, mapping library errors onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const InvariantError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const DegenerateInstance& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const Refusal& e) {
        err << "refused: " << e.what() << '\n';
        return kExitRefused;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int cmd_run(const fs::path& config_path, Method method, const fs::path& out_dir, const Overrides& overrides,
            std::ostream& err) {
    return guarded(err, [&] {
        const Loaded in = load(config_path, overrides);
        SolveOptions opts = solve_options(in.config, overrides);
        const SolverResult result = solve_day(in.scenario, method, opts);

        fs::create_directories(out_dir);
        write_revenue_csv(out_dir / "revenue_per_slot.csv", in.scenario, result);
        write_switch_csv(out_dir / "switch_per_slot.csv", result);

        nlohmann::ordered_json summary;
        summary["method"] = to_string(method);
        summary["seed"] = in.config.sa.rng_seed;
        summary["n_sbs"] = in.scenario.num_sbs();
        summary["num_slots"] = in.scenario.num_slots();
        summary["daily"] = {{"energy", result.daily.energy},
                            {"leasing", result.daily.leasing},
                            {"total", result.daily.total}};
        summary["runtime_ns"] = result.runtime_ns;
        summary["evaluations"] = result.evaluations;
        summary["config"] = config_to_json(in.config);
        open_out(out_dir / "summary.json") << summary.dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_compare(const fs::path& config_path, const std::vector<Method>& methods, const fs::path& out_dir,
                const Overrides& overrides, std::ostream& err) {
    return guarded(err, [&] {
        if (methods.empty()) throw ConfigError("compare needs at least one method");
        const Loaded in = load(config_path, overrides);
        const Scenario& s = in.scenario;
        SolveOptions opts = solve_options(in.config, overrides);

        std::vector<SolverResult> results;
        for (Method m : methods) results.push_back(solve_day(s, m, opts));

        const int slot_min = s.grid().slot_min();
        auto hour_of = [&](std::size_t t) { return static_cast<std::size_t>(t) * slot_min / 60; };
        std::vector<std::map<std::size_t, double>> hourly(methods.size());
        for (std::size_t k = 0; k < methods.size(); ++k) {
            for (std::size_t t = 0; t < s.num_slots(); ++t) hourly[k][hour_of(t)] += results[k].per_slot_revenue[t].total;
        }

        fs::create_directories(out_dir);
        auto out = open_out(out_dir / "compare.csv");
        out << "slot,hour";
        for (Method m : methods) out << ',' << to_string(m);
        out << ",mbs_load,sn_demand";
        for (Method m : methods) out << ',' << to_string(m) << "_hourly";
        out << '\n';
        for (std::size_t t = 0; t < s.num_slots(); ++t) {
            long long demand = 0;
            for (std::size_t j = 1; j <= s.num_sbs(); ++j) demand += s.demand(j, t);
            out << t << ',' << hour_of(t);
            for (const auto& r : results) out << ',' << format_double(r.per_slot_revenue[t].total);
            out << ',' << format_double(s.load(0, t)) << ',' << demand;
            for (const auto& h : hourly) out << ',' << format_double(h.at(hour_of(t)));
            out << '\n';
        }
        for (std::size_t k = 0; k < methods.size(); ++k) {
            write_switch_csv(out_dir / ("switches_" + std::string(to_string(methods[k])) + ".csv"), results[k]);
        }
        return kExitOk;
    });
}

int cmd_bench(const std::vector<std::size_t>& n_list, const std::vector<Method>& methods, std::uint64_t seed,
              const fs::path& out_dir, const BenchOptions& options, std::ostream& err) {
    return guarded(err, [&] {
        if (n_list.empty() || methods.empty()) throw ConfigError("bench needs sizes and methods");
        for (std::size_t n : n_list) {
            if (n < 1) throw ConfigError("bench sizes must be at least 1");
        }
        const BenchStudy study = runtime_scaling(n_list, methods, seed, options);

        fs::create_directories(out_dir);
        auto out = open_out(out_dir / "bench.csv");
        out << "method,n_sbs,runtime_ns,evaluations,daily_revenue\n";
        for (const auto& r : study.records) {
            out << to_string(r.method) << ',' << r.n_sbs << ',' << r.runtime_ns << ',' << r.evaluations << ','
                << format_double(r.daily_revenue) << '\n';
        }
        if (study.refusals.empty()) return kExitOk;
        auto notes = open_out(out_dir / "bench_notes.txt");
        for (const auto& line : study.refusals) {
            notes << line << '\n';
            err << "refused: " << line << '\n';
        }
        return kExitRefused;
    });
}

int cmd_market(const fs::path& config_path, const fs::path& out_dir, const Overrides& overrides,
               std::ostream& err) {
    return guarded(err, [&] {
        const Loaded in = load(config_path, overrides);
        SolveOptions opts = solve_options(in.config, overrides);

        std::vector<std::pair<Method, MarketStats>> rows;
        for (Method m : {Method::SA, Method::ES}) rows.emplace_back(m, market_stats(in.scenario, solve_day(in.scenario, m, opts)));

        fs::create_directories(out_dir);
        auto out = open_out(out_dir / "market.csv");
        out << "method,demand,pricing,expenditure,rbs_leased,unit_cost\n";
        for (const auto& [m, stats] : rows) {
            out << to_string(m) << ',' << to_string(in.config.demand) << ',' << to_string(in.config.pricing.kind)
                << ',' << format_double(stats.expenditure) << ',' << stats.rbs_leased << ','
                << (stats.unit_cost ? format_double(*stats.unit_cost) : "") << '\n';
        }
        return kExitOk;
    });
}

}  // namespace hetnet
