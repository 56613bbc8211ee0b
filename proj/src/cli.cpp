#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "hetnet/commands.hpp"

namespace hetnet {

namespace {

constexpr const char* kOutEnv = "HETNET_OUT_DIR";

struct Flags {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::string offload_mode;
    std::string pricing;
    std::string demand;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool with_config) {
    if (with_config) cmd->add_option("--config", f.config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out, "Output directory")->envname(kOutEnv)->capture_default_str();
    cmd->add_option("--seed", f.seed, "SA seed, replaces the config's");
    if (!with_config) return;
    cmd->add_option("--offload-mode", f.offload_mode, "direct or capacity_scaled")
        ->check(CLI::IsMember({"direct", "capacity_scaled"}));
    cmd->add_option("--pricing", f.pricing, "fixed or dynamic")->check(CLI::IsMember({"fixed", "dynamic"}));
    cmd->add_option("--demand", f.demand, "dt or ndt")->check(CLI::IsMember({"dt", "ndt"}));
    cmd->add_option("--threads", f.threads, "Worker threads for per-slot solving (0: all cores)");
}

Overrides overrides_of(const Flags& f) {
    Overrides o;
    o.seed = f.seed;
    if (!f.offload_mode.empty()) o.offload_mode = parse_offload_mode(f.offload_mode);
    if (!f.pricing.empty()) o.pricing = parse_price_kind(f.pricing);
    if (!f.demand.empty()) o.demand = parse_demand_mode(f.demand);
    o.threads = f.threads != 0 ? f.threads : std::max(1U, std::thread::hardware_concurrency());
    return o;
}

std::vector<Method> methods_of(const std::vector<std::string>& names) {
    std::vector<Method> out;
    for (const auto& n : names) out.push_back(parse_method(n));
    return out;
}

const auto kMethodNames = CLI::IsMember({"sa", "es", "atype", "dtype"});

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cell switching and spectrum leasing optimizer for a single macro cell"};
    app.require_subcommand(1);

    Flags f;
    std::string method = "sa";
    std::vector<std::string> methods;
    std::vector<std::size_t> n_list{4, 8, 12, 16, 20, 24};
    std::size_t es_cap = kBenchEsCap;
    int repetitions = 1;

    auto* run = app.add_subcommand("run", "Solve one day and write per-slot revenue and switch vectors");
    add_common(run, f, true);
    run->add_option("--method", method, "sa, es, atype or dtype")->check(kMethodNames)->capture_default_str();

    auto* compare = app.add_subcommand("compare", "Per-slot revenue of several methods side by side");
    add_common(compare, f, true);
    compare->add_option("--methods", methods, "Methods to compare")->delimiter(',')->check(kMethodNames);

    auto* bench = app.add_subcommand("bench", "Runtime and evaluation counts against the number of SBSs");
    add_common(bench, f, false);
    bench->add_option("--n-list", n_list, "SBS counts")->delimiter(',')->capture_default_str();
    bench->add_option("--methods", methods, "Methods to time")->delimiter(',')->check(kMethodNames);
    bench->add_option("--es-cap", es_cap, "Largest N exhaustive search runs at")->capture_default_str();
    bench->add_option("--repetitions", repetitions, "Runs per entry; the median time is kept")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* market = app.add_subcommand("market", "SN expenditure, leased RBs and unit cost under SA and ES");
    add_common(market, f, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    if (run->parsed()) return cmd_run(f.config, parse_method(method), f.out, overrides_of(f), err);
    if (compare->parsed()) {
        if (methods.empty()) methods = {"es", "sa", "atype", "dtype"};
        return cmd_compare(f.config, methods_of(methods), f.out, overrides_of(f), err);
    }
    if (bench->parsed()) {
        if (methods.empty()) methods = {"es", "sa"};
        BenchOptions opts;
        if (f.seed) opts.solve.sa.rng_seed = *f.seed;
        opts.es_cap = es_cap;
        opts.repetitions = repetitions;
        return cmd_bench(n_list, methods_of(methods), f.seed.value_or(1), f.out, opts, err);
    }
    return cmd_market(f.config, f.out, overrides_of(f), err);
}

}  // namespace hetnet
