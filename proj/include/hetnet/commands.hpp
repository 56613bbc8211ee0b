#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/metrics.hpp"
#include "hetnet/solvers.hpp"

namespace hetnet {

// Command-line adjustments applied on top of a loaded config.
struct Overrides {
    std::optional<std::uint64_t> seed;  // SA seed
    std::optional<OffloadMode> offload_mode;
    std::optional<PriceKind> pricing;
    std::optional<DemandMode> demand;
    unsigned threads = 1;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitBadInput = 2,
    kExitRefused = 3,
};

// Writes revenue_per_slot.csv, switch_per_slot.csv and summary.json.
int cmd_run(const std::filesystem::path& config_path, Method method, const std::filesystem::path& out_dir,
            const Overrides& overrides, std::ostream& err);

// Writes compare.csv (per-slot totals of every method side by side) and one
// switches_<method>.csv per method.
int cmd_compare(const std::filesystem::path& config_path, const std::vector<Method>& methods,
                const std::filesystem::path& out_dir, const Overrides& overrides, std::ostream& err);

// Writes bench.csv; refused (N, method) pairs go to bench_notes.txt and make
// the exit code kExitRefused.
int cmd_bench(const std::vector<std::size_t>& n_list, const std::vector<Method>& methods, std::uint64_t seed,
              const std::filesystem::path& out_dir, const BenchOptions& options, std::ostream& err);

// Writes market.csv: SN expenditure, leased RBs and unit cost under SA and ES.
int cmd_market(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
               const Overrides& overrides, std::ostream& err);

// Shortest round-trip decimal form.
std::string format_double(double value);

// Full command-line entry point (subcommands run, compare, bench, market).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hetnet
