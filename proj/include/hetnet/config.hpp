#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/scenario_gen.hpp"
#include "hetnet/solvers.hpp"
#include "json.hpp"

namespace hetnet {

// A station entry: a kind plus optional overrides of its default constants.
struct StationSpec {
    BsKind kind = BsKind::Macro;
    std::optional<double> p_o;
    std::optional<double> zeta;
    std::optional<double> p_tx;
    std::optional<double> p_sleep;
    std::optional<int> rb_capacity;
    std::optional<double> bandwidth_mhz;

    BaseStation resolve() const;

    bool operator==(const StationSpec&) const = default;
};

enum class TrafficSourceKind { Synthetic, Csv };

struct TrafficSource {
    TrafficSourceKind kind = TrafficSourceKind::Synthetic;
    std::uint64_t seed = 2024;  // synthetic only
    std::string csv_path;       // relative paths resolve against the config's directory
    GridAssignment assignment;  // csv only, one grid list per station

    bool operator==(const TrafficSource&) const = default;
};

enum class DemandMode { NonDelayTolerant, DelayTolerant };

std::string_view to_string(DemandMode mode);
DemandMode parse_demand_mode(std::string_view name);
std::string_view to_string(PriceKind kind);
PriceKind parse_price_kind(std::string_view name);

struct ScenarioConfig {
    int horizon_min = 1440;
    int slot_min = 10;
    std::vector<StationSpec> stations;
    TrafficSource traffic;
    Normalization normalization;
    PricePolicy pricing;
    double beta = 0.7;
    DemandMode demand = DemandMode::NonDelayTolerant;
    OffloadMode offload_mode = OffloadMode::Direct;
    double mbs_capacity_limit = 1.0;
    SaParams sa;

    bool operator==(const ScenarioConfig&) const = default;
};

// `base_dir` resolves relative file references (multiplier profiles).
ScenarioConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
nlohmann::json config_to_json(const ScenarioConfig& config);

// Reads a config file; relative paths inside it resolve against its directory.
ScenarioConfig load_config(const std::filesystem::path& path);

// Runs the generation pipeline: traffic, normalization, pricing, SN demand and
// the optional delay-tolerant shift.
Scenario build_scenario(const ScenarioConfig& config, const std::filesystem::path& base_dir = {});

// Macro plus 3 RRH, 3 micro, 3 pico and 3 femto cells on synthetic diurnal
// traffic with dynamic pricing.
ScenarioConfig reference_config(std::uint64_t traffic_seed = 2024);

// Macro plus n SBSs cycling RRH, micro, pico, femto.
ScenarioConfig bench_config(std::size_t num_sbs, std::uint64_t traffic_seed);

// Full explicit scenario document (all series inline).
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

}  // namespace hetnet
