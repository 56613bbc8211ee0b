#include "hetnet/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string_view>

#include "hetnet/error.hpp"

namespace hetnet {

using nlohmann::json;

namespace {

void expect_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (auto k : allowed) known = known || item.key() == k;
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
std::optional<T> get_optional(const json& obj, const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    return get_or<T>(obj, key, T{});
}

template <typename T>
void put_optional(json& obj, const char* key, const std::optional<T>& v) {
    if (v) obj[key] = *v;
}

StationSpec station_from_json(const json& j) {
    StationSpec s;
    s.kind = parse_kind(get_or<std::string>(j, "kind", ""));
    s.p_o = get_optional<double>(j, "p_o");
    s.zeta = get_optional<double>(j, "zeta");
    s.p_tx = get_optional<double>(j, "p_tx");
    s.p_sleep = get_optional<double>(j, "p_sleep");
    s.rb_capacity = get_optional<int>(j, "rb_capacity");
    s.bandwidth_mhz = get_optional<double>(j, "bandwidth_mhz");
    return s;
}

json station_to_json(const StationSpec& s) {
    json j;
    j["kind"] = to_string(s.kind);
    put_optional(j, "p_o", s.p_o);
    put_optional(j, "zeta", s.zeta);
    put_optional(j, "p_tx", s.p_tx);
    put_optional(j, "p_sleep", s.p_sleep);
    put_optional(j, "rb_capacity", s.rb_capacity);
    put_optional(j, "bandwidth_mhz", s.bandwidth_mhz);
    return j;
}

SaParams sa_from_json(const json& j) {
    expect_keys(j, "sa", {"t_init", "t_final", "alpha", "k_factor", "boltzmann_k", "shake_flip_prob", "seed",
                          "rejection_attempts", "initial_draws"});
    SaParams p;
    p.t_init = get_or(j, "t_init", p.t_init);
    p.t_final = get_or(j, "t_final", p.t_final);
    p.alpha = get_or(j, "alpha", p.alpha);
    p.k_factor = get_or(j, "k_factor", p.k_factor);
    p.boltzmann_k = get_or(j, "boltzmann_k", p.boltzmann_k);
    p.shake_flip_prob = get_or(j, "shake_flip_prob", p.shake_flip_prob);
    p.rng_seed = get_or(j, "seed", p.rng_seed);
    p.rejection_attempts = get_or(j, "rejection_attempts", p.rejection_attempts);
    p.initial_draws = get_or(j, "initial_draws", p.initial_draws);
    p.validate();
    return p;
}

json sa_to_json(const SaParams& p) {
    return json{{"t_init", p.t_init},
                {"t_final", p.t_final},
                {"alpha", p.alpha},
                {"k_factor", p.k_factor},
                {"boltzmann_k", p.boltzmann_k},
                {"shake_flip_prob", p.shake_flip_prob},
                {"seed", p.rng_seed},
                {"rejection_attempts", p.rejection_attempts},
                {"initial_draws", p.initial_draws}};
}

std::vector<double> read_multiplier_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open multiplier profile " + path.string());
    try {
        return json::parse(in).get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ConfigError("bad multiplier profile " + path.string() + ": " + e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
}

StationSpec spec_of(BsKind kind) {
    StationSpec s;
    s.kind = kind;
    return s;
}

}  // namespace

std::string_view to_string(DemandMode mode) { return mode == DemandMode::DelayTolerant ? "dt" : "ndt"; }

DemandMode parse_demand_mode(std::string_view name) {
    if (name == "dt") return DemandMode::DelayTolerant;
    if (name == "ndt") return DemandMode::NonDelayTolerant;
    throw ConfigError("unknown demand mode '" + std::string(name) + "'");
}

std::string_view to_string(PriceKind kind) { return kind == PriceKind::Fixed ? "fixed" : "dynamic"; }

PriceKind parse_price_kind(std::string_view name) {
    if (name == "fixed") return PriceKind::Fixed;
    if (name == "dynamic") return PriceKind::Dynamic;
    throw ConfigError("unknown pricing policy '" + std::string(name) + "'");
}

BaseStation StationSpec::resolve() const {
    BaseStation bs = default_station(kind);
    if (p_o) bs.p_o = *p_o;
    if (zeta) bs.zeta = *zeta;
    if (p_tx) bs.p_tx = *p_tx;
    if (p_sleep) {
        if (kind == BsKind::Macro) throw ConfigError("the macro station has no sleep power");
        bs.p_sleep = *p_sleep;
    }
    if (rb_capacity) bs.rb_capacity = *rb_capacity;
    if (bandwidth_mhz) bs.bandwidth_mhz = *bandwidth_mhz;
    bs.validate();
    return bs;
}

ScenarioConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
    expect_keys(doc, "config", {"grid", "stations", "traffic", "normalization", "pricing", "beta", "demand",
                                "offload_mode", "mbs_capacity_limit", "sa"});
    ScenarioConfig c;
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        expect_keys(g, "grid", {"horizon_min", "slot_min"});
        c.horizon_min = get_or(g, "horizon_min", c.horizon_min);
        c.slot_min = get_or(g, "slot_min", c.slot_min);
    }
    if (!doc.contains("stations") || !doc.at("stations").is_array()) {
        throw ConfigError("config needs a 'stations' list");
    }
    for (const json& entry : doc.at("stations")) {
        expect_keys(entry, "station", {"kind", "count", "p_o", "zeta", "p_tx", "p_sleep", "rb_capacity",
                                       "bandwidth_mhz"});
        const int count = get_or(entry, "count", 1);
        if (count < 0) throw ConfigError("station count must be non-negative");
        const StationSpec spec = station_from_json(entry);
        for (int i = 0; i < count; ++i) c.stations.push_back(spec);
    }
    if (doc.contains("traffic")) {
        const json& t = doc.at("traffic");
        expect_keys(t, "traffic", {"source", "seed", "path", "assignment"});
        const auto source = get_or<std::string>(t, "source", "synthetic");
        if (source == "synthetic") {
            c.traffic.kind = TrafficSourceKind::Synthetic;
            c.traffic.seed = get_or(t, "seed", c.traffic.seed);
        } else if (source == "csv") {
            c.traffic.kind = TrafficSourceKind::Csv;
            c.traffic.csv_path = get_or<std::string>(t, "path", "");
            c.traffic.assignment = get_or<GridAssignment>(t, "assignment", {});
            if (c.traffic.csv_path.empty()) throw ConfigError("csv traffic needs a 'path'");
            if (c.traffic.assignment.size() != c.stations.size()) {
                throw ConfigError("csv traffic needs one grid list per station");
            }
        } else {
            throw ConfigError("unknown traffic source '" + source + "'");
        }
    }
    if (doc.contains("normalization")) {
        const json& n = doc.at("normalization");
        expect_keys(n, "normalization", {"mode", "divisor"});
        const auto mode = get_or<std::string>(n, "mode", "peak");
        if (mode == "peak") {
            c.normalization.mode = NormalizationMode::Peak;
        } else if (mode == "global") {
            c.normalization.mode = NormalizationMode::GlobalDivisor;
            c.normalization.divisor = get_or(n, "divisor", 0.0);
        } else {
            throw ConfigError("unknown normalization mode '" + mode + "'");
        }
    }
    if (doc.contains("pricing")) {
        const json& p = doc.at("pricing");
        expect_keys(p, "pricing", {"policy", "fixed_electricity", "fixed_spectrum", "electricity_multipliers",
                                   "electricity_multipliers_path", "m_min", "m_max"});
        c.pricing.kind = parse_price_kind(get_or<std::string>(p, "policy", "dynamic"));
        c.pricing.fixed_electricity = get_or(p, "fixed_electricity", c.pricing.fixed_electricity);
        c.pricing.fixed_spectrum = get_or(p, "fixed_spectrum", c.pricing.fixed_spectrum);
        c.pricing.electricity_multipliers = get_or<std::vector<double>>(p, "electricity_multipliers", {});
        if (p.contains("electricity_multipliers_path")) {
            if (!c.pricing.electricity_multipliers.empty()) {
                throw ConfigError("give electricity multipliers inline or by path, not both");
            }
            c.pricing.electricity_multipliers =
                read_multiplier_file(resolve(base_dir, get_or<std::string>(p, "electricity_multipliers_path", "")));
        }
        c.pricing.spectrum_scaler.m_min = get_or(p, "m_min", c.pricing.spectrum_scaler.m_min);
        c.pricing.spectrum_scaler.m_max = get_or(p, "m_max", c.pricing.spectrum_scaler.m_max);
    }
    c.beta = get_or(doc, "beta", c.beta);
    if (!(c.beta >= 0.0 && c.beta <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
    c.demand = parse_demand_mode(get_or<std::string>(doc, "demand", "ndt"));
    c.offload_mode = parse_offload_mode(get_or<std::string>(doc, "offload_mode", "direct"));
    c.mbs_capacity_limit = get_or(doc, "mbs_capacity_limit", c.mbs_capacity_limit);
    if (doc.contains("sa")) c.sa = sa_from_json(doc.at("sa"));
    return c;
}

json config_to_json(const ScenarioConfig& c) {
    json doc;
    doc["grid"] = {{"horizon_min", c.horizon_min}, {"slot_min", c.slot_min}};
    doc["stations"] = json::array();
    for (const auto& s : c.stations) doc["stations"].push_back(station_to_json(s));
    if (c.traffic.kind == TrafficSourceKind::Synthetic) {
        doc["traffic"] = {{"source", "synthetic"}, {"seed", c.traffic.seed}};
    } else {
        doc["traffic"] = {{"source", "csv"}, {"path", c.traffic.csv_path}, {"assignment", c.traffic.assignment}};
    }
    if (c.normalization.mode == NormalizationMode::Peak) {
        doc["normalization"] = {{"mode", "peak"}};
    } else {
        doc["normalization"] = {{"mode", "global"}, {"divisor", c.normalization.divisor}};
    }
    doc["pricing"] = {{"policy", to_string(c.pricing.kind)},
                      {"fixed_electricity", c.pricing.fixed_electricity},
                      {"fixed_spectrum", c.pricing.fixed_spectrum},
                      {"m_min", c.pricing.spectrum_scaler.m_min},
                      {"m_max", c.pricing.spectrum_scaler.m_max}};
    if (!c.pricing.electricity_multipliers.empty()) {
        doc["pricing"]["electricity_multipliers"] = c.pricing.electricity_multipliers;
    }
    doc["beta"] = c.beta;
    doc["demand"] = to_string(c.demand);
    doc["offload_mode"] = to_string(c.offload_mode);
    doc["mbs_capacity_limit"] = c.mbs_capacity_limit;
    doc["sa"] = sa_to_json(c.sa);
    return doc;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(doc, path.parent_path());
}

Scenario build_scenario(const ScenarioConfig& config, const std::filesystem::path& base_dir) {
    const TimeGrid grid(config.horizon_min, config.slot_min);
    if (config.stations.empty()) throw ConfigError("config lists no stations");

    std::vector<BaseStation> stations;
    stations.reserve(config.stations.size());
    for (const auto& spec : config.stations) stations.push_back(spec.resolve());

    std::vector<std::vector<double>> raw;
    if (config.traffic.kind == TrafficSourceKind::Synthetic) {
        raw = synth_traffic(config.traffic.seed, stations.size(), grid);
    } else {
        raw = ingest_activity_csv(resolve(base_dir, config.traffic.csv_path), config.traffic.assignment,
                                  grid.num_slots())
                  .raw;
    }
    std::vector<TrafficSeries> traffic = normalize_series(raw, config.normalization);
    PricingSeries pricing = build_pricing(config.pricing, traffic, grid);
    auto demand = sn_demand_from_pn(stations, traffic, config.beta);
    if (config.demand == DemandMode::DelayTolerant) demand = dt_shift(demand, pricing.spectrum_series());

    return Scenario(grid, std::move(stations), std::move(traffic), std::move(demand), std::move(pricing),
                    config.offload_mode, config.mbs_capacity_limit);
}

ScenarioConfig reference_config(std::uint64_t traffic_seed) {
    ScenarioConfig c;
    c.stations.push_back(spec_of(BsKind::Macro));
    for (BsKind kind : {BsKind::Rrh, BsKind::Micro, BsKind::Pico, BsKind::Femto}) {
        for (int i = 0; i < 3; ++i) c.stations.push_back(spec_of(kind));
    }
    c.traffic.seed = traffic_seed;
    return c;
}

ScenarioConfig bench_config(std::size_t num_sbs, std::uint64_t traffic_seed) {
    static constexpr std::array<BsKind, 4> kCycle{BsKind::Rrh, BsKind::Micro, BsKind::Pico, BsKind::Femto};
    ScenarioConfig c;
    c.stations.push_back(spec_of(BsKind::Macro));
    for (std::size_t j = 0; j < num_sbs; ++j) c.stations.push_back(spec_of(kCycle[j % kCycle.size()]));
    c.traffic.seed = traffic_seed;
    return c;
}

json scenario_to_json(const Scenario& s) {
    json doc;
    doc["grid"] = {{"horizon_min", s.grid().horizon_min()}, {"slot_min", s.grid().slot_min()}};
    doc["stations"] = json::array();
    for (const auto& bs : s.stations()) {
        json j{{"kind", to_string(bs.kind)},         {"p_o", bs.p_o},
               {"zeta", bs.zeta},                    {"p_tx", bs.p_tx},
               {"rb_capacity", bs.rb_capacity},      {"bandwidth_mhz", bs.bandwidth_mhz}};
        j["p_sleep"] = bs.p_sleep ? json(*bs.p_sleep) : json(nullptr);
        doc["stations"].push_back(std::move(j));
    }
    doc["pn_traffic"] = json::array();
    for (const auto& series : s.pn_traffic()) {
        doc["pn_traffic"].push_back(std::vector<double>(series.values().begin(), series.values().end()));
    }
    doc["sn_demand"] = s.sn_demand();
    const auto e = s.pricing().electricity_series();
    const auto r = s.pricing().spectrum_series();
    doc["pricing"] = {{"electricity", std::vector<double>(e.begin(), e.end())},
                      {"spectrum", std::vector<double>(r.begin(), r.end())}};
    doc["offload_mode"] = to_string(s.offload_mode());
    doc["mbs_capacity_limit"] = s.mbs_capacity_limit();
    return doc;
}

Scenario scenario_from_json(const json& doc) {
    try {
        const TimeGrid grid(doc.at("grid").at("horizon_min").get<int>(), doc.at("grid").at("slot_min").get<int>());
        std::vector<BaseStation> stations;
        for (const json& j : doc.at("stations")) {
            BaseStation bs;
            bs.kind = parse_kind(j.at("kind").get<std::string>());
            bs.p_o = j.at("p_o").get<double>();
            bs.zeta = j.at("zeta").get<double>();
            bs.p_tx = j.at("p_tx").get<double>();
            if (!j.at("p_sleep").is_null()) bs.p_sleep = j.at("p_sleep").get<double>();
            bs.rb_capacity = j.at("rb_capacity").get<int>();
            bs.bandwidth_mhz = j.at("bandwidth_mhz").get<double>();
            stations.push_back(bs);
        }
        std::vector<TrafficSeries> traffic;
        for (const json& series : doc.at("pn_traffic")) traffic.emplace_back(series.get<std::vector<double>>());
        PricingSeries pricing(doc.at("pricing").at("electricity").get<std::vector<double>>(),
                              doc.at("pricing").at("spectrum").get<std::vector<double>>());
        return Scenario(grid, std::move(stations), std::move(traffic),
                        doc.at("sn_demand").get<std::vector<std::vector<int>>>(), std::move(pricing),
                        parse_offload_mode(doc.at("offload_mode").get<std::string>()),
                        doc.at("mbs_capacity_limit").get<double>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario document: ") + e.what());
    }
}

}  // namespace hetnet
