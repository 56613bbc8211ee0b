#include "hetnet/scenario_gen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <string_view>

#include "hetnet/error.hpp"
#include "hetnet/log.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

template <typename T>
T parse_field(std::string_view field, std::string_view name, std::size_t line) {
    field = trim(field);
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("bad " + std::string(name) + " '" + std::string(field) + "'", line);
    }
    return value;
}

constexpr std::string_view kCsvHeader = "grid_id,slot_index,internet_activity";

}  // namespace

std::vector<RawActivityRecord> parse_activity_csv(std::istream& in, std::size_t num_slots) {
    std::vector<RawActivityRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = trim(line);
        if (row.empty()) continue;
        if (!header_seen) {
            if (row != kCsvHeader) throw ParseError("expected header '" + std::string(kCsvHeader) + "'", line_no);
            header_seen = true;
            continue;
        }
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError("expected 3 comma-separated fields", line_no);
        }
        RawActivityRecord r;
        r.grid_id = parse_field<long long>(row.substr(0, c1), "grid_id", line_no);
        r.slot_index = parse_field<std::size_t>(row.substr(c1 + 1, c2 - c1 - 1), "slot_index", line_no);
        r.internet_activity = parse_field<double>(row.substr(c2 + 1), "internet_activity", line_no);
        if (r.slot_index >= num_slots) {
            throw ParseError("slot_index " + std::to_string(r.slot_index) + " beyond the " +
                                 std::to_string(num_slots) + "-slot grid",
                             line_no);
        }
        if (!std::isfinite(r.internet_activity) || r.internet_activity < 0.0) {
            throw ParseError("internet_activity must be finite and non-negative", line_no);
        }
        records.push_back(r);
    }
    if (!header_seen) throw ParseError("empty activity file", line_no);
    return records;
}

IngestResult aggregate_activity(std::span<const RawActivityRecord> records, const GridAssignment& assignment,
                                std::size_t num_slots) {
    std::map<long long, std::vector<double>> per_grid;
    std::map<long long, std::vector<bool>> seen;
    for (const auto& r : records) {
        auto& series = per_grid[r.grid_id];
        auto& present = seen[r.grid_id];
        if (series.empty()) {
            series.assign(num_slots, 0.0);
            present.assign(num_slots, false);
        }
        series[r.slot_index] += r.internet_activity;
        present[r.slot_index] = true;
    }

    IngestResult out;
    out.raw.assign(assignment.size(), std::vector<double>(num_slots, 0.0));
    std::set<long long> reported;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i].empty()) throw ConfigError("station " + std::to_string(i) + " has no grid assigned");
        for (long long grid : assignment[i]) {
            const auto it = per_grid.find(grid);
            if (it == per_grid.end()) throw ConfigError("grid " + std::to_string(grid) + " not present in the data");
            for (std::size_t t = 0; t < num_slots; ++t) out.raw[i][t] += it->second[t];

            const auto& present = seen.at(grid);
            const auto missing = static_cast<std::size_t>(std::count(present.begin(), present.end(), false));
            if (missing > 0 && reported.insert(grid).second) {
                const auto first = static_cast<std::size_t>(std::find(present.begin(), present.end(), false) -
                                                            present.begin());
                out.warnings.push_back("grid " + std::to_string(grid) + " has " + std::to_string(missing) +
                                       " missing slot(s), first at slot " + std::to_string(first) +
                                       "; filled with 0");
            }
        }
    }
    for (const auto& w : out.warnings) log_warning(w);
    return out;
}

IngestResult ingest_activity_csv(const std::filesystem::path& path, const GridAssignment& assignment,
                                 std::size_t num_slots) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open activity file " + path.string());
    const auto records = parse_activity_csv(in, num_slots);
    return aggregate_activity(records, assignment, num_slots);
}

std::vector<TrafficSeries> normalize_series(const std::vector<std::vector<double>>& raw,
                                            const Normalization& normalization) {
    std::vector<TrafficSeries> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& series = raw[i];
        double divisor = normalization.divisor;
        if (normalization.mode == NormalizationMode::Peak) {
            divisor = series.empty() ? 0.0 : *std::max_element(series.begin(), series.end());
            if (!(divisor > 0.0)) {
                throw DegenerateInstance("station " + std::to_string(i) + " has no positive traffic");
            }
        } else if (!(divisor > 0.0)) {
            throw ConfigError("normalization divisor must be positive");
        }
        std::vector<double> values(series.size());
        for (std::size_t t = 0; t < series.size(); ++t) {
            values[t] = series[t] / divisor;
            if (values[t] > 1.0) {
                throw ConfigError("station " + std::to_string(i) + " exceeds the normalization divisor at slot " +
                                  std::to_string(t));
            }
        }
        out.emplace_back(std::move(values));
    }
    return out;
}

std::vector<std::vector<int>> sn_demand_from_pn(std::span<const BaseStation> stations,
                                                std::span<const TrafficSeries> traffic, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
    if (stations.size() != traffic.size()) throw InvariantError("need one traffic series per station");
    std::vector<std::vector<int>> out;
    for (std::size_t j = 1; j < stations.size(); ++j) {
        const int cap = stations[j].rb_capacity;
        std::vector<int> demand(traffic[j].size());
        for (std::size_t t = 0; t < demand.size(); ++t) {
            // The epsilon absorbs representation error such as 0.7 * 50 = 34.999...
            const double rbs = std::floor(beta * traffic[j][t] * cap + 1e-9);
            demand[t] = std::min(cap, static_cast<int>(rbs));
        }
        out.push_back(std::move(demand));
    }
    return out;
}

std::size_t dt_shift_offset(const std::vector<std::vector<int>>& sn_demand, std::span<const double> spectrum_price) {
    const std::size_t slots = spectrum_price.size();
    if (slots == 0) return 0;
    std::vector<long long> aggregate(slots, 0);
    for (const auto& series : sn_demand) {
        if (series.size() != slots) throw InvariantError("demand and price series lengths differ");
        for (std::size_t t = 0; t < slots; ++t) aggregate[t] += series[t];
    }
    const auto peak = static_cast<std::size_t>(std::max_element(aggregate.begin(), aggregate.end()) - aggregate.begin());
    const auto cheapest =
        static_cast<std::size_t>(std::min_element(spectrum_price.begin(), spectrum_price.end()) - spectrum_price.begin());
    return (cheapest + slots - peak) % slots;
}

std::vector<std::vector<int>> dt_shift(const std::vector<std::vector<int>>& sn_demand,
                                       std::span<const double> spectrum_price) {
    const std::size_t offset = dt_shift_offset(sn_demand, spectrum_price);
    const std::size_t slots = spectrum_price.size();
    std::vector<std::vector<int>> out;
    out.reserve(sn_demand.size());
    for (const auto& series : sn_demand) {
        std::vector<int> shifted(slots);
        for (std::size_t t = 0; t < slots; ++t) shifted[(t + offset) % slots] = series[t];
        out.push_back(std::move(shifted));
    }
    return out;
}

std::vector<double> spectrum_multipliers(std::span<const TrafficSeries> pn_traffic, const SpectrumScaler& scaler) {
    if (!(scaler.m_min > 0.0 && scaler.m_max >= scaler.m_min)) {
        throw ConfigError("spectrum scaler needs 0 < m_min <= m_max");
    }
    if (pn_traffic.empty()) return {};
    const std::size_t slots = pn_traffic.front().size();
    std::vector<double> aggregate(slots, 0.0);
    for (const auto& series : pn_traffic) {
        for (std::size_t t = 0; t < slots; ++t) aggregate[t] += series[t];
    }
    const auto [lo_it, hi_it] = std::minmax_element(aggregate.begin(), aggregate.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> m(slots, 1.0);
    if (!(hi > lo)) {
        log_warning("aggregate PN traffic is constant; dynamic spectrum multiplier fixed at 1");
        return m;
    }
    for (std::size_t t = 0; t < slots; ++t) {
        m[t] = scaler.m_min + (scaler.m_max - scaler.m_min) * (aggregate[t] - lo) / (hi - lo);
    }
    const double mean = std::accumulate(m.begin(), m.end(), 0.0) / static_cast<double>(slots);
    for (double& v : m) v /= mean;
    return m;
}

std::vector<double> dynamic_spectrum_price(std::span<const TrafficSeries> pn_traffic, double fixed_price,
                                           const SpectrumScaler& scaler) {
    if (!(fixed_price > 0.0)) throw DomainError("fixed spectrum price must be positive");
    std::vector<double> price = spectrum_multipliers(pn_traffic, scaler);
    for (double& p : price) p *= fixed_price;
    return price;
}

std::vector<double> dynamic_electricity_price(std::span<const double> multipliers, double fixed_price,
                                              std::size_t num_slots) {
    if (multipliers.size() != num_slots) {
        throw ConfigError("electricity multiplier profile has " + std::to_string(multipliers.size()) +
                          " entries, grid has " + std::to_string(num_slots) + " slots");
    }
    if (!(fixed_price > 0.0)) throw DomainError("fixed electricity price must be positive");
    std::vector<double> price(num_slots);
    for (std::size_t t = 0; t < num_slots; ++t) {
        if (!(multipliers[t] > 0.0)) throw ConfigError("electricity multipliers must be positive");
        price[t] = multipliers[t] * fixed_price;
    }
    return price;
}

std::vector<double> default_electricity_multipliers(const TimeGrid& grid) {
    // Hourly time-of-use factors, midnight first.
    static constexpr std::array<double, 24> kHourly{0.70, 0.65, 0.60, 0.60, 0.60, 0.65, 0.80, 1.05,
                                                    1.30, 1.35, 1.20, 1.10, 1.05, 1.00, 1.00, 1.05,
                                                    1.15, 1.35, 1.50, 1.45, 1.25, 1.05, 0.90, 0.80};
    std::vector<double> m(grid.num_slots());
    for (std::size_t t = 0; t < m.size(); ++t) {
        const auto minute = (static_cast<long long>(t) * grid.slot_min()) % 1440;
        m[t] = kHourly[static_cast<std::size_t>(minute / 60)];
    }
    return m;
}

PricingSeries build_pricing(const PricePolicy& policy, std::span<const TrafficSeries> pn_traffic,
                            const TimeGrid& grid) {
    const std::size_t slots = grid.num_slots();
    if (policy.kind == PriceKind::Fixed) {
        if (std::any_of(policy.electricity_multipliers.begin(), policy.electricity_multipliers.end(),
                        [](double m) { return m != 1.0; })) {
            throw ConfigError("fixed pricing takes no electricity multipliers other than 1");
        }
        return PricingSeries::constant(slots, policy.fixed_electricity, policy.fixed_spectrum);
    }
    const std::vector<double> multipliers = policy.electricity_multipliers.empty()
                                                ? default_electricity_multipliers(grid)
                                                : policy.electricity_multipliers;
    return PricingSeries(dynamic_electricity_price(multipliers, policy.fixed_electricity, slots),
                         dynamic_spectrum_price(pn_traffic, policy.fixed_spectrum, policy.spectrum_scaler));
}

std::vector<std::vector<double>> synth_traffic(std::uint64_t seed, std::size_t num_stations, const TimeGrid& grid,
                                               TrafficProfile profile) {
    (void)profile;  // Diurnal is the only profile.
    std::vector<std::vector<double>> out;
    out.reserve(num_stations);
    for (std::size_t s = 0; s < num_stations; ++s) {
        Rng rng = stream_rng(seed, s);
        const double phase_h = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
        const double level = std::uniform_real_distribution<double>(40.0, 160.0)(rng);
        const double trough = std::uniform_real_distribution<double>(0.08, 0.2)(rng);
        std::normal_distribution<double> noise(0.0, 0.06);

        std::vector<double> series(grid.num_slots());
        for (std::size_t t = 0; t < series.size(); ++t) {
            const double minute = static_cast<double>(t) * grid.slot_min() + grid.slot_min() / 2.0;
            const double hour = std::fmod(minute / 60.0, 24.0);
            // Minimum near 04:00, maximum near 16:00, shifted by the station phase.
            const double shape = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * (hour - 4.0 - phase_h) / 24.0));
            const double value = level * (trough + (1.0 - trough) * std::pow(shape, 1.3)) * (1.0 + noise(rng));
            series[t] = std::max(0.0, value);
        }
        out.push_back(std::move(series));
    }
    return out;
}

}  // namespace hetnet
