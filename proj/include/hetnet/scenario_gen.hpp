#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

// One row of an activity CSV (`grid_id,slot_index,internet_activity`).
struct RawActivityRecord {
    long long grid_id = 0;
    std::size_t slot_index = 0;
    double internet_activity = 0.0;
};

// Grid ids feeding each station; entry i lists the grids summed for station i.
using GridAssignment = std::vector<std::vector<long long>>;

struct IngestResult {
    std::vector<std::vector<double>> raw;  // one series per station
    std::vector<std::string> warnings;
};

// Throws ParseError (with a 1-based line number) on malformed rows.
std::vector<RawActivityRecord> parse_activity_csv(std::istream& in, std::size_t num_slots);

// Sums assigned grids per station; rows for the same grid and slot add up.
// Slots without data are zero-filled and reported in `warnings`.
IngestResult aggregate_activity(std::span<const RawActivityRecord> records, const GridAssignment& assignment,
                                std::size_t num_slots);

IngestResult ingest_activity_csv(const std::filesystem::path& path, const GridAssignment& assignment,
                                 std::size_t num_slots);

enum class NormalizationMode { Peak, GlobalDivisor };

struct Normalization {
    NormalizationMode mode = NormalizationMode::Peak;
    double divisor = 1.0;  // GlobalDivisor only

    bool operator==(const Normalization&) const = default;
};

// Peak mode divides each station's series by its own maximum. GlobalDivisor
// divides everything by one constant and rejects values that land above 1.
std::vector<TrafficSeries> normalize_series(const std::vector<std::vector<double>>& raw,
                                            const Normalization& normalization = {});

// floor(beta * load * rb_capacity) RBs per SBS and slot. `traffic` covers all
// stations (macro first); the result covers the SBSs only.
std::vector<std::vector<int>> sn_demand_from_pn(std::span<const BaseStation> stations,
                                                std::span<const TrafficSeries> traffic, double beta);

// Circular shift that moves the slot of peak aggregate demand onto the slot of
// the cheapest spectrum price. Ties resolve to the earliest slot.
std::size_t dt_shift_offset(const std::vector<std::vector<int>>& sn_demand, std::span<const double> spectrum_price);

std::vector<std::vector<int>> dt_shift(const std::vector<std::vector<int>>& sn_demand,
                                       std::span<const double> spectrum_price);

// Affine map of aggregate PN load onto [m_min, m_max], rescaled to mean 1.
struct SpectrumScaler {
    double m_min = 0.5;
    double m_max = 1.5;

    bool operator==(const SpectrumScaler&) const = default;
};

std::vector<double> spectrum_multipliers(std::span<const TrafficSeries> pn_traffic, const SpectrumScaler& scaler = {});

std::vector<double> dynamic_spectrum_price(std::span<const TrafficSeries> pn_traffic, double fixed_price,
                                           const SpectrumScaler& scaler = {});

std::vector<double> dynamic_electricity_price(std::span<const double> multipliers, double fixed_price,
                                              std::size_t num_slots);

// Time-of-use multiplier per slot: cheap overnight, peaks in the morning and
// the evening. Slot 0 starts at midnight.
std::vector<double> default_electricity_multipliers(const TimeGrid& grid);

enum class PriceKind { Fixed, Dynamic };

struct PricePolicy {
    PriceKind kind = PriceKind::Dynamic;
    double fixed_electricity = kFixedElectricityPrice;
    double fixed_spectrum = kFixedSpectrumPrice;
    std::vector<double> electricity_multipliers;  // empty: default profile
    SpectrumScaler spectrum_scaler;

    bool operator==(const PricePolicy&) const = default;
};

PricingSeries build_pricing(const PricePolicy& policy, std::span<const TrafficSeries> pn_traffic,
                            const TimeGrid& grid);

enum class TrafficProfile { Diurnal };

// Reproducible raw activity, one series per station: overnight trough, daytime
// peak, a per-station phase offset and multiplicative noise.
std::vector<std::vector<double>> synth_traffic(std::uint64_t seed, std::size_t num_stations, const TimeGrid& grid,
                                               TrafficProfile profile = TrafficProfile::Diurnal);

}  // namespace hetnet
