#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hetnet {

enum class BsKind { Macro, Rrh, Micro, Pico, Femto };

inline constexpr std::array<BsKind, 5> kAllKinds{BsKind::Macro, BsKind::Rrh, BsKind::Micro,
                                                 BsKind::Pico, BsKind::Femto};

std::string_view to_string(BsKind kind);
BsKind parse_kind(std::string_view name);

// One primary-network node. Power follows p_o + load * zeta * p_tx while on,
// and p_sleep while switched off. The macro station never sleeps, so it has no
// sleep power.
struct BaseStation {
    BsKind kind = BsKind::Macro;
    double p_o = 0.0;     // W, constant circuit power
    double zeta = 0.0;    // load-dependence slope
    double p_tx = 0.0;    // W
    std::optional<double> p_sleep;  // W, SBS only
    int rb_capacity = 0;
    double bandwidth_mhz = 0.0;

    // Watts added per unit of normalized load.
    double load_slope() const noexcept { return zeta * p_tx; }

    // Throws InvariantError when the constants are inconsistent.
    void validate() const;

    bool operator==(const BaseStation&) const = default;
};

// Station templates for Macro, RRH, micro, pico, femto, indexed by BsKind.
const std::array<BaseStation, 5>& default_parameter_set();
const BaseStation& default_station(BsKind kind);

inline constexpr double kFixedElectricityPrice = 0.1293;  // GBP per kWh
inline constexpr double kFixedSpectrumPrice = 0.13;       // GBP per RB per slot

class TimeGrid {
public:
    TimeGrid() : TimeGrid(1440, 10) {}
    TimeGrid(int horizon_min, int slot_min);

    int horizon_min() const noexcept { return horizon_min_; }
    int slot_min() const noexcept { return slot_min_; }
    std::size_t num_slots() const noexcept { return num_slots_; }

    bool operator==(const TimeGrid&) const = default;

private:
    int horizon_min_;
    int slot_min_;
    std::size_t num_slots_;
};

// Per-slot normalized load, every element in [0, 1].
class TrafficSeries {
public:
    TrafficSeries() = default;
    explicit TrafficSeries(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t slot) const { return values_[slot]; }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const TrafficSeries&) const = default;

private:
    std::vector<double> values_;
};

// On/off state of every station in one slot, macro first. The macro bit is
// always on; SBS indices run 1..num_sbs().
class SwitchVector {
public:
    SwitchVector() : gamma_{1} {}
    explicit SwitchVector(const std::vector<bool>& gamma);

    static SwitchVector all_on(std::size_t num_sbs);
    // Bit (j - 1) of the mask set means SBS j is off.
    static SwitchVector from_off_mask(std::size_t num_sbs, std::uint64_t mask);
    // Parses the "1011" form produced by to_string().
    static SwitchVector parse(std::string_view bits);

    std::size_t num_stations() const noexcept { return gamma_.size(); }
    std::size_t num_sbs() const noexcept { return gamma_.size() - 1; }
    bool is_on(std::size_t station) const { return gamma_.at(station) != 0; }
    bool is_off(std::size_t station) const { return !is_on(station); }

    void set_sbs(std::size_t sbs, bool on);
    void flip_sbs(std::size_t sbs);
    void swap_sbs(std::size_t a, std::size_t b);

    std::size_t off_count() const noexcept;
    std::uint64_t off_mask() const;
    std::string to_string() const;

    bool operator==(const SwitchVector&) const = default;

private:
    void check_sbs(std::size_t sbs) const;

    std::vector<std::uint8_t> gamma_;
};

std::size_t hamming_distance(const SwitchVector& a, const SwitchVector& b);

// Electricity price per kWh and spectrum price per RB, one entry per slot.
class PricingSeries {
public:
    PricingSeries() = default;
    PricingSeries(std::vector<double> electricity, std::vector<double> spectrum);

    static PricingSeries constant(std::size_t num_slots, double electricity, double spectrum);

    std::size_t size() const noexcept { return electricity_.size(); }
    double electricity(std::size_t slot) const { return electricity_[slot]; }
    double spectrum(std::size_t slot) const { return spectrum_[slot]; }
    std::span<const double> electricity_series() const noexcept { return electricity_; }
    std::span<const double> spectrum_series() const noexcept { return spectrum_; }

    bool operator==(const PricingSeries&) const = default;

private:
    std::vector<double> electricity_;
    std::vector<double> spectrum_;
};

// How a sleeping SBS's load lands on the macro station. Direct adds the SBS's
// normalized load unchanged; CapacityScaled weights it by rb_sbs / rb_macro.
enum class OffloadMode { Direct, CapacityScaled };

std::string_view to_string(OffloadMode mode);
OffloadMode parse_offload_mode(std::string_view name);

// One macro cell over one horizon. Immutable once built.
class Scenario {
public:
    // sn_demand holds one RB-count series per SBS, so sn_demand[j - 1] belongs
    // to station j.
    Scenario(TimeGrid grid, std::vector<BaseStation> stations, std::vector<TrafficSeries> pn_traffic,
             std::vector<std::vector<int>> sn_demand, PricingSeries pricing,
             OffloadMode offload_mode = OffloadMode::Direct, double mbs_capacity_limit = 1.0);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t num_slots() const noexcept { return grid_.num_slots(); }
    std::size_t num_sbs() const noexcept { return stations_.size() - 1; }
    std::size_t num_stations() const noexcept { return stations_.size(); }

    const std::vector<BaseStation>& stations() const noexcept { return stations_; }
    const BaseStation& station(std::size_t i) const { return stations_.at(i); }
    const BaseStation& macro() const noexcept { return stations_.front(); }

    const std::vector<TrafficSeries>& pn_traffic() const noexcept { return pn_traffic_; }
    double load(std::size_t station, std::size_t slot) const { return pn_traffic_[station][slot]; }

    const std::vector<std::vector<int>>& sn_demand() const noexcept { return sn_demand_; }
    int demand(std::size_t sbs, std::size_t slot) const { return sn_demand_[sbs - 1][slot]; }

    const PricingSeries& pricing() const noexcept { return pricing_; }
    OffloadMode offload_mode() const noexcept { return offload_mode_; }
    double mbs_capacity_limit() const noexcept { return mbs_capacity_limit_; }

    // Copies with one component replaced; the result is revalidated.
    Scenario with_sn_demand(std::vector<std::vector<int>> sn_demand) const;
    Scenario with_pricing(PricingSeries pricing) const;
    Scenario with_offload_mode(OffloadMode mode) const;

    bool operator==(const Scenario&) const = default;

private:
    TimeGrid grid_;
    std::vector<BaseStation> stations_;
    std::vector<TrafficSeries> pn_traffic_;
    std::vector<std::vector<int>> sn_demand_;
    PricingSeries pricing_;
    OffloadMode offload_mode_;
    double mbs_capacity_limit_;
};

struct RevenueBreakdown {
    double energy = 0.0;
    double leasing = 0.0;
    double total = 0.0;

    static RevenueBreakdown of(double energy, double leasing) {
        return {energy, leasing, energy + leasing};
    }

    RevenueBreakdown& operator+=(const RevenueBreakdown& other) {
        energy += other.energy;
        leasing += other.leasing;
        total += other.total;
        return *this;
    }

    bool operator==(const RevenueBreakdown&) const = default;
};

struct SolverResult {
    std::vector<SwitchVector> per_slot_switch;
    std::vector<RevenueBreakdown> per_slot_revenue;
    RevenueBreakdown daily;
    std::int64_t runtime_ns = 0;
    std::uint64_t evaluations = 0;
};

}  // namespace hetnet
