#include "hetnet/model.hpp"

#include <algorithm>
#include <cmath>

#include "hetnet/error.hpp"

namespace hetnet {

namespace {

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string_view to_string(BsKind kind) {
    switch (kind) {
        case BsKind::Macro: return "macro";
        case BsKind::Rrh: return "rrh";
        case BsKind::Micro: return "micro";
        case BsKind::Pico: return "pico";
        case BsKind::Femto: return "femto";
    }
    return "?";
}

BsKind parse_kind(std::string_view name) {
    for (BsKind k : kAllKinds) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown station kind '" + std::string(name) + "'");
}

void BaseStation::validate() const {
    const std::string who(to_string(kind));
    if (!finite_non_negative(p_o) || !finite_non_negative(zeta) || !finite_non_negative(p_tx)) {
        throw InvariantError(who + ": power constants must be finite and non-negative");
    }
    if (rb_capacity <= 0) throw InvariantError(who + ": rb_capacity must be positive");
    if (!(bandwidth_mhz > 0.0)) throw InvariantError(who + ": bandwidth must be positive");
    if (kind == BsKind::Macro) {
        if (p_sleep) throw InvariantError("macro station has no sleep power");
        return;
    }
    if (!p_sleep) throw InvariantError(who + ": SBS needs a sleep power");
    if (!(*p_sleep >= 0.0 && *p_sleep < p_o)) {
        throw InvariantError(who + ": sleep power must satisfy 0 <= p_sleep < p_o");
    }
}

const std::array<BaseStation, 5>& default_parameter_set() {
    static const std::array<BaseStation, 5> table{{
        {BsKind::Macro, 130.0, 4.7, 20.0, std::nullopt, 100, 20.0},
        {BsKind::Rrh, 84.0, 2.8, 20.0, 56.0, 75, 15.0},
        {BsKind::Micro, 56.0, 2.6, 6.3, 39.0, 50, 10.0},
        {BsKind::Pico, 6.8, 4.0, 0.13, 4.3, 25, 5.0},
        {BsKind::Femto, 4.8, 8.0, 0.05, 2.9, 15, 3.0},
    }};
    return table;
}

const BaseStation& default_station(BsKind kind) {
    return default_parameter_set()[static_cast<std::size_t>(kind)];
}

TimeGrid::TimeGrid(int horizon_min, int slot_min) : horizon_min_(horizon_min), slot_min_(slot_min) {
    if (slot_min <= 0 || horizon_min <= 0) throw InvariantError("time grid durations must be positive");
    if (horizon_min % slot_min != 0) {
        throw InvariantError("horizon " + std::to_string(horizon_min) +
                             " min is not a multiple of the slot length " + std::to_string(slot_min));
    }
    num_slots_ = static_cast<std::size_t>(horizon_min / slot_min);
}

TrafficSeries::TrafficSeries(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t t = 0; t < values_.size(); ++t) {
        const double v = values_[t];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvariantError("traffic load at slot " + std::to_string(t) + " outside [0, 1]");
        }
    }
}

SwitchVector::SwitchVector(const std::vector<bool>& gamma) {
    if (gamma.empty() || !gamma.front()) {
        throw InvariantError("switch vector must start with the macro station switched on");
    }
    gamma_.assign(gamma.begin(), gamma.end());
}

SwitchVector SwitchVector::all_on(std::size_t num_sbs) {
    SwitchVector s;
    s.gamma_.assign(num_sbs + 1, 1);
    return s;
}

SwitchVector SwitchVector::from_off_mask(std::size_t num_sbs, std::uint64_t mask) {
    if (num_sbs < 64 && (mask >> num_sbs) != 0) throw InvariantError("off mask wider than SBS count");
    SwitchVector s = all_on(num_sbs);
    for (std::size_t j = 1; j <= num_sbs && j <= 64; ++j) {
        if ((mask >> (j - 1)) & 1U) s.gamma_[j] = 0;
    }
    return s;
}

SwitchVector SwitchVector::parse(std::string_view bits) {
    std::vector<bool> gamma;
    gamma.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw InvariantError("switch bitstring may only contain 0 and 1");
        gamma.push_back(c == '1');
    }
    return SwitchVector(gamma);
}

void SwitchVector::check_sbs(std::size_t sbs) const {
    if (sbs == 0 || sbs >= gamma_.size()) {
        throw InvariantError("SBS index " + std::to_string(sbs) + " out of range");
    }
}

void SwitchVector::set_sbs(std::size_t sbs, bool on) {
    check_sbs(sbs);
    gamma_[sbs] = on ? 1 : 0;
}

void SwitchVector::flip_sbs(std::size_t sbs) {
    check_sbs(sbs);
    gamma_[sbs] ^= 1U;
}

void SwitchVector::swap_sbs(std::size_t a, std::size_t b) {
    check_sbs(a);
    check_sbs(b);
    std::swap(gamma_[a], gamma_[b]);
}

std::size_t SwitchVector::off_count() const noexcept {
    return static_cast<std::size_t>(std::count(gamma_.begin() + 1, gamma_.end(), std::uint8_t{0}));
}

std::uint64_t SwitchVector::off_mask() const {
    if (num_sbs() > 64) throw DomainError("off mask needs at most 64 SBSs");
    std::uint64_t mask = 0;
    for (std::size_t j = 1; j < gamma_.size(); ++j) {
        if (!gamma_[j]) mask |= std::uint64_t{1} << (j - 1);
    }
    return mask;
}

std::string SwitchVector::to_string() const {
    std::string out;
    out.reserve(gamma_.size());
    for (auto g : gamma_) out.push_back(g ? '1' : '0');
    return out;
}

std::size_t hamming_distance(const SwitchVector& a, const SwitchVector& b) {
    if (a.num_stations() != b.num_stations()) throw InvariantError("switch vectors differ in length");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.num_stations(); ++i) d += a.is_on(i) != b.is_on(i);
    return d;
}

PricingSeries::PricingSeries(std::vector<double> electricity, std::vector<double> spectrum)
    : electricity_(std::move(electricity)), spectrum_(std::move(spectrum)) {
    if (electricity_.size() != spectrum_.size()) throw InvariantError("price series lengths differ");
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!std::all_of(electricity_.begin(), electricity_.end(), positive) ||
        !std::all_of(spectrum_.begin(), spectrum_.end(), positive)) {
        throw InvariantError("prices must be strictly positive");
    }
}

PricingSeries PricingSeries::constant(std::size_t num_slots, double electricity, double spectrum) {
    return PricingSeries(std::vector<double>(num_slots, electricity), std::vector<double>(num_slots, spectrum));
}

std::string_view to_string(OffloadMode mode) {
    return mode == OffloadMode::Direct ? "direct" : "capacity_scaled";
}

OffloadMode parse_offload_mode(std::string_view name) {
    if (name == "direct") return OffloadMode::Direct;
    if (name == "capacity_scaled" || name == "capacity-scaled") return OffloadMode::CapacityScaled;
    throw ConfigError("unknown offload mode '" + std::string(name) + "'");
}

Scenario::Scenario(TimeGrid grid, std::vector<BaseStation> stations, std::vector<TrafficSeries> pn_traffic,
                   std::vector<std::vector<int>> sn_demand, PricingSeries pricing, OffloadMode offload_mode,
                   double mbs_capacity_limit)
    : grid_(grid),
      stations_(std::move(stations)),
      pn_traffic_(std::move(pn_traffic)),
      sn_demand_(std::move(sn_demand)),
      pricing_(std::move(pricing)),
      offload_mode_(offload_mode),
      mbs_capacity_limit_(mbs_capacity_limit) {
    if (stations_.empty() || stations_.front().kind != BsKind::Macro) {
        throw InvariantError("station 0 must be the macro station");
    }
    for (std::size_t i = 0; i < stations_.size(); ++i) {
        if (i > 0 && stations_[i].kind == BsKind::Macro) {
            throw InvariantError("only station 0 may be a macro station");
        }
        stations_[i].validate();
    }
    const std::size_t slots = grid_.num_slots();
    if (pn_traffic_.size() != stations_.size()) throw InvariantError("need one traffic series per station");
    for (const auto& s : pn_traffic_) {
        if (s.size() != slots) throw InvariantError("traffic series length differs from the time grid");
    }
    if (sn_demand_.size() != num_sbs()) throw InvariantError("need one SN demand series per SBS");
    for (std::size_t j = 1; j <= num_sbs(); ++j) {
        const auto& d = sn_demand_[j - 1];
        if (d.size() != slots) throw InvariantError("SN demand length differs from the time grid");
        const int cap = stations_[j].rb_capacity;
        for (std::size_t t = 0; t < slots; ++t) {
            if (d[t] < 0 || d[t] > cap) {
                throw InvariantError("SN demand of SBS " + std::to_string(j) + " at slot " + std::to_string(t) +
                                     " outside [0, " + std::to_string(cap) + "] RBs");
            }
        }
    }
    if (pricing_.size() != slots) throw InvariantError("pricing length differs from the time grid");
    if (!(mbs_capacity_limit_ > 0.0 && mbs_capacity_limit_ <= 1.0)) {
        throw InvariantError("macro capacity limit must lie in (0, 1]");
    }
    // Keeps the all-on switch feasible in every slot.
    for (std::size_t t = 0; t < slots; ++t) {
        if (pn_traffic_[0][t] > mbs_capacity_limit_) {
            throw InvariantError("macro load at slot " + std::to_string(t) + " exceeds its capacity limit");
        }
    }
}

Scenario Scenario::with_sn_demand(std::vector<std::vector<int>> sn_demand) const {
    return Scenario(grid_, stations_, pn_traffic_, std::move(sn_demand), pricing_, offload_mode_,
                    mbs_capacity_limit_);
}

Scenario Scenario::with_pricing(PricingSeries pricing) const {
    return Scenario(grid_, stations_, pn_traffic_, sn_demand_, std::move(pricing), offload_mode_,
                    mbs_capacity_limit_);
}

Scenario Scenario::with_offload_mode(OffloadMode mode) const {
    return Scenario(grid_, stations_, pn_traffic_, sn_demand_, pricing_, mode, mbs_capacity_limit_);
}

}  // namespace hetnet
