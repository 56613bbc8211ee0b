#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hetnet/config.hpp"
#include "hetnet/error.hpp"
#include "hetnet/log.hpp"
#include "hetnet/scenario_gen.hpp"
#include "hetnet/solvers.hpp"

using namespace hetnet;

namespace {

// Collects warnings for the lifetime of the object.
struct WarningCapture {
    std::vector<std::string> lines;
    LogSink previous;
    WarningCapture() {
        previous = set_log_sink([this](std::string_view m) { lines.emplace_back(m); });
    }
    ~WarningCapture() { set_log_sink(previous); }
};

std::vector<TrafficSeries> as_series(const std::vector<std::vector<double>>& v) {
    std::vector<TrafficSeries> out;
    for (const auto& s : v) out.emplace_back(s);
    return out;
}

long long total_rbs(const std::vector<std::vector<int>>& d) {
    long long sum = 0;
    for (const auto& s : d) sum = std::accumulate(s.begin(), s.end(), sum);
    return sum;
}

}  // namespace

TEST_CASE("activity csv parsing") {
    std::istringstream ok("grid_id,slot_index,internet_activity\n7,0,1.5\n 7 , 1 , 2\n\n8,0,0\n");
    const auto rows = parse_activity_csv(ok, 4);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].grid_id == 7);
    CHECK(rows[1].slot_index == 1);
    CHECK(rows[1].internet_activity == 2.0);

    auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_activity_csv(in, 4);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("grid,slot,activity\n") == 1);
    CHECK(line_of("grid_id,slot_index,internet_activity\n1,0,1\n1,x,1\n") == 3);
    CHECK(line_of("grid_id,slot_index,internet_activity\n1,0\n") == 2);
    CHECK(line_of("grid_id,slot_index,internet_activity\n1,9,1\n") == 2);
    CHECK(line_of("grid_id,slot_index,internet_activity\n1,0,-1\n") == 2);
}

TEST_CASE("empty activity input is rejected") {
    std::istringstream in("");
    CHECK_THROWS_AS(parse_activity_csv(in, 4), ParseError);
}

TEST_CASE("activity aggregation sums duplicates and zero-fills gaps") {
    WarningCapture cap;
    const std::vector<RawActivityRecord> rows{{1, 0, 2.0}, {1, 0, 3.0}, {1, 2, 1.0}, {2, 0, 4.0}, {2, 1, 4.0},
                                              {2, 2, 4.0}};
    const IngestResult r = aggregate_activity(rows, {{1}, {1, 2}}, 3);
    CHECK(r.raw[0] == std::vector<double>{5.0, 0.0, 1.0});
    CHECK(r.raw[1] == std::vector<double>{9.0, 4.0, 5.0});
    // Grid 1 is reported once although two stations use it.
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("grid 1") != std::string::npos);
    CHECK(r.warnings[0].find("slot 1") != std::string::npos);
    CHECK(cap.lines.size() == 1);

    CHECK_THROWS_AS(aggregate_activity(rows, {{1}, {}}, 3), ConfigError);
    CHECK_THROWS_AS(aggregate_activity(rows, {{3}}, 3), ConfigError);
}

TEST_CASE("peak normalization") {
    const auto out = normalize_series({{2.0, 4.0, 8.0}, {3.0, 3.0}});
    CHECK(out[0] == TrafficSeries({0.25, 0.5, 1.0}));
    CHECK(out[1] == TrafficSeries({1.0, 1.0}));
    // Scale invariance.
    CHECK(normalize_series({{20.0, 40.0, 80.0}})[0] == out[0]);
    CHECK_THROWS_AS(normalize_series({{0.0, 0.0}}), DegenerateInstance);
}

TEST_CASE("global-divisor normalization") {
    const Normalization n{NormalizationMode::GlobalDivisor, 10.0};
    CHECK(normalize_series({{2.0, 5.0}}, n)[0] == TrafficSeries({0.2, 0.5}));
    CHECK_THROWS_AS(normalize_series({{2.0, 11.0}}, n), ConfigError);
    CHECK_THROWS_AS(normalize_series({{2.0}}, {NormalizationMode::GlobalDivisor, 0.0}), ConfigError);
}

TEST_CASE("SN demand from PN load") {
    const std::vector<BaseStation> st{default_station(BsKind::Macro), default_station(BsKind::Micro),
                                      default_station(BsKind::Femto)};
    const auto traffic = as_series({{0.5, 0.5, 0.5}, {1.0, 0.5, 0.0}, {1.0, 0.3, 0.99}});
    const auto d = sn_demand_from_pn(st, traffic, 0.7);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == std::vector<int>{35, 17, 0});
    CHECK(d[1] == std::vector<int>{10, 3, 10});
    for (const auto& row : sn_demand_from_pn(st, traffic, 0.0)) CHECK(row == std::vector<int>{0, 0, 0});
    CHECK(sn_demand_from_pn(st, traffic, 1.0)[0] == std::vector<int>{50, 25, 0});
    CHECK_THROWS_AS(sn_demand_from_pn(st, traffic, 1.2), DomainError);
}

TEST_CASE("delay-tolerant shift") {
    std::vector<std::vector<int>> demand(2, std::vector<int>(12, 0));
    demand[0][10] = 5;
    demand[1][10] = 4;
    demand[1][2] = 1;
    std::vector<double> price(12, 1.0);
    price[3] = 0.5;
    CHECK(dt_shift_offset(demand, price) == (3 + 12 - 10) % 12);
    const auto shifted = dt_shift(demand, price);
    CHECK(shifted[0][3] == 5);
    CHECK(shifted[1][3] == 4);
    CHECK(shifted[1][(2 + 5) % 12] == 1);
    CHECK(total_rbs(shifted) == total_rbs(demand));

    // Constant price: the cheapest slot is slot 0, the shift moves the peak there.
    const std::vector<double> flat(12, 1.0);
    CHECK(dt_shift_offset(demand, flat) == 2);
    std::vector<std::vector<int>> peak_at_zero(1, std::vector<int>(12, 1));
    peak_at_zero[0][0] = 9;
    CHECK(dt_shift(peak_at_zero, flat) == peak_at_zero);
}

TEST_CASE("dynamic spectrum price") {
    const auto traffic = as_series({{0.1, 0.5, 0.9, 0.3}, {0.2, 0.2, 0.4, 0.0}});
    const auto price = dynamic_spectrum_price(traffic, kFixedSpectrumPrice);
    const double mean = std::accumulate(price.begin(), price.end(), 0.0) / 4.0;
    CHECK(std::fabs(mean - kFixedSpectrumPrice) <= 1e-9);
    CHECK(std::max_element(price.begin(), price.end()) - price.begin() == 2);
    CHECK(std::min_element(price.begin(), price.end()) - price.begin() == 0);

    const auto m = spectrum_multipliers(traffic);
    // Affine in aggregate load: equal aggregate steps give equal price steps.
    const double agg[] = {0.3, 0.7, 1.3, 0.3};
    CHECK((m[1] - m[0]) / (agg[1] - agg[0]) == doctest::Approx((m[2] - m[1]) / (agg[2] - agg[1])).epsilon(1e-12));
    CHECK(*std::max_element(m.begin(), m.end()) / *std::min_element(m.begin(), m.end()) ==
          doctest::Approx(3.0).epsilon(1e-12));

    WarningCapture cap;
    const auto flat = dynamic_spectrum_price(as_series({{0.4, 0.4, 0.4}}), kFixedSpectrumPrice);
    for (double p : flat) CHECK(p == kFixedSpectrumPrice);
    CHECK(cap.lines.size() == 1);
    CHECK_THROWS_AS(spectrum_multipliers(traffic, {0.0, 1.5}), ConfigError);
}

TEST_CASE("dynamic electricity price") {
    const std::vector<double> ones(4, 1.0);
    for (double p : dynamic_electricity_price(ones, kFixedElectricityPrice, 4)) CHECK(p == kFixedElectricityPrice);
    CHECK(dynamic_electricity_price(std::vector<double>{2.0}, kFixedElectricityPrice, 1)[0] ==
          doctest::Approx(0.2586).epsilon(1e-15));
    CHECK_THROWS_AS(dynamic_electricity_price(ones, kFixedElectricityPrice, 5), ConfigError);
    CHECK_THROWS_AS(dynamic_electricity_price(std::vector<double>{1.0, 0.0}, kFixedElectricityPrice, 2),
                    ConfigError);

    const auto m = default_electricity_multipliers(TimeGrid());
    REQUIRE(m.size() == 144);
    // Cheapest overnight, dearest in the evening.
    const auto lo = std::min_element(m.begin(), m.end()) - m.begin();
    const auto hi = std::max_element(m.begin(), m.end()) - m.begin();
    CHECK(lo / 6 >= 1);
    CHECK(lo / 6 <= 5);
    CHECK(hi / 6 >= 17);
    CHECK(hi / 6 <= 20);
}

TEST_CASE("pricing policy") {
    const TimeGrid grid(40, 10);
    const auto traffic = as_series({{0.1, 0.5, 0.9, 0.3}});
    PricePolicy fixed;
    fixed.kind = PriceKind::Fixed;
    const PricingSeries f = build_pricing(fixed, traffic, grid);
    for (std::size_t t = 0; t < 4; ++t) {
        CHECK(f.electricity(t) == kFixedElectricityPrice);
        CHECK(f.spectrum(t) == kFixedSpectrumPrice);
    }
    fixed.electricity_multipliers = {1.0, 1.0, 2.0, 1.0};
    CHECK_THROWS_AS(build_pricing(fixed, traffic, grid), ConfigError);

    PricePolicy dyn;
    dyn.electricity_multipliers = {0.5, 1.0, 1.5, 1.0};
    const PricingSeries d = build_pricing(dyn, traffic, grid);
    CHECK(d.electricity(2) == doctest::Approx(1.5 * kFixedElectricityPrice).epsilon(1e-15));
    CHECK(d.spectrum(2) > d.spectrum(1));
}

TEST_CASE("synthetic traffic") {
    const TimeGrid grid;
    const auto a = synth_traffic(3, 5, grid);
    CHECK(a == synth_traffic(3, 5, grid));
    CHECK(a != synth_traffic(4, 5, grid));
    for (const auto& s : a) {
        REQUIRE(s.size() == 144);
        CHECK(std::all_of(s.begin(), s.end(), [](double v) { return v >= 0.0; }));
        const double night = std::accumulate(s.begin() + 12, s.begin() + 36, 0.0);   // 02:00 to 06:00
        const double day = std::accumulate(s.begin() + 78, s.begin() + 102, 0.0);    // 13:00 to 17:00
        CHECK(night < day);
    }
    // The first stations do not depend on how many are drawn.
    CHECK(synth_traffic(3, 2, grid)[1] == a[1]);
}

TEST_CASE("delay-tolerant and non-delay-tolerant scenarios differ only in SN demand") {
    ScenarioConfig c = reference_config();
    const Scenario ndt = build_scenario(c);
    c.demand = DemandMode::DelayTolerant;
    const Scenario dt = build_scenario(c);
    CHECK(dt.pn_traffic() == ndt.pn_traffic());
    CHECK(dt.pricing() == ndt.pricing());
    CHECK(dt.stations() == ndt.stations());
    CHECK(dt.sn_demand() != ndt.sn_demand());
    CHECK(total_rbs(dt.sn_demand()) == total_rbs(ndt.sn_demand()));
    CHECK(dt.with_sn_demand(ndt.sn_demand()) == ndt);

    // After the shift more demand sits where the PN is quiet.
    const std::size_t slots = ndt.num_slots();
    std::vector<double> aggregate(slots, 0.0);
    for (std::size_t t = 0; t < slots; ++t) {
        for (std::size_t i = 0; i < ndt.num_stations(); ++i) aggregate[t] += ndt.load(i, t);
    }
    std::vector<double> sorted = aggregate;
    std::sort(sorted.begin(), sorted.end());
    const double quiet = sorted[slots / 4];
    double dt_value = 0.0, ndt_value = 0.0;
    for (std::size_t t = 0; t < slots; ++t) {
        if (aggregate[t] > quiet) continue;
        for (std::size_t j = 1; j <= ndt.num_sbs(); ++j) {
            dt_value += dt.demand(j, t) * dt.pricing().spectrum(t);
            ndt_value += ndt.demand(j, t) * ndt.pricing().spectrum(t);
        }
    }
    CHECK(dt_value > ndt_value);

    // The shift widens the spread of per-SBS utilities across the day.
    auto spread = [](const Scenario& s) {
        double total = 0.0;
        for (std::size_t t = 0; t < s.num_slots(); ++t) {
            const auto u = utility_vector(s, t);
            total += *std::max_element(u.begin(), u.end()) - *std::min_element(u.begin(), u.end());
        }
        return total;
    };
    CHECK(spread(dt) > spread(ndt));
}

TEST_CASE("reference configs build valid scenarios") {
    const Scenario s = build_scenario(reference_config());
    CHECK(s.num_sbs() == 12);
    CHECK(s.num_slots() == 144);
    for (std::size_t t = 0; t < s.num_slots(); ++t) CHECK(s.load(0, t) <= s.mbs_capacity_limit());
    const Scenario b = build_scenario(bench_config(8, 7));
    CHECK(b.num_sbs() == 8);
    CHECK(b.station(1).kind == BsKind::Rrh);
    CHECK(b.station(4).kind == BsKind::Femto);
    CHECK(b.station(5).kind == BsKind::Rrh);
}
