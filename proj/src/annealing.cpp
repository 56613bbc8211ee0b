#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "hetnet/econ.hpp"
#include "hetnet/error.hpp"
#include "hetnet/feasibility.hpp"
#include "hetnet/solvers.hpp"

namespace hetnet {

namespace {

std::size_t draw_sbs(std::size_t num_sbs, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(1, num_sbs)(rng);
}

// Uniform over ordered pairs of distinct SBSs, hence uniform over unordered ones.
std::pair<std::size_t, std::size_t> draw_pair(std::size_t num_sbs, Rng& rng) {
    const std::size_t others = num_sbs - 1;
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, num_sbs * others - 1)(rng);
    const std::size_t a = k / others + 1;
    std::size_t b = k % others + 1;
    if (b >= a) ++b;
    return {a, b};
}

enum class Neighborhood { OneReserve, TwoReserve, Swap };

constexpr std::array<Neighborhood, 3> kSequence{Neighborhood::OneReserve, Neighborhood::TwoReserve,
                                                Neighborhood::Swap};

// SBS bits a move flips; 0 marks an unused slot. A swap of equal bits flips nothing.
struct Move {
    std::size_t a = 0;
    std::size_t b = 0;
};

// Per-slot search state. Feasibility and revenue of a neighbor are scored from
// per-SBS macro-load weights and switch-off gains; the final answer is
// re-scored with the full revenue model.
class SlotSearch {
public:
    SlotSearch(const Scenario& scenario, std::size_t slot, const SaParams& params, Rng& rng)
        : scenario_(scenario), slot_(slot), params_(params), rng_(rng), n_(scenario.num_sbs()) {
        weights_.resize(n_ + 1, 0.0);
        gains_.resize(n_ + 1, 0.0);
        for (std::size_t j = 1; j <= n_; ++j) {
            weights_[j] = mbs_load_contribution(scenario, j, slot);
            gains_[j] = switch_off_gain(scenario, slot, j).total;
        }
    }

    SlotSolution run(SaTrace* trace) {
        set_current(initial_solution());
        SwitchVector best = current_;
        double best_revenue = current_revenue_;

        const std::size_t levels = params_.temperature_levels();
        const std::size_t k = static_cast<std::size_t>(params_.k_factor) * n_;
        std::uint64_t evaluations = 0;

        for (std::size_t level = 0; level < levels; ++level) {
            const double temperature = params_.t_init - static_cast<double>(level) * params_.alpha;
            for (std::size_t iter = 0; iter < k; ++iter) {
                for (Neighborhood nb : kSequence) {
                    ++evaluations;
                    const std::optional<Move> move = generate(nb);
                    if (!move) {
                        // Empty feasible neighborhood: the step re-scores the current solution.
                        if (trace) ++trace->null_moves;
                        continue;
                    }
                    const double candidate_revenue = current_revenue_ + delta(gains_, *move);
                    if (candidate_revenue > best_revenue) {
                        best = applied(current_, *move);
                        best_revenue = candidate_revenue;
                    }
                    if (metropolis_accept(current_revenue_, candidate_revenue, temperature, params_, rng_)) {
                        accept(*move, candidate_revenue);
                        if (trace) ++trace->accepted;
                    }
                }
            }
            if (trace) trace->best_per_level.push_back(best_revenue);
            set_current(repair(shake(best, params_, rng_)));
            if (current_revenue_ > best_revenue) {
                best = current_;
                best_revenue = current_revenue_;
            }
        }

        return {best, total_revenue_slot(scenario_, slot_, best), evaluations};
    }

private:
    bool feasible(const SwitchVector& sw) const { return is_feasible(scenario_, slot_, sw).feasible; }

    double revenue_of(const SwitchVector& sw) const {
        double r = 0.0;
        for (std::size_t j = 1; j <= n_; ++j) {
            if (sw.is_off(j)) r += gains_[j];
        }
        return r;
    }

    void set_current(SwitchVector sw) {
        current_ = std::move(sw);
        current_load_ = offloaded_mbs_load(scenario_, slot_, current_);
        current_revenue_ = revenue_of(current_);
        invalidate_neighborhoods();
    }

    // Incremental update; drift stays far below the feasibility margin and
    // set_current() recomputes both sums after every shake.
    void accept(const Move& m, double candidate_revenue) {
        current_load_ += delta(weights_, m);
        current_revenue_ = candidate_revenue;
        if (m.a != 0) current_.flip_sbs(m.a);
        if (m.b != 0) current_.flip_sbs(m.b);
        if (m.a != 0 || m.b != 0) invalidate_neighborhoods();
    }

    double delta(const std::vector<double>& per_sbs, const Move& m) const {
        double d = 0.0;
        for (std::size_t x : {m.a, m.b}) {
            if (x != 0) d += current_.is_on(x) ? per_sbs[x] : -per_sbs[x];
        }
        return d;
    }

    static SwitchVector applied(SwitchVector sw, const Move& m) {
        if (m.a != 0) sw.flip_sbs(m.a);
        if (m.b != 0) sw.flip_sbs(m.b);
        return sw;
    }

    bool move_feasible(const Move& m) const {
        constexpr double kMargin = 1e-9;
        const double estimate = current_load_ + delta(weights_, m);
        const double cap = scenario_.mbs_capacity_limit();
        if (estimate <= cap - kMargin) return true;
        if (estimate > cap + kMargin) return false;
        return feasible(applied(current_, m));
    }

    std::optional<Move> propose(Neighborhood nb) {
        switch (nb) {
            case Neighborhood::OneReserve:
                return Move{draw_sbs(n_, rng_), 0};
            case Neighborhood::TwoReserve: {
                auto [a, b] = draw_pair(n_, rng_);
                return Move{a, b};
            }
            case Neighborhood::Swap: {
                auto [a, b] = draw_pair(n_, rng_);
                if (current_.is_on(a) == current_.is_on(b)) return Move{};
                return Move{a, b};
            }
        }
        return std::nullopt;
    }

    // Appends every feasible neighbor of the current solution to `out`.
    void enumerate_feasible(Neighborhood nb, std::vector<Move>& out) const {
        if (nb == Neighborhood::OneReserve) {
            for (std::size_t a = 1; a <= n_; ++a) {
                if (move_feasible({a, 0})) out.push_back({a, 0});
            }
            return;
        }
        for (std::size_t a = 1; a <= n_; ++a) {
            for (std::size_t b = a + 1; b <= n_; ++b) {
                Move m{a, b};
                if (nb == Neighborhood::Swap && current_.is_on(a) == current_.is_on(b)) m = {};
                if (move_feasible(m)) out.push_back(m);
            }
        }
    }

    // Rejection sampling first; when that keeps failing, draw uniformly from
    // the exactly enumerated feasible neighbors, which is the distribution
    // rejection sampling would converge to.
    std::optional<Move> generate(Neighborhood nb) {
        const std::size_t needed = nb == Neighborhood::OneReserve ? 1 : 2;
        if (n_ < needed) return std::nullopt;
        Enumerated& cached = enumerated_[static_cast<std::size_t>(nb)];
        if (!cached.valid) {
            for (int attempt = 0; attempt < params_.rejection_attempts; ++attempt) {
                auto m = propose(nb);
                if (m && move_feasible(*m)) return m;
            }
            // The list stays valid until the current solution changes.
            cached.moves.clear();
            enumerate_feasible(nb, cached.moves);
            cached.valid = true;
        }
        if (cached.moves.empty()) return std::nullopt;
        return cached.moves[std::uniform_int_distribution<std::size_t>(0, cached.moves.size() - 1)(rng_)];
    }

    void invalidate_neighborhoods() {
        for (auto& e : enumerated_) e.valid = false;
    }

    SwitchVector random_vector() {
        SwitchVector sw = SwitchVector::all_on(n_);
        randomize(sw);
        return sw;
    }

    void randomize(SwitchVector& sw) {
        std::bernoulli_distribution coin(0.5);
        for (std::size_t j = 1; j <= n_; ++j) sw.set_sbs(j, coin(rng_));
    }

    // Wakes sleeping SBSs in random order until the vector is feasible.
    SwitchVector repair(SwitchVector sw) {
        if (feasible(sw)) return sw;
        std::vector<std::size_t> sleeping;
        for (std::size_t j = 1; j <= n_; ++j) {
            if (sw.is_off(j)) sleeping.push_back(j);
        }
        std::shuffle(sleeping.begin(), sleeping.end(), rng_);
        while (!sleeping.empty() && !feasible(sw)) {
            sw.set_sbs(sleeping.back(), true);
            sleeping.pop_back();
        }
        return sw;
    }

    // Same margin rule as move_feasible(), applied to a whole vector.
    bool vector_feasible(const SwitchVector& sw) const {
        constexpr double kMargin = 1e-9;
        double estimate = scenario_.load(0, slot_);
        for (std::size_t j = 1; j <= n_; ++j) {
            if (sw.is_off(j)) estimate += weights_[j];
        }
        const double cap = scenario_.mbs_capacity_limit();
        if (estimate <= cap - kMargin) return true;
        if (estimate > cap + kMargin) return false;
        return feasible(sw);
    }

    SwitchVector initial_solution() {
        SwitchVector sw = random_vector();
        for (int draw = 1; draw < params_.initial_draws && !vector_feasible(sw); ++draw) randomize(sw);
        return repair(std::move(sw));
    }

    const Scenario& scenario_;
    std::size_t slot_;
    const SaParams& params_;
    Rng& rng_;
    std::size_t n_;
    std::vector<double> weights_;
    std::vector<double> gains_;

    struct Enumerated {
        bool valid = false;
        std::vector<Move> moves;
    };
    std::array<Enumerated, 3> enumerated_;

    SwitchVector current_;
    double current_load_ = 0.0;
    double current_revenue_ = 0.0;
};

}  // namespace

Rng slot_rng(std::uint64_t seed, std::size_t slot) {
    return stream_rng(seed, static_cast<std::uint64_t>(slot));
}

void SaParams::validate() const {
    if (!(t_final > 0.0 && t_init > t_final)) throw ConfigError("SA temperatures need t_init > t_final > 0");
    if (!(alpha > 0.0)) throw ConfigError("SA alpha must be positive");
    if (k_factor < 1) throw ConfigError("SA k_factor must be at least 1");
    if (!(boltzmann_k > 0.0)) throw ConfigError("SA Boltzmann constant must be positive");
    if (!(shake_flip_prob >= 0.0 && shake_flip_prob <= 1.0)) {
        throw ConfigError("SA shake probability must lie in [0, 1]");
    }
    if (rejection_attempts < 0 || initial_draws < 1) throw ConfigError("SA retry limits must be positive");
}

std::size_t SaParams::temperature_levels() const {
    const double levels = (t_init - t_final) / alpha;
    return static_cast<std::size_t>(std::ceil(levels - 1e-9));
}

SwitchVector neighbor_one_reserve(const SwitchVector& sw, Rng& rng) {
    if (sw.num_sbs() < 1) throw DegenerateInstance("1-reserve needs at least one SBS");
    SwitchVector out = sw;
    out.flip_sbs(draw_sbs(sw.num_sbs(), rng));
    return out;
}

SwitchVector neighbor_two_reserve(const SwitchVector& sw, Rng& rng) {
    if (sw.num_sbs() < 2) throw DegenerateInstance("2-reserve needs at least two SBSs");
    auto [a, b] = draw_pair(sw.num_sbs(), rng);
    SwitchVector out = sw;
    out.flip_sbs(a);
    out.flip_sbs(b);
    return out;
}

SwitchVector neighbor_swap(const SwitchVector& sw, Rng& rng) {
    if (sw.num_sbs() < 2) throw DegenerateInstance("swap needs at least two SBSs");
    auto [a, b] = draw_pair(sw.num_sbs(), rng);
    SwitchVector out = sw;
    out.swap_sbs(a, b);
    return out;
}

SwitchVector shake(const SwitchVector& sw, const SaParams& params, Rng& rng) {
    std::bernoulli_distribution flip(params.shake_flip_prob);
    SwitchVector out = sw;
    for (std::size_t j = 1; j <= sw.num_sbs(); ++j) {
        if (flip(rng)) out.flip_sbs(j);
    }
    return out;
}

bool metropolis_accept(double current_revenue, double candidate_revenue, double temperature,
                       const SaParams& params, Rng& rng) {
    if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
    if (candidate_revenue >= current_revenue) return true;
    const double gap = current_revenue - candidate_revenue;
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return u < std::exp(-gap / (params.boltzmann_k * temperature));
}

SlotSolution sa_solve_slot(const Scenario& scenario, std::size_t slot, const SaParams& params, SaTrace* trace) {
    params.validate();
    if (slot >= scenario.num_slots()) throw DomainError("slot out of range");
    if (scenario.num_sbs() == 0) {
        const SwitchVector on = SwitchVector::all_on(0);
        return {on, total_revenue_slot(scenario, slot, on), 0};
    }
    Rng rng = slot_rng(params.rng_seed, slot);
    SlotSearch search(scenario, slot, params, rng);
    return search.run(trace);
}

}  // namespace hetnet
