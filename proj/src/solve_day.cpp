#include <atomic>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <thread>

#include "hetnet/error.hpp"
#include "hetnet/feasibility.hpp"
#include "hetnet/solvers.hpp"

namespace hetnet {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::SA: return "sa";
        case Method::ES: return "es";
        case Method::AType: return "atype";
        case Method::DType: return "dtype";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "sa") return Method::SA;
    if (name == "es") return Method::ES;
    if (name == "atype" || name == "a-type") return Method::AType;
    if (name == "dtype" || name == "d-type") return Method::DType;
    throw ConfigError("unknown method '" + std::string(name) + "'");
}

namespace {

SlotSolution solve_slot(const Scenario& scenario, std::size_t slot, Method method, const SolveOptions& options) {
    switch (method) {
        case Method::SA: return sa_solve_slot(scenario, slot, options.sa);
        case Method::ES: return es_solve_slot(scenario, slot, options.es_cap);
        case Method::AType: return sorting_solve_slot(scenario, slot, SortOrder::Ascending);
        case Method::DType: return sorting_solve_slot(scenario, slot, SortOrder::Descending);
    }
    throw std::logic_error("unhandled method");
}

}  // namespace

SolverResult solve_day(const Scenario& scenario, Method method, const SolveOptions& options) {
    if (method == Method::SA) options.sa.validate();
    const std::size_t slots = scenario.num_slots();
    std::vector<SlotSolution> solved(slots);

    const auto start = std::chrono::steady_clock::now();
    const unsigned workers = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(slots)));
    if (workers == 1) {
        for (std::size_t t = 0; t < slots; ++t) solved[t] = solve_slot(scenario, t, method, options);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t t = next++; t < slots; t = next++) {
                        solved[t] = solve_slot(scenario, t, method, options);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = slots;
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    const auto stop = std::chrono::steady_clock::now();

    SolverResult result;
    result.runtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    result.per_slot_switch.reserve(slots);
    result.per_slot_revenue.reserve(slots);
    for (std::size_t t = 0; t < slots; ++t) {
        if (!is_feasible(scenario, t, solved[t].switch_vector).feasible) {
            throw std::logic_error(std::string(to_string(method)) + " returned an infeasible switch at slot " +
                                   std::to_string(t));
        }
        result.per_slot_switch.push_back(solved[t].switch_vector);
        result.per_slot_revenue.push_back(solved[t].revenue);
        result.daily += solved[t].revenue;
        result.evaluations += solved[t].evaluations;
    }
    return result;
}

}  // namespace hetnet
