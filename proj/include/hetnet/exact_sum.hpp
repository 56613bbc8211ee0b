#pragma once

#include <array>
#include <utility>
#include <cmath>
#include <span>

namespace hetnet {

// Correctly rounded sum of finite doubles (Shewchuk partials with half-even
// final rounding). The result does not depend on the order of the terms,
// which is what lets the traffic-conservation check compare exactly.
class ExactSum {
public:
    void add(double x) {
        std::size_t i = 0;
        for (std::size_t k = 0; k < size_; ++k) {
            double y = partials_[k];
            if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials_[i++] = lo;
            x = hi;
        }
        partials_[i] = x;
        size_ = i + 1;
    }

    double value() const {
        std::size_t n = size_;
        if (n == 0) return 0.0;
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            const double yr = x - hi;
            if (y == yr) hi = x;
        }
        return hi;
    }

private:
    // Non-overlapping partials of a double sum never exceed ~40 entries.
    std::array<double, 64> partials_{};
    std::size_t size_ = 0;
};

inline double exact_sum(std::span<const double> values) {
    ExactSum s;
    for (double v : values) s.add(v);
    return s.value();
}

}  // namespace hetnet
