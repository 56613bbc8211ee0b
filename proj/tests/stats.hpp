#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace stats {

// Pearson goodness-of-fit; true when the test does not reject at `alpha`.
inline bool chi_square_fits(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs,
                            double alpha = 0.01) {
    std::uint64_t n = 0;
    for (auto o : observed) n += o;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = probs[i] * static_cast<double>(n);
        const double d = static_cast<double>(observed[i]) - e;
        chi2 += d * d / e;
    }
    const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return chi2 <= boost::math::quantile(boost::math::complement(dist, alpha));
}

// |successes - n p| within `sigmas` binomial standard deviations.
inline bool binomial_within(std::uint64_t successes, std::uint64_t trials, double p, double sigmas = 3.0) {
    const double n = static_cast<double>(trials);
    const double sd = std::sqrt(n * p * (1.0 - p));
    return std::fabs(static_cast<double>(successes) - n * p) <= sigmas * sd;
}

}  // namespace stats
