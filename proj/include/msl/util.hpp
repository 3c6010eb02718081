#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace msl {

// Pairwise (cascade) summation in index order: the reduction is deterministic
// regardless of how the samples were produced.
inline double pairwise_sum(const double* p, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(p, half) + pairwise_sum(p + half, n - half);
}

inline double pairwise_sum(std::span<const double> xs) {
    return pairwise_sum(xs.data(), xs.size());
}

inline double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    return pairwise_sum(xs) / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("sample_variance: need at least 2 samples");
    const double m = mean(xs);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (xs[i] - m) * (xs[i] - m);
    return pairwise_sum(sq) / static_cast<double>(n - 1);
}

// Standard error of the sample mean.
inline double standard_error(std::span<const double> xs) {
    return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

// Linear-interpolation quantile of an unsorted sample, q in [0,1].
inline double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= xs.size()) return xs.back();
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

// Runs fn(i) for i in [0, n). Results must be written to disjoint, preallocated
// slots so the outcome does not depend on scheduling. Thread count comes from
// MSL_THREADS or hardware_concurrency.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace msl
