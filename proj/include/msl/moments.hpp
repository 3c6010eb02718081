#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "msl/coefficients.hpp"
#include "msl/grid_path.hpp"

namespace msl {

// Upper limit 4H/(2H+1) of the admissible exponent for exponential moments of
// the solution sup-norm.
double alpha_max(HurstParam H);

// Monte Carlo estimate of one moment/tail functional: batch means in index
// order, pooled mean, and the relative batch spread (max-min)/pooled.
struct MomentReport {
    std::string name;
    std::map<std::string, double> params;
    std::vector<double> batch_estimates;
    double pooled = 0.0;
    double spread = 0.0;
    int sample_count = 0;
    std::uint64_t seed = 0;
    int overflow_count = 0;
};

// Batch means in index order (pairwise summation), pooled mean and relative
// spread for untransformed values. Sample count must divide into the batches.
MomentReport batch_report(std::span<const double> values, int batches);

// Batch statistics of exp(z * s^alpha) over precomputed sup-norm samples.
// Overflowing evaluations are counted, never clamped; they poison their batch
// with +inf so the report cannot fake finiteness.
MomentReport estimate_exp_moment(std::span<const double> samples, double z, double alpha,
                                 int batches);

struct TailRow {
    double x = 0.0;
    double bound = 0.0;      // 4 exp(-x^2 / (2 A^2 t^{1-2kappa}))
    double empirical = 0.0;  // exceedance frequency above the empirical mean
    double se = 0.0;         // binomial standard error of the frequency
    bool satisfied = false;
    bool no_data = false;  // x reaches beyond the sample support
};

struct TailReport {
    double m_hat = 0.0;  // empirical mean of the Holder norms
    std::vector<TailRow> rows;
    bool satisfied = true;
    int sample_count = 0;
    std::uint64_t seed = 0;
};

// Simulates Z = A * V for a Wiener path V, takes the grid kappa-Holder norm,
// and checks the sub-Gaussian exceedance bound around the empirical mean.
TailReport tail_gaussianity_check(double A, double kappa, double t, int N, int num_samples,
                                  std::span<const double> x_grid, std::uint64_t seed);

struct FerniqueReport {
    MomentReport moment;
    double slope = 0.0;     // OLS slope of log survival vs x^2
    double slope_se = 0.0;
    double tstat = 0.0;
    bool tail_ok = false;   // slope negative at 95% one-sided confidence
};

// Batch statistics of exp(y * s^a) for Gaussian-family norm samples plus a
// quadratic log-tail decay fit.
FerniqueReport fernique_check(std::span<const double> norm_samples, double a, double y,
                              int batches);

// J_{Y,theta}(t): sum over (i,j) of the grid theta-Holder seminorms of the
// left-point integral paths of b_{i,j}(Y) against W^j.
double J_statistic(const GridPath& y, const CoefficientSet& coeffs, const GridPath& w,
                   double theta);

}  // namespace msl
