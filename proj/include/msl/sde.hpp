#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "msl/coefficients.hpp"
#include "msl/grid_path.hpp"
#include "msl/young.hpp"

namespace msl {

// Explicit left-point Euler step for dX = a dt + b dW + c dB; the Wiener term
// uses the Ito convention and the fBm term the pathwise one, which coincide in
// the left-tagged scheme.
GridPath solve_mixed(const CoefficientSet& coeffs, const Eigen::VectorXd& x0, const GridPath& w,
                     const GridPath& b);

// Euler step for dX = (a + c Zdot) dt + b dW, the absolutely continuous
// approximation of the fBm driver.
GridPath solve_smoothed(const CoefficientSet& coeffs, const Eigen::VectorXd& x0, const GridPath& w,
                        const GridPath& zdot);

// Pathwise sup-norm estimate for the solved path: grid norms on both sides,
// theta in (1-mu, 1/2), mu > 1/2.
BoundReport pathwise_bound_check(const GridPath& y, const CoefficientSet& coeffs,
                                 const GridPath& gamma, const GridPath& w, double theta, double mu);

struct ConvergenceRow {
    double n = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<std::vector<double>> errors;  // per n, per seed
};

// Shares one (W, B) pair per seed between the mixed solution and each smoothed
// solution; reports quartiles of the sup-node error per smoothing rate.
ConvergenceTable convergence_study(const CoefficientSet& coeffs, const Eigen::VectorXd& x0,
                                   HurstParam H, double T, int N, const std::vector<double>& n_list,
                                   int num_seeds, std::uint64_t seed);

}  // namespace msl
