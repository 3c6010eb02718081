#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "msl/coefficients.hpp"
#include "msl/grid_path.hpp"
#include "msl/moments.hpp"
#include "msl/step_function.hpp"
#include "msl/young.hpp"

namespace msl {

// Pathwise derivative values D_s X_t on the solution grid for one driver
// component, stored for a list of evaluation times t. Zero for s > t.
struct DerivativeField {
    enum class Driver { fbm, wiener };
    Driver driver = Driver::fbm;
    int component = 0;
    double t0 = 0.0;
    double dt = 0.0;
    int dim = 0;
    int s_nodes = 0;
    std::vector<int> t_indices;
    std::vector<double> data;  // t_indices.size() x s_nodes x dim

    Eigen::Map<const Eigen::VectorXd> value(int ti, int s_node) const {
        return Eigen::Map<const Eigen::VectorXd>(
            data.data() + (static_cast<std::size_t>(ti) * s_nodes + s_node) * dim, dim);
    }
    double* value_ptr(int ti, int s_node) {
        return data.data() + (static_cast<std::size_t>(ti) * s_nodes + s_node) * dim;
    }
    bool adapted() const;      // identically zero for s > t
    bool all_finite() const;
};

// Linear equation with frozen solution path: dR = <grad a, R> dt + <grad b, R> dW
// + <grad c, R> dgamma, started from `init` at grid time z. The c-gradient term
// is driven by raw increments of gamma.
GridPath solve_r(const CoefficientSet& coeffs, const GridPath& x, const GridPath& w,
                 const GridPath& gamma, double z, const Eigen::VectorXd& init);

// Same equation linearized around the smoothed system: the c-gradient term is
// driven by zdot dt, matching the Euler step of solve_smoothed.
GridPath solve_r_smoothed(const CoefficientSet& coeffs, const GridPath& x, const GridPath& w,
                          const GridPath& zdot, double z, const Eigen::VectorXd& init);

// Derivative of the smoothed solution w.r.t. fBm component q at time s: the
// inhomogeneous linear equation with source n * integral of c_{.,q}(X) over the
// trailing window [s, (s+1/n) ^ t], accumulated by trapezoids.
GridPath solve_variational_fbm(const CoefficientSet& coeffs, const GridPath& xn, const GridPath& w,
                               const GridPath& zdot, double n, double s, int q);

// The same derivative reconstructed from window-started homogeneous solutions:
// D_t = n * integral over z in [s, (s+1/n) ^ t] of R_t(z), R(z) started from
// c_{.,q}(X_z). Requires the window to be a whole number of grid cells.
GridPath duhamel_reconstruct(const CoefficientSet& coeffs, const GridPath& xn, const GridPath& w,
                             const GridPath& zdot, double n, double s, int q);

// Derivative of the mixed solution w.r.t. Wiener component j at time s:
// solve_r with init b_{.,j}(X_s).
GridPath solve_variational_wiener(const CoefficientSet& coeffs, const GridPath& x,
                                  const GridPath& w, const GridPath& b, double s, int j);

// Whole-field builders for the smoothed system: one backward pass of the Euler
// transition factors per evaluation time gives D_s X_t for every s at once.
DerivativeField fbm_derivative_field(const CoefficientSet& coeffs, const GridPath& xn,
                                     const GridPath& w, const GridPath& zdot, double n, int q,
                                     std::span<const int> t_indices);
DerivativeField wiener_derivative_field(const CoefficientSet& coeffs, const GridPath& xn,
                                        const GridPath& w, const GridPath& zdot, int j,
                                        std::span<const int> t_indices);

struct FdResult {
    GridPath derivative;   // central difference at the detected plateau
    double epsilon = 0.0;  // plateau step
    double drift = 0.0;    // relative sup distance between the plateau pair
    bool stable = false;   // plateau drift below 5%
    std::vector<std::pair<double, double>> ladder;  // (epsilon, drift to next smaller epsilon)
};

// Central difference of solve_smoothed under the driver shifted along the
// covariance embedding of h (per fBm component), with plateau detection across
// the epsilon ladder.
FdResult directional_derivative_fd(const CoefficientSet& coeffs, const Eigen::VectorXd& x0,
                                   const GridPath& w, const GridPath& b, HurstParam H,
                                   const std::vector<StepFunction>& h,
                                   std::span<const double> eps_list, double n);

// <D X_t, h> over the fBm slots: trapezoid in s of the field against the
// kernel smoothing of h. One value per solution component.
Eigen::VectorXd gradient_pairing(const std::vector<DerivativeField>& fbm_fields, int ti,
                                 const std::vector<StepFunction>& h, HurstParam H);

struct PairingCheck {
    Eigen::VectorXd pairing;
    Eigen::VectorXd fd;
    double rel_error = 0.0;
};

PairingCheck gradient_pairing_check(const std::vector<DerivativeField>& fbm_fields, int ti,
                                    const std::vector<StepFunction>& h, HurstParam H,
                                    const Eigen::VectorXd& fd_value);

// Monte Carlo estimate of E[ |X^n_t|^p + ||D X^n_t||^p ] for each smoothing
// rate, with the derivative norm taken in the product space of the grid-
// discretized fields.
std::vector<MomentReport> sobolev_norm_estimate(const CoefficientSet& coeffs, HurstParam H,
                                                double T, int N,
                                                std::span<const double> n_list, double p, double t,
                                                const Eigen::VectorXd& x0, int num_samples,
                                                int batches, std::uint64_t seed);

}  // namespace msl
