#include "msl/sde.hpp"

#include <cmath>
#include <stdexcept>

#include "msl/moments.hpp"
#include "msl/paths.hpp"
#include "msl/rng.hpp"
#include "msl/util.hpp"

namespace msl {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_drivers(const CoefficientSet& cs, const GridPath& w, const GridPath* b,
                   const char* what) {
    if (w.dim != cs.m)
        throw std::invalid_argument(std::string(what) + ": Wiener path has " +
                                    std::to_string(w.dim) + " components, coefficients expect " +
                                    std::to_string(cs.m));
    if (b) {
        if (b->dim != cs.l)
            throw std::invalid_argument(std::string(what) + ": driver path has " +
                                        std::to_string(b->dim) + " components, coefficients expect " +
                                        std::to_string(cs.l));
        w.require_same_grid(*b, what);
    }
}

void check_finite(const VectorXd& x, int step, const char* what) {
    if (!x.allFinite())
        throw std::runtime_error(std::string(what) + ": state became non-finite at step " +
                                 std::to_string(step));
}

}  // namespace

GridPath solve_mixed(const CoefficientSet& cs, const VectorXd& x0, const GridPath& w,
                     const GridPath& b) {
    check_drivers(cs, w, &b, "solve_mixed");
    if (x0.size() != cs.d) throw std::invalid_argument("solve_mixed: x0 dimension mismatch");
    GridPath x(w.t0, w.dt, w.nodes(), cs.d);
    VectorXd state = x0;
    x.set_node(0, state);
    VectorXd dw(cs.m), db(cs.l);
    for (int k = 0; k < w.steps(); ++k) {
        for (int j = 0; j < cs.m; ++j) dw[j] = w.at(k + 1, j) - w.at(k, j);
        for (int q = 0; q < cs.l; ++q) db[q] = b.at(k + 1, q) - b.at(k, q);
        state = state + cs.a(state) * w.dt + cs.b(state) * dw + cs.c(state) * db;
        check_finite(state, k + 1, "solve_mixed");
        x.set_node(k + 1, state);
    }
    return x;
}

GridPath solve_smoothed(const CoefficientSet& cs, const VectorXd& x0, const GridPath& w,
                        const GridPath& zdot) {
    check_drivers(cs, w, &zdot, "solve_smoothed");
    if (x0.size() != cs.d) throw std::invalid_argument("solve_smoothed: x0 dimension mismatch");
    GridPath x(w.t0, w.dt, w.nodes(), cs.d);
    VectorXd state = x0;
    x.set_node(0, state);
    VectorXd dw(cs.m), rate(cs.l);
    for (int k = 0; k < w.steps(); ++k) {
        for (int j = 0; j < cs.m; ++j) dw[j] = w.at(k + 1, j) - w.at(k, j);
        for (int q = 0; q < cs.l; ++q) rate[q] = zdot.at(k, q);
        state = state + (cs.a(state) + cs.c(state) * rate) * w.dt + cs.b(state) * dw;
        check_finite(state, k + 1, "solve_smoothed");
        x.set_node(k + 1, state);
    }
    return x;
}

BoundReport pathwise_bound_check(const GridPath& y, const CoefficientSet& cs,
                                 const GridPath& gamma, const GridPath& w, double theta,
                                 double mu) {
    if (!(mu > 0.5 && mu < 1.0))
        throw std::domain_error("pathwise_bound_check: mu must lie in (1/2, 1)");
    if (!(theta > 1.0 - mu && theta < 0.5))
        throw std::domain_error("pathwise_bound_check: theta must lie in (1-mu, 1/2)");
    const double t = y.end_time();
    const double a = y.t0;
    const double k_val = young_constant(theta, mu).value;
    const double j_val = J_statistic(y, cs, w, theta);
    const double gamma_mu = holder_seminorm(gamma, mu, a, t);
    const double y0 = y.node(0).norm();

    const double prefactor =
        cs.bounds.a_inf + j_val + k_val * gamma_mu * cs.bounds.c_inf;
    const double horizon = t - a;
    const double growth =
        std::pow(horizon, theta) +
        horizon * std::pow(2.0 * k_val * gamma_mu * cs.bounds.dc_inf + 1.0, (1.0 - theta) / mu);

    BoundReport report;
    report.lhs = sup_norm(y, a, t);
    report.rhs = y0 + 2.0 * prefactor * growth;
    report.satisfied = report.lhs <= report.rhs;
    report.informational = false;
    return report;
}

ConvergenceTable convergence_study(const CoefficientSet& cs, const VectorXd& x0, HurstParam H,
                                   double T, int N, const std::vector<double>& n_list,
                                   int num_seeds, std::uint64_t seed) {
    if (n_list.empty()) throw std::invalid_argument("convergence_study: n_list must be nonempty");
    if (num_seeds < 1) throw std::invalid_argument("convergence_study: need at least one seed");
    const double dt = T / N;
    for (double n : n_list)
        if (1.0 / n < dt - 1e-12 * dt)
            throw std::domain_error("convergence_study: smoothing rate n = " + std::to_string(n) +
                                    " violates 1/n >= dt");

    ConvergenceTable table;
    table.errors.assign(n_list.size(), std::vector<double>(num_seeds, 0.0));
    parallel_for(static_cast<std::size_t>(num_seeds), [&](std::size_t s) {
        const std::uint64_t path_seed = substream_seed(seed, "converge", s);
        const GridPath w = sample_wiener(N, T, cs.m, path_seed);
        const GridPath b = sample_fbm(N, T, H, cs.l, path_seed);
        const GridPath x_ref = solve_mixed(cs, x0, w, b);
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            const SmoothedDriver drv = smoothed_driver(b, n_list[i]);
            const GridPath xn = solve_smoothed(cs, x0, w, drv.zdot);
            double err = 0.0;
            for (int k = 0; k <= x_ref.steps(); ++k) {
                const double e = (xn.node(k) - x_ref.node(k)).norm();
                if (e > err) err = e;
            }
            table.errors[i][s] = err;
        }
    });
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        ConvergenceRow row;
        row.n = n_list[i];
        row.median = median(table.errors[i]);
        row.q1 = quantile(table.errors[i], 0.25);
        row.q3 = quantile(table.errors[i], 0.75);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace msl
