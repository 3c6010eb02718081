#include "msl/malliavin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "msl/paths.hpp"
#include "msl/rng.hpp"
#include "msl/sde.hpp"
#include "msl/util.hpp"

namespace msl {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Per-cell Euler transition factors M_k = I + grad_a dt + sum_j grad_b_j dW^j
// + sum_q grad_c_q dG^q, where dG is either an increment of gamma or zdot*dt.
struct StepFactors {
    std::vector<MatrixXd> m;
};

enum class DriveMode { increments, rate };

StepFactors build_step_factors(const CoefficientSet& cs, const GridPath& x, const GridPath& w,
                               const GridPath& g, DriveMode mode) {
    x.require_same_grid(w, "variational equation");
    x.require_same_grid(g, "variational equation");
    if (x.dim != cs.d || w.dim != cs.m || g.dim != cs.l)
        throw std::invalid_argument("variational equation: driver dimensions mismatch");
    StepFactors f;
    const int steps = x.steps();
    f.m.reserve(steps);
    const MatrixXd eye = MatrixXd::Identity(cs.d, cs.d);
    for (int k = 0; k < steps; ++k) {
        const VectorXd xk = x.node(k);
        MatrixXd mk = eye + cs.jac_a(xk) * x.dt;
        const auto jb = cs.jac_b(xk);
        for (int j = 0; j < cs.m; ++j) mk += jb[j] * (w.at(k + 1, j) - w.at(k, j));
        const auto jc = cs.jac_c(xk);
        for (int q = 0; q < cs.l; ++q) {
            const double dg = mode == DriveMode::increments ? g.at(k + 1, q) - g.at(k, q)
                                                            : g.at(k, q) * x.dt;
            mk += jc[q] * dg;
        }
        f.m.push_back(std::move(mk));
    }
    return f;
}

GridPath propagate(const StepFactors& f, const GridPath& x, int kz, const VectorXd& init) {
    const int tail_nodes = x.nodes() - kz;
    GridPath r(x.time(kz), x.dt, tail_nodes, static_cast<int>(init.size()));
    VectorXd state = init;
    r.set_node(0, state);
    for (int k = kz; k < x.steps(); ++k) {
        state = f.m[k] * state;
        if (!state.allFinite())
            throw std::runtime_error("variational solve: state became non-finite at step " +
                                     std::to_string(k + 1));
        r.set_node(k - kz + 1, state);
    }
    return r;
}

int window_cells(double n, double dt) {
    const double cells = 1.0 / (n * dt);
    const int wc = static_cast<int>(std::lround(cells));
    if (wc < 1 || std::abs(cells - wc) > 1e-9 * std::max(1.0, cells))
        throw std::domain_error(
            "smoothing window 1/n must be a whole number of grid cells (1/(n*dt) = " +
            std::to_string(cells) + "); refine the grid or adjust n");
    return wc;
}

}  // namespace

bool DerivativeField::adapted() const {
    for (std::size_t ti = 0; ti < t_indices.size(); ++ti)
        for (int s = t_indices[ti] + 1; s < s_nodes; ++s)
            for (int c = 0; c < dim; ++c)
                if (value(static_cast<int>(ti), s)[c] != 0.0) return false;
    return true;
}

bool DerivativeField::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

GridPath solve_r(const CoefficientSet& cs, const GridPath& x, const GridPath& w,
                 const GridPath& gamma, double z, const VectorXd& init) {
    if (init.size() != cs.d) throw std::invalid_argument("solve_r: init dimension mismatch");
    const int kz = x.index_of(z, "solve_r start time");
    const StepFactors f = build_step_factors(cs, x, w, gamma, DriveMode::increments);
    return propagate(f, x, kz, init);
}

GridPath solve_r_smoothed(const CoefficientSet& cs, const GridPath& x, const GridPath& w,
                          const GridPath& zdot, double z, const VectorXd& init) {
    if (init.size() != cs.d) throw std::invalid_argument("solve_r: init dimension mismatch");
    const int kz = x.index_of(z, "solve_r start time");
    const StepFactors f = build_step_factors(cs, x, w, zdot, DriveMode::rate);
    return propagate(f, x, kz, init);
}

namespace {

// Source increment over cell k for the window [s_time, s_time + 1/n]:
// n * trapezoid of c_{.,q}(X) over the cell intersected with the window.
VectorXd source_increment(const CoefficientSet& cs, const GridPath& x, int k, double s_time,
                          double window, double n, int q) {
    const double cell_lo = x.time(k);
    const double cell_hi = x.time(k + 1);
    const double lo = std::max(cell_lo, s_time);
    const double hi = std::min(cell_hi, s_time + window);
    if (hi <= lo) return VectorXd::Zero(cs.d);
    const VectorXd c_lo_node = cs.c(x.node(k)).col(q);
    const VectorXd c_hi_node = cs.c(x.node(k + 1)).col(q);
    auto interp = [&](double tau) -> VectorXd {
        const double frac = (tau - cell_lo) / x.dt;
        return (1.0 - frac) * c_lo_node + frac * c_hi_node;
    };
    return 0.5 * n * (hi - lo) * (interp(lo) + interp(hi));
}

}  // namespace

GridPath solve_variational_fbm(const CoefficientSet& cs, const GridPath& xn, const GridPath& w,
                               const GridPath& zdot, double n, double s, int q) {
    if (q < 0 || q >= cs.l) throw std::invalid_argument("solve_variational_fbm: bad component");
    const double window = 1.0 / n;
    if (window < xn.dt - 1e-12 * xn.dt)
        throw std::domain_error("solve_variational_fbm: need 1/n >= dt");
    const int ks = xn.index_of(s, "derivative time s");
    const StepFactors f = build_step_factors(cs, xn, w, zdot, DriveMode::rate);

    const int tail_nodes = xn.nodes() - ks;
    GridPath d(xn.time(ks), xn.dt, tail_nodes, cs.d);
    VectorXd state = VectorXd::Zero(cs.d);
    d.set_node(0, state);
    for (int k = ks; k < xn.steps(); ++k) {
        state = f.m[k] * state + source_increment(cs, xn, k, xn.time(ks), window, n, q);
        d.set_node(k - ks + 1, state);
    }
    return d;
}

GridPath duhamel_reconstruct(const CoefficientSet& cs, const GridPath& xn, const GridPath& w,
                             const GridPath& zdot, double n, double s, int q) {
    if (q < 0 || q >= cs.l) throw std::invalid_argument("duhamel_reconstruct: bad component");
    const int ks = xn.index_of(s, "derivative time s");
    const int wc = window_cells(n, xn.dt);
    const int ke = std::min(ks + wc, xn.steps());  // window truncated at the horizon
    const StepFactors f = build_step_factors(cs, xn, w, zdot, DriveMode::rate);

    // Homogeneous solutions started at each window node z.
    std::vector<GridPath> r;
    r.reserve(ke - ks + 1);
    for (int kz = ks; kz <= ke; ++kz)
        r.push_back(propagate(f, xn, kz, cs.c(xn.node(kz)).col(q)));

    const int tail_nodes = xn.nodes() - ks;
    GridPath d(xn.time(ks), xn.dt, tail_nodes, cs.d);
    for (int kt = ks; kt <= xn.steps(); ++kt) {
        const int upper = std::min(kt, ke);  // z-integral runs to (s + 1/n) ^ t
        VectorXd acc = VectorXd::Zero(cs.d);
        for (int kz = ks; kz < upper; ++kz) {
            // r[j] lives on [z_j, T]; index of node kt inside it is kt - (ks + j).
            const auto r_lo = r[kz - ks].node(kt - kz);
            const auto r_hi = r[kz + 1 - ks].node(kt - kz - 1);
            acc += 0.5 * xn.dt * (r_lo + r_hi);
        }
        d.set_node(kt - ks, n * acc);
    }
    return d;
}

GridPath solve_variational_wiener(const CoefficientSet& cs, const GridPath& x, const GridPath& w,
                                  const GridPath& b, double s, int j) {
    if (j < 0 || j >= cs.m) throw std::invalid_argument("solve_variational_wiener: bad component");
    const int ks = x.index_of(s, "derivative time s");
    return solve_r(cs, x, w, b, s, cs.b(x.node(ks)).col(j));
}

namespace {

DerivativeField make_field(DerivativeField::Driver driver, int component, const GridPath& x,
                           std::span<const int> t_indices) {
    DerivativeField field;
    field.driver = driver;
    field.component = component;
    field.t0 = x.t0;
    field.dt = x.dt;
    field.dim = x.dim;
    field.s_nodes = x.nodes();
    field.t_indices.assign(t_indices.begin(), t_indices.end());
    for (int ti : field.t_indices)
        if (ti < 0 || ti > x.steps())
            throw std::invalid_argument("derivative field: evaluation index off the grid");
    field.data.assign(field.t_indices.size() * static_cast<std::size_t>(field.s_nodes) * field.dim,
                      0.0);
    return field;
}

}  // namespace

DerivativeField fbm_derivative_field(const CoefficientSet& cs, const GridPath& xn,
                                     const GridPath& w, const GridPath& zdot, double n, int q,
                                     std::span<const int> t_indices) {
    if (q < 0 || q >= cs.l) throw std::invalid_argument("fbm_derivative_field: bad component");
    const int wc = window_cells(n, xn.dt);
    const StepFactors f = build_step_factors(cs, xn, w, zdot, DriveMode::rate);
    DerivativeField field = make_field(DerivativeField::Driver::fbm, q, xn, t_indices);

    std::vector<VectorXd> c_cols(xn.nodes());
    for (int k = 0; k < xn.nodes(); ++k) c_cols[k] = cs.c(xn.node(k)).col(q);

    // For each t: suffix sums of Phi_{t,k+1} * (c_k + c_{k+1})/2 * n * dt, so that
    // D_s X_t is a difference of two suffix entries.
    std::vector<VectorXd> suffix;
    for (std::size_t ti = 0; ti < field.t_indices.size(); ++ti) {
        const int it = field.t_indices[ti];
        suffix.assign(it + 1, VectorXd::Zero(cs.d));
        MatrixXd phi = MatrixXd::Identity(cs.d, cs.d);  // Phi_{it, k+1}, k = it-1 downwards
        for (int k = it - 1; k >= 0; --k) {
            const VectorXd term = phi * (0.5 * n * xn.dt * (c_cols[k] + c_cols[k + 1]));
            suffix[k] = suffix[k + 1] + term;
            phi = phi * f.m[k];
        }
        for (int ks = 0; ks <= it; ++ks) {
            const int ke = std::min(ks + wc, it);
            Eigen::Map<VectorXd>(field.value_ptr(static_cast<int>(ti), ks), cs.d) =
                suffix[ks] - suffix[ke];
        }
    }
    return field;
}

DerivativeField wiener_derivative_field(const CoefficientSet& cs, const GridPath& xn,
                                        const GridPath& w, const GridPath& zdot, int j,
                                        std::span<const int> t_indices) {
    if (j < 0 || j >= cs.m) throw std::invalid_argument("wiener_derivative_field: bad component");
    const StepFactors f = build_step_factors(cs, xn, w, zdot, DriveMode::rate);
    DerivativeField field = make_field(DerivativeField::Driver::wiener, j, xn, t_indices);

    std::vector<VectorXd> b_cols(xn.nodes());
    for (int k = 0; k < xn.nodes(); ++k) b_cols[k] = cs.b(xn.node(k)).col(j);

    for (std::size_t ti = 0; ti < field.t_indices.size(); ++ti) {
        const int it = field.t_indices[ti];
        MatrixXd phi = MatrixXd::Identity(cs.d, cs.d);  // Phi_{it, k}
        Eigen::Map<VectorXd>(field.value_ptr(static_cast<int>(ti), it), cs.d) = b_cols[it];
        for (int k = it - 1; k >= 0; --k) {
            phi = phi * f.m[k];
            Eigen::Map<VectorXd>(field.value_ptr(static_cast<int>(ti), k), cs.d) = phi * b_cols[k];
        }
    }
    return field;
}

FdResult directional_derivative_fd(const CoefficientSet& cs, const VectorXd& x0, const GridPath& w,
                                   const GridPath& b, HurstParam H,
                                   const std::vector<StepFunction>& h,
                                   std::span<const double> eps_list, double n) {
    if (static_cast<int>(h.size()) != cs.l)
        throw std::invalid_argument("directional_derivative_fd: need one direction per fBm slot");
    if (eps_list.size() < 2)
        throw std::invalid_argument("directional_derivative_fd: epsilon ladder needs >= 2 rungs");

    GridPath shift(b.t0, b.dt, b.nodes(), b.dim);
    for (int k = 0; k < b.nodes(); ++k)
        for (int q = 0; q < b.dim; ++q) shift.at(k, q) = cm_shift_value(h[q], b.time(k), H);

    std::vector<double> eps_sorted(eps_list.begin(), eps_list.end());
    std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<>());

    std::vector<GridPath> fd;
    fd.reserve(eps_sorted.size());
    for (double eps : eps_sorted) {
        GridPath bp = b, bm = b;
        for (std::size_t i = 0; i < b.values.size(); ++i) {
            bp.values[i] = b.values[i] + eps * shift.values[i];
            bm.values[i] = b.values[i] - eps * shift.values[i];
        }
        const GridPath xp = solve_smoothed(cs, x0, w, smoothed_driver(bp, n).zdot);
        const GridPath xm = solve_smoothed(cs, x0, w, smoothed_driver(bm, n).zdot);
        GridPath diff(b.t0, b.dt, b.nodes(), cs.d);
        for (std::size_t i = 0; i < diff.values.size(); ++i)
            diff.values[i] = (xp.values[i] - xm.values[i]) / (2.0 * eps);
        fd.push_back(std::move(diff));
    }

    FdResult result;
    double best_drift = std::numeric_limits<double>::infinity();
    std::size_t best = 1;
    for (std::size_t i = 0; i + 1 < fd.size(); ++i) {
        double diff_sup = 0.0, scale = 0.0;
        for (int k = 0; k <= fd[i].steps(); ++k) {
            diff_sup = std::max(diff_sup, (fd[i].node(k) - fd[i + 1].node(k)).norm());
            scale = std::max(scale, fd[i + 1].node(k).norm());
        }
        const double drift = (diff_sup < 1e-14 && scale < 1e-14) ? 0.0 : diff_sup / std::max(scale, 1e-14);
        result.ladder.emplace_back(eps_sorted[i], drift);
        if (drift < best_drift) {
            best_drift = drift;
            best = i + 1;
        }
    }
    result.derivative = fd[best];
    result.epsilon = eps_sorted[best];
    result.drift = best_drift;
    result.stable = best_drift <= 0.05;
    return result;
}

VectorXd gradient_pairing(const std::vector<DerivativeField>& fbm_fields, int ti,
                          const std::vector<StepFunction>& h, HurstParam H) {
    if (fbm_fields.empty()) throw std::invalid_argument("gradient_pairing: no fields");
    if (fbm_fields.size() != h.size())
        throw std::invalid_argument("gradient_pairing: need one direction per field");
    const int dim = fbm_fields.front().dim;
    VectorXd acc = VectorXd::Zero(dim);
    for (std::size_t q = 0; q < fbm_fields.size(); ++q) {
        const DerivativeField& field = fbm_fields[q];
        if (ti < 0 || ti >= static_cast<int>(field.t_indices.size()))
            throw std::invalid_argument("gradient_pairing: evaluation index out of range");
        const int nodes = field.s_nodes;
        for (int k = 0; k < nodes; ++k) {
            const double weight = (k == 0 || k == nodes - 1) ? 0.5 * field.dt : field.dt;
            const double psi = kernel_smooth(h[q], field.t0 + k * field.dt, H);
            acc += weight * psi * field.value(ti, k);
        }
    }
    return acc;
}

PairingCheck gradient_pairing_check(const std::vector<DerivativeField>& fbm_fields, int ti,
                                    const std::vector<StepFunction>& h, HurstParam H,
                                    const VectorXd& fd_value) {
    PairingCheck check;
    check.pairing = gradient_pairing(fbm_fields, ti, h, H);
    check.fd = fd_value;
    const double denom = fd_value.norm();
    const double diff = (check.pairing - fd_value).norm();
    check.rel_error = (diff < 1e-14 && denom < 1e-14) ? 0.0 : diff / std::max(denom, 1e-14);
    return check;
}

std::vector<MomentReport> sobolev_norm_estimate(const CoefficientSet& cs, HurstParam H, double T,
                                                int N, std::span<const double> n_list, double p,
                                                double t, const VectorXd& x0, int num_samples,
                                                int batches, std::uint64_t seed) {
    if (!(p >= 1.0)) throw std::domain_error("sobolev_norm_estimate: p must be >= 1");
    if (n_list.empty()) throw std::invalid_argument("sobolev_norm_estimate: empty n list");
    const double dt = T / N;
    GridPath probe(0.0, dt, N + 1, 1);
    const int it = probe.index_of(t, "evaluation time t");
    const std::vector<int> t_idx{it};

    // Exact cell-pair integrals of phi; they depend only on the lag.
    std::vector<double> iota(it > 0 ? it : 1, 0.0);
    for (int lag = 0; lag < it; ++lag)
        iota[lag] = phi_box_integral(0.0, dt, lag * dt, (lag + 1) * dt, H);

    std::vector<std::vector<double>> values(n_list.size(),
                                            std::vector<double>(num_samples, 0.0));
    parallel_for(static_cast<std::size_t>(num_samples), [&](std::size_t i) {
        const std::uint64_t path_seed = substream_seed(seed, "sobolev", i);
        const GridPath w = sample_wiener(N, T, cs.m, path_seed);
        const GridPath b = sample_fbm(N, T, H, cs.l, path_seed);
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            const double n = n_list[ni];
            const GridPath zdot = smoothed_driver(b, n).zdot;
            const GridPath xn = solve_smoothed(cs, x0, w, zdot);
            double hnorm_sq = 0.0;
            for (int q = 0; q < cs.l; ++q) {
                const DerivativeField field =
                    fbm_derivative_field(cs, xn, w, zdot, n, q, t_idx);
                // Step-function discretization on cells [t_k, t_{k+1}), left level.
                for (int c = 0; c < cs.d; ++c) {
                    for (int lag = 0; lag < it; ++lag) {
                        double s = 0.0;
                        for (int k = 0; k + lag < it; ++k)
                            s += field.value(0, k)[c] * field.value(0, k + lag)[c];
                        hnorm_sq += (lag == 0 ? 1.0 : 2.0) * iota[lag] * s;
                    }
                }
            }
            for (int j = 0; j < cs.m; ++j) {
                const DerivativeField field =
                    wiener_derivative_field(cs, xn, w, zdot, j, t_idx);
                for (int k = 0; k <= it; ++k) {
                    const double weight = (k == 0 || k == it) ? 0.5 * dt : dt;
                    hnorm_sq += weight * field.value(0, k).squaredNorm();
                }
            }
            values[ni][i] = std::pow(xn.node(it).norm(), p) + std::pow(hnorm_sq, 0.5 * p);
        }
    });

    std::vector<MomentReport> reports;
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        MomentReport report = batch_report(values[ni], batches);
        report.name = "sobolev_norm";
        report.params = {{"n", n_list[ni]}, {"p", p}, {"t", t}};
        report.seed = seed;
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace msl
