#include "msl/young.hpp"

#include <cmath>
#include <stdexcept>

#include "msl/paths.hpp"

namespace msl {

YoungConstant young_constant(double mu, double nu) {
    if (!(mu > 0.0 && mu < 1.0 && nu > 0.0 && nu < 1.0))
        throw std::domain_error("young_constant: mu and nu must lie in (0,1)");
    if (!(mu + nu > 1.0))
        throw std::domain_error("young_constant: mu + nu must exceed 1");
    const double value = 1.0 / (1.0 - std::pow(2.0, 1.0 - (mu + nu)));
    return {mu, nu, value};
}

namespace {

std::pair<int, int> cell_window(const GridPath& p, double a, double b) {
    const double tol = 1e-9 * std::max(1.0, p.dt);
    int ia = static_cast<int>(std::ceil((a - p.t0) / p.dt - tol));
    int ib = static_cast<int>(std::floor((b - p.t0) / p.dt + tol));
    ia = std::max(ia, 0);
    ib = std::min(ib, p.steps());
    if (ib - ia < 1) throw std::domain_error("young_integral: window spans no grid cell");
    return {ia, ib};
}

}  // namespace

Eigen::VectorXd young_integral(const GridPath& f, const GridPath& g, double a, double b) {
    f.require_same_grid(g, "young_integral");
    auto [ia, ib] = cell_window(f, a, b);
    const int dg = g.dim;

    if (f.dim == 1) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(dg);
        for (int k = ia; k < ib; ++k) {
            const double fk = f.at(k, 0);
            for (int c = 0; c < dg; ++c) acc[c] += fk * (g.at(k + 1, c) - g.at(k, c));
        }
        return acc;
    }
    if (f.dim == dg) {
        double acc = 0.0;
        for (int k = ia; k < ib; ++k)
            for (int c = 0; c < dg; ++c) acc += f.at(k, c) * (g.at(k + 1, c) - g.at(k, c));
        Eigen::VectorXd out(1);
        out[0] = acc;
        return out;
    }
    if (f.dim % dg == 0) {
        const int rows = f.dim / dg;
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(rows);
        for (int k = ia; k < ib; ++k) {
            const double* fk = f.node_ptr(k);
            for (int r = 0; r < rows; ++r) {
                double s = 0.0;
                for (int c = 0; c < dg; ++c)
                    s += fk[static_cast<std::size_t>(r) * dg + c] * (g.at(k + 1, c) - g.at(k, c));
                acc[r] += s;
            }
        }
        return acc;
    }
    throw std::invalid_argument("young_integral: integrand dimension " + std::to_string(f.dim) +
                                " is incompatible with integrator dimension " + std::to_string(dg));
}

BoundReport young_bound(const GridPath& f, const GridPath& g, double a, double b, double mu,
                        double nu) {
    const YoungConstant k = young_constant(mu, nu);
    const Eigen::VectorXd integral = young_integral(f, g, a, b);
    const double lhs = integral.norm();
    const double span = b - a;
    const double g_mu = holder_seminorm(g, mu, a, b);
    const double f_inf = sup_norm(f, a, b);
    const double f_nu = holder_seminorm(f, nu, a, b);
    const double rhs =
        k.value * g_mu * (f_inf * std::pow(span, mu) + f_nu * std::pow(span, mu + nu));
    BoundReport report;
    report.lhs = lhs;
    report.rhs = rhs;
    report.satisfied = lhs <= rhs;
    report.informational = !(f.dim == 1 && g.dim == 1);
    return report;
}

namespace {

double pow_2h(double x, double two_h) { return std::pow(std::abs(x), two_h); }

}  // namespace

double phi_box_integral(double a, double b, double c, double d, HurstParam H) {
    const double th = H.two_h();
    return -0.5 * (pow_2h(b - d, th) - pow_2h(b - c, th) - pow_2h(a - d, th) + pow_2h(a - c, th));
}

double fractional_inner_product(const StepFunction& f, const StepFunction& g, HurstParam H) {
    if (f.components != 1 || g.components != 1)
        throw std::invalid_argument("fractional_inner_product: step functions must be scalar");
    double acc = 0.0;
    for (int i = 0; i < f.pieces(); ++i) {
        const double ci = f.level(i);
        if (ci == 0.0) continue;
        for (int j = 0; j < g.pieces(); ++j) {
            const double dj = g.level(j);
            if (dj == 0.0) continue;
            acc += ci * dj *
                   phi_box_integral(f.breakpoints[i], f.breakpoints[i + 1], g.breakpoints[j],
                                    g.breakpoints[j + 1], H);
        }
    }
    return acc;
}

double l2_inner_product(const StepFunction& f, const StepFunction& g) {
    if (f.components != 1 || g.components != 1)
        throw std::invalid_argument("l2_inner_product: step functions must be scalar");
    double acc = 0.0;
    for (int i = 0; i < f.pieces(); ++i) {
        for (int j = 0; j < g.pieces(); ++j) {
            const double lo = std::max(f.breakpoints[i], g.breakpoints[j]);
            const double hi = std::min(f.breakpoints[i + 1], g.breakpoints[j + 1]);
            if (hi > lo) acc += f.level(i) * g.level(j) * (hi - lo);
        }
    }
    return acc;
}

double mixed_inner_product(const MixedDirection& f, const MixedDirection& g, HurstParam H) {
    if (f.fbm.size() != g.fbm.size() || f.wiener.size() != g.wiener.size())
        throw std::invalid_argument("mixed_inner_product: component counts must match");
    double acc = 0.0;
    for (std::size_t q = 0; q < f.fbm.size(); ++q)
        acc += fractional_inner_product(f.fbm[q], g.fbm[q], H);
    for (std::size_t j = 0; j < f.wiener.size(); ++j)
        acc += l2_inner_product(f.wiener[j], g.wiener[j]);
    return acc;
}

namespace {

double signed_pow(double x, double p) {
    if (x == 0.0) return 0.0;
    return (x > 0.0 ? 1.0 : -1.0) * std::pow(std::abs(x), p);
}

}  // namespace

double kernel_smooth(const StepFunction& h, double s, HurstParam H) {
    if (h.components != 1) throw std::invalid_argument("kernel_smooth: h must be scalar");
    const double p = H.two_h() - 1.0;
    double acc = 0.0;
    for (int k = 0; k < h.pieces(); ++k) {
        const double level = h.level(k);
        if (level == 0.0) continue;
        acc += level * (signed_pow(h.breakpoints[k + 1] - s, p) - signed_pow(h.breakpoints[k] - s, p));
    }
    return H.value() * acc;
}

double cm_shift_value(const StepFunction& h, double u, HurstParam H) {
    if (h.components != 1) throw std::invalid_argument("cm_shift_value: h must be scalar");
    const double th = H.two_h();
    double acc = 0.0;
    for (int k = 0; k < h.pieces(); ++k) {
        const double level = h.level(k);
        if (level == 0.0) continue;
        const double a = h.breakpoints[k];
        const double b = h.breakpoints[k + 1];
        acc += 0.5 * level *
               (std::pow(b, th) - std::pow(a, th) + std::pow(std::abs(u - a), th) -
                std::pow(std::abs(u - b), th));
    }
    return acc;
}

}  // namespace msl
