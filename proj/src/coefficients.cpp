#include "msl/coefficients.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "msl/rng.hpp"

namespace msl {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}

CoefficientSet make_zero_model() {
    CoefficientSet cs;
    cs.name = "zero";
    cs.d = cs.m = cs.l = 1;
    cs.a = [](const VectorXd&) { return VectorXd::Zero(1); };
    cs.b = [](const VectorXd&) { return MatrixXd::Zero(1, 1); };
    cs.c = [](const VectorXd&) { return MatrixXd::Zero(1, 1); };
    cs.jac_a = [](const VectorXd&) { return MatrixXd::Zero(1, 1); };
    cs.jac_b = [](const VectorXd&) { return std::vector<MatrixXd>{MatrixXd::Zero(1, 1)}; };
    cs.jac_c = [](const VectorXd&) { return std::vector<MatrixXd>{MatrixXd::Zero(1, 1)}; };
    cs.bounds = {};
    return cs;
}

CoefficientSet make_const_model() {
    VectorXd a0(1);
    a0 << 0.1;
    MatrixXd b0(1, 1), c0(1, 1);
    b0 << 0.25;
    c0 << 0.3;
    CoefficientSet cs = make_constant_coefficients(a0, b0, c0);
    cs.name = "const";
    return cs;
}

// d = m = l = 1, a(x) = 0.3 sin x, b(x) = 0.5 cos x, c(x) = 0.8 / (1 + x^2).
CoefficientSet make_trig1d() {
    CoefficientSet cs;
    cs.name = "trig1d";
    cs.d = cs.m = cs.l = 1;
    cs.a = [](const VectorXd& x) {
        VectorXd v(1);
        v[0] = 0.3 * std::sin(x[0]);
        return v;
    };
    cs.b = [](const VectorXd& x) {
        MatrixXd v(1, 1);
        v(0, 0) = 0.5 * std::cos(x[0]);
        return v;
    };
    cs.c = [](const VectorXd& x) {
        MatrixXd v(1, 1);
        v(0, 0) = 0.8 / (1.0 + x[0] * x[0]);
        return v;
    };
    cs.jac_a = [](const VectorXd& x) {
        MatrixXd v(1, 1);
        v(0, 0) = 0.3 * std::cos(x[0]);
        return v;
    };
    cs.jac_b = [](const VectorXd& x) {
        MatrixXd v(1, 1);
        v(0, 0) = -0.5 * std::sin(x[0]);
        return std::vector<MatrixXd>{v};
    };
    cs.jac_c = [](const VectorXd& x) {
        MatrixXd v(1, 1);
        const double den = 1.0 + x[0] * x[0];
        v(0, 0) = -1.6 * x[0] / (den * den);
        return std::vector<MatrixXd>{v};
    };
    // sup |c'| = 0.8 * 9/(8 sqrt(3)) ~ 0.5196, sup |c''| = 1.6 at the origin.
    cs.bounds = {0.3, 0.5, 0.8, 0.3, 0.5, 0.52, 1.6};
    return cs;
}

// d = 2, m = 1, l = 1, all entries of the form alpha * tanh(<w, x>).
CoefficientSet make_tanh2d() {
    CoefficientSet cs;
    cs.name = "tanh2d";
    cs.d = 2;
    cs.m = 1;
    cs.l = 1;
    cs.a = [](const VectorXd& x) {
        VectorXd v(2);
        v[0] = 0.2 * std::tanh(x[1]);
        v[1] = -0.2 * std::tanh(x[0]);
        return v;
    };
    cs.jac_a = [](const VectorXd& x) {
        MatrixXd j = MatrixXd::Zero(2, 2);
        j(0, 1) = 0.2 * sech2(x[1]);
        j(1, 0) = -0.2 * sech2(x[0]);
        return j;
    };
    cs.b = [](const VectorXd& x) {
        MatrixXd v(2, 1);
        v(0, 0) = 0.4 * std::tanh(x[0] + x[1]);
        v(1, 0) = 0.4 * std::tanh(x[0] - x[1]);
        return v;
    };
    cs.jac_b = [](const VectorXd& x) {
        MatrixXd j(2, 2);
        const double s0 = 0.4 * sech2(x[0] + x[1]);
        const double s1 = 0.4 * sech2(x[0] - x[1]);
        j(0, 0) = s0;
        j(0, 1) = s0;
        j(1, 0) = s1;
        j(1, 1) = -s1;
        return std::vector<MatrixXd>{j};
    };
    cs.c = [](const VectorXd& x) {
        MatrixXd v(2, 1);
        v(0, 0) = 0.5 * std::tanh(0.8 * x[0] - 0.4 * x[1]);
        v(1, 0) = 0.5 * std::tanh(0.4 * x[0] + 0.8 * x[1]);
        return v;
    };
    cs.jac_c = [](const VectorXd& x) {
        MatrixXd j(2, 2);
        const double s0 = 0.5 * sech2(0.8 * x[0] - 0.4 * x[1]);
        const double s1 = 0.5 * sech2(0.4 * x[0] + 0.8 * x[1]);
        j(0, 0) = 0.8 * s0;
        j(0, 1) = -0.4 * s0;
        j(1, 0) = 0.4 * s1;
        j(1, 1) = 0.8 * s1;
        return std::vector<MatrixXd>{j};
    };
    // Frobenius bounds: |a| <= 0.2 sqrt(2), |b| <= 0.4 sqrt(2), |c| <= 0.5 sqrt(2);
    // gradients scale with |w| <= sqrt(0.8); tanh'' peaks at 4/(3 sqrt(3)).
    cs.bounds = {0.29, 0.57, 0.71, 0.29, 0.81, 0.64, 0.7};
    return cs;
}

}  // namespace

CoefficientSet make_constant_coefficients(const Eigen::VectorXd& a0, const Eigen::MatrixXd& b0,
                                          const Eigen::MatrixXd& c0) {
    const int d = static_cast<int>(a0.size());
    if (b0.rows() != d || c0.rows() != d)
        throw std::invalid_argument("make_constant_coefficients: inconsistent dimensions");
    CoefficientSet cs;
    cs.name = "constant";
    cs.d = d;
    cs.m = static_cast<int>(b0.cols());
    cs.l = static_cast<int>(c0.cols());
    cs.a = [a0](const VectorXd&) { return a0; };
    cs.b = [b0](const VectorXd&) { return b0; };
    cs.c = [c0](const VectorXd&) { return c0; };
    cs.jac_a = [d](const VectorXd&) { return MatrixXd::Zero(d, d); };
    const int m = cs.m;
    const int l = cs.l;
    cs.jac_b = [d, m](const VectorXd&) {
        return std::vector<MatrixXd>(static_cast<std::size_t>(m), MatrixXd::Zero(d, d));
    };
    cs.jac_c = [d, l](const VectorXd&) {
        return std::vector<MatrixXd>(static_cast<std::size_t>(l), MatrixXd::Zero(d, d));
    };
    cs.bounds = {a0.norm(), b0.norm(), c0.norm(), 0.0, 0.0, 0.0, 0.0};
    return cs;
}

const CoefficientSet& model_zoo(const std::string& name) {
    static const std::map<std::string, CoefficientSet> zoo = [] {
        std::map<std::string, CoefficientSet> z;
        z.emplace("zero", make_zero_model());
        z.emplace("const", make_const_model());
        z.emplace("trig1d", make_trig1d());
        z.emplace("tanh2d", make_tanh2d());
        return z;
    }();
    auto it = zoo.find(name);
    if (it == zoo.end())
        throw std::invalid_argument("model_zoo: unknown model '" + name +
                                    "' (known: zero, const, trig1d, tanh2d)");
    return it->second;
}

std::vector<std::string> model_zoo_names() { return {"zero", "const", "trig1d", "tanh2d"}; }

namespace {

VectorXd probe_point(GaussianStream& g, int d) {
    VectorXd x(d);
    // Uniform box [-10, 10]^d; wide enough to approach the suprema of the
    // bounded models.
    for (int i = 0; i < d; ++i) x[i] = 20.0 * (g.uniform01() - 0.5);
    return x;
}

}  // namespace

BoundsProbe probe_coefficient_bounds(const CoefficientSet& cs, int points, std::uint64_t seed) {
    GaussianStream g(substream_seed(seed, "bounds-probe"));
    BoundsProbe probe;
    auto check = [&](double value, double bound, const char* what) {
        const double excess = value - bound;
        if (excess > probe.worst_excess) {
            probe.worst_excess = excess;
            probe.detail = what;
        }
        if (value > bound + 1e-12) probe.ok = false;
    };
    for (int i = 0; i < points; ++i) {
        const VectorXd x = probe_point(g, cs.d);
        check(cs.a(x).norm(), cs.bounds.a_inf, "a");
        check(cs.b(x).norm(), cs.bounds.b_inf, "b");
        check(cs.c(x).norm(), cs.bounds.c_inf, "c");
        check(cs.jac_a(x).norm(), cs.bounds.da_inf, "jac_a");
        double db = 0.0;
        for (const auto& jm : cs.jac_b(x)) db += jm.squaredNorm();
        check(std::sqrt(db), cs.bounds.db_inf, "jac_b");
        double dc = 0.0;
        for (const auto& jm : cs.jac_c(x)) dc += jm.squaredNorm();
        check(std::sqrt(dc), cs.bounds.dc_inf, "jac_c");
    }
    return probe;
}

JacobianProbe probe_jacobians(const CoefficientSet& cs, int points, std::uint64_t seed,
                              double rel_tol) {
    GaussianStream g(substream_seed(seed, "jacobian-probe"));
    JacobianProbe probe;
    const double h = 1e-5;
    auto update = [&](double num, double analytic, double scale) {
        const double err = std::abs(num - analytic) / std::max(scale, 1e-8);
        probe.max_rel_err = std::max(probe.max_rel_err, err);
        if (err > rel_tol) probe.ok = false;
    };
    for (int i = 0; i < points; ++i) {
        const VectorXd x = probe_point(g, cs.d);
        const MatrixXd ja = cs.jac_a(x);
        const auto jb = cs.jac_b(x);
        const auto jc = cs.jac_c(x);
        const double scale_a = std::max(1.0, ja.norm());
        for (int k = 0; k < cs.d; ++k) {
            VectorXd xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const VectorXd da = (cs.a(xp) - cs.a(xm)) / (2.0 * h);
            for (int r = 0; r < cs.d; ++r) update(da[r], ja(r, k), scale_a);
            const MatrixXd db = (cs.b(xp) - cs.b(xm)) / (2.0 * h);
            for (int j = 0; j < cs.m; ++j)
                for (int r = 0; r < cs.d; ++r) update(db(r, j), jb[j](r, k), std::max(1.0, jb[j].norm()));
            const MatrixXd dc = (cs.c(xp) - cs.c(xm)) / (2.0 * h);
            for (int q = 0; q < cs.l; ++q)
                for (int r = 0; r < cs.d; ++r) update(dc(r, q), jc[q](r, k), std::max(1.0, jc[q].norm()));
        }
    }
    return probe;
}

}  // namespace msl
