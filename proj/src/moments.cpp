#include "msl/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "msl/paths.hpp"
#include "msl/rng.hpp"
#include "msl/util.hpp"

namespace msl {

double alpha_max(HurstParam H) { return 4.0 * H.value() / (2.0 * H.value() + 1.0); }

namespace {

constexpr double kExpOverflow = 709.0;  // log of the largest finite double, rounded down

}  // namespace

MomentReport batch_report(std::span<const double> values, int batches) {
    const int n = static_cast<int>(values.size());
    if (n == 0) throw std::invalid_argument("batch_report: no samples");
    if (batches < 1) throw std::invalid_argument("batch_report: batches must be >= 1");
    if (n % batches != 0)
        throw std::invalid_argument("batch_report: sample count " + std::to_string(n) +
                                    " is not divisible into " + std::to_string(batches) +
                                    " batches");
    MomentReport report;
    report.sample_count = n;
    const int per = n / batches;
    report.batch_estimates.resize(batches);
    for (int b = 0; b < batches; ++b)
        report.batch_estimates[b] =
            pairwise_sum(values.data() + static_cast<std::size_t>(b) * per,
                         static_cast<std::size_t>(per)) /
            per;
    report.pooled = pairwise_sum(values) / static_cast<double>(n);
    const auto [mn, mx] =
        std::minmax_element(report.batch_estimates.begin(), report.batch_estimates.end());
    report.spread = (*mx - *mn) / report.pooled;
    return report;
}

MomentReport estimate_exp_moment(std::span<const double> samples, double z, double alpha,
                                 int batches) {
    if (samples.empty()) throw std::invalid_argument("estimate_exp_moment: no samples");
    if (z < 0.0) throw std::domain_error("estimate_exp_moment: z must be nonnegative");
    if (!(alpha > 0.0)) throw std::domain_error("estimate_exp_moment: alpha must be positive");

    int overflows = 0;
    std::vector<double> transformed(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double exponent = z * std::pow(samples[i], alpha);
        if (exponent > kExpOverflow) {
            ++overflows;
            transformed[i] = std::numeric_limits<double>::infinity();
        } else {
            transformed[i] = std::exp(exponent);
        }
    }
    MomentReport report = batch_report(transformed, batches);
    report.name = "exp_moment";
    report.params = {{"z", z}, {"alpha", alpha}};
    report.overflow_count = overflows;
    return report;
}

TailReport tail_gaussianity_check(double A, double kappa, double t, int N, int num_samples,
                                  std::span<const double> x_grid, std::uint64_t seed) {
    if (A < 0.0) throw std::domain_error("tail_gaussianity_check: A must be nonnegative");
    if (!(kappa > 0.0 && kappa < 0.5))
        throw std::domain_error("tail_gaussianity_check: kappa must lie in (0, 1/2)");
    if (num_samples < 1) throw std::invalid_argument("tail_gaussianity_check: need samples");

    std::vector<double> norms(num_samples, 0.0);
    parallel_for(static_cast<std::size_t>(num_samples), [&](std::size_t i) {
        const GridPath v = sample_wiener(N, t, 1, substream_seed(seed, "tail", i));
        norms[i] = A * holder_seminorm(v, kappa, 0.0, t);
    });

    TailReport report;
    report.seed = seed;
    report.sample_count = num_samples;
    report.m_hat = pairwise_sum(norms) / num_samples;
    const double max_norm = *std::max_element(norms.begin(), norms.end());
    const double denom = 2.0 * A * A * std::pow(t, 1.0 - 2.0 * kappa);

    for (double x : x_grid) {
        TailRow row;
        row.x = x;
        row.bound = denom > 0.0 ? 4.0 * std::exp(-x * x / denom) : (x > 0.0 ? 0.0 : 4.0);
        int count = 0;
        for (double s : norms)
            if (s > report.m_hat + x) ++count;
        row.empirical = static_cast<double>(count) / num_samples;
        row.se = std::sqrt(row.empirical * (1.0 - row.empirical) / num_samples);
        row.no_data = report.m_hat + x > max_norm;
        row.satisfied = row.empirical <= row.bound + 3.0 * row.se;
        report.satisfied = report.satisfied && row.satisfied;
        report.rows.push_back(row);
    }
    return report;
}

FerniqueReport fernique_check(std::span<const double> norm_samples, double a, double y,
                              int batches) {
    if (!(a > 0.0 && a < 2.0))
        throw std::domain_error("fernique_check: exponent a must lie in (0, 2)");
    if (y < 0.0) throw std::domain_error("fernique_check: y must be nonnegative");

    FerniqueReport report;
    report.moment = estimate_exp_moment(norm_samples, y, a, batches);
    report.moment.name = "fernique";
    report.moment.params = {{"a", a}, {"y", y}};

    // Quadratic log-tail fit: log survival against x^2 on quantile abscissae.
    std::vector<double> sorted(norm_samples.begin(), norm_samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> xs, ys;
    const int n = static_cast<int>(sorted.size());
    for (double q = 0.50; q <= 0.985; q += 0.05) {
        const double x = sorted[static_cast<std::size_t>(q * (n - 1))];
        int count = 0;
        for (double s : norm_samples)
            if (s > x) ++count;
        if (count < 5) continue;  // too few exceedances for a stable log
        xs.push_back(x * x);
        ys.push_back(std::log(static_cast<double>(count) / n));
    }
    const std::size_t k = xs.size();
    if (k < 3) {
        report.tail_ok = false;
        return report;
    }
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    report.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double fit = my + report.slope * (xs[i] - mx);
        rss += (ys[i] - fit) * (ys[i] - fit);
    }
    report.slope_se = std::sqrt(rss / static_cast<double>(k - 2) / sxx);
    report.tstat = report.slope / report.slope_se;
    report.tail_ok = report.slope + 1.645 * report.slope_se < 0.0;
    return report;
}

double J_statistic(const GridPath& y, const CoefficientSet& cs, const GridPath& w, double theta) {
    if (!(theta > 0.0 && theta < 0.5))
        throw std::domain_error("J_statistic: theta must lie in (0, 1/2)");
    y.require_same_grid(w, "J_statistic");
    if (w.dim != cs.m) throw std::invalid_argument("J_statistic: Wiener component mismatch");
    if (y.dim != cs.d) throw std::invalid_argument("J_statistic: solution dimension mismatch");

    const int nodes = y.nodes();
    // Integral paths for all (i,j) at once; b(Y) is evaluated once per node.
    std::vector<GridPath> integrals(static_cast<std::size_t>(cs.d) * cs.m,
                                    GridPath(y.t0, y.dt, nodes, 1));
    for (int k = 0; k + 1 < nodes; ++k) {
        const Eigen::MatrixXd bk = cs.b(y.node(k));
        for (int j = 0; j < cs.m; ++j) {
            const double dw = w.at(k + 1, j) - w.at(k, j);
            for (int i = 0; i < cs.d; ++i) {
                GridPath& path = integrals[static_cast<std::size_t>(i) * cs.m + j];
                path.at(k + 1, 0) = path.at(k, 0) + bk(i, j) * dw;
            }
        }
    }
    double total = 0.0;
    for (const auto& path : integrals)
        total += holder_seminorm(path, theta, path.t0, path.end_time());
    return total;
}

}  // namespace msl
