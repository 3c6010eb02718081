#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "msl/csv.hpp"
#include "msl/paths.hpp"
#include "msl/rng.hpp"
#include "msl/util.hpp"

using namespace msl;

namespace {

GridPath linear_path(int N, double T) {
    GridPath p(0.0, T / N, N + 1, 1);
    for (int k = 0; k <= N; ++k) p.at(k, 0) = p.time(k);
    return p;
}

GridPath random_path(int nodes, int dim, std::uint64_t seed, double scale = 1.0) {
    GridPath p(0.0, 0.125, nodes, dim);
    GaussianStream g(seed);
    for (double& v : p.values) v = scale * g.next();
    return p;
}

// Independent oracle: direct double loop over ordered node pairs with a pow
// per pair.
double holder_bruteforce(const GridPath& p, double gamma) {
    double best = 0.0;
    for (int i = 0; i < p.nodes(); ++i)
        for (int j = i + 1; j < p.nodes(); ++j) {
            const double num = (p.node(j) - p.node(i)).norm();
            best = std::max(best, num / std::pow(p.time(j) - p.time(i), gamma));
        }
    return best;
}

}  // namespace

TEST_CASE("fbm covariance closed form") {
    const HurstParam h(0.75);
    CHECK(fbm_covariance(1.0, 1.0, h) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fbm_covariance(3.7, 0.0, h) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fbm_covariance(0.0, 0.2, h) == doctest::Approx(0.0).epsilon(1e-14));
    // (2^{1.5} + 1 - 1)/2 = 2^{0.5}
    CHECK(fbm_covariance(2.0, 1.0, h) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(fbm_covariance(-1.0, 1.0, h), std::domain_error);
    CHECK_THROWS_AS(fbm_covariance(1.0, -0.5, h), std::domain_error);
}

TEST_CASE("fbm covariance symmetry and positivity") {
    GaussianStream g(11);
    for (int i = 0; i < 200; ++i) {
        const HurstParam h(0.5 + 1e-3 + 0.498 * g.uniform01());
        const double t = 5.0 * g.uniform01();
        const double s = 5.0 * g.uniform01();
        const double a = fbm_covariance(t, s, h);
        CHECK(a == fbm_covariance(s, t, h));
        CHECK(a >= -1e-12);
    }
}

TEST_CASE("fbm covariance Gram matrices are positive semidefinite") {
    for (double hval : {0.55, 0.6, 0.75, 0.9, 0.99}) {
        const HurstParam h(hval);
        const int n = 24;
        Eigen::MatrixXd gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gram(i, j) = fbm_covariance((i + 1) * 0.05, (j + 1) * 0.05, h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * gram.trace());
    }
}

TEST_CASE("HurstParam rejects boundary values") {
    CHECK_THROWS_AS(HurstParam(0.5), std::domain_error);
    CHECK_THROWS_AS(HurstParam(1.0), std::domain_error);
    CHECK_THROWS_AS(HurstParam(0.3), std::domain_error);
    CHECK_NOTHROW(HurstParam(0.500001));
    CHECK_NOTHROW(HurstParam(0.999999));
}

TEST_CASE("sample_fbm starts at zero and is bit-reproducible") {
    const HurstParam h(0.8);
    const GridPath a = sample_fbm(128, 1.0, h, 3, 99);
    const GridPath b = sample_fbm(128, 1.0, h, 3, 99);
    const GridPath c = sample_fbm(128, 1.0, h, 3, 100);
    for (int q = 0; q < 3; ++q) CHECK(a.at(0, q) == 0.0);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.all_finite());
}

TEST_CASE("sample_fbm N=1 increment has unit variance at T=1") {
    const HurstParam h(0.75);
    const int S = 100000;
    std::vector<double> sq(S);
    for (int s = 0; s < S; ++s) {
        const GridPath b = sample_fbm(1, 1.0, h, 1, 1000 + s);
        sq[s] = b.at(1, 0) * b.at(1, 0);
    }
    const double var = mean(sq);
    const double se = standard_error(sq);
    CHECK(std::abs(var - 1.0) <= 3.0 * se);  // Var B_1 = R_H(1,1) = 1
}

TEST_CASE("sample_fbm empirical Cov(B_1, B_2) matches the covariance") {
    const HurstParam h(0.75);
    const int S = 100000;
    std::vector<double> prod(S);
    for (int s = 0; s < S; ++s) {
        const GridPath b = sample_fbm(2, 2.0, h, 1, 5000 + s);
        prod[s] = b.at(1, 0) * b.at(2, 0);
    }
    const double se = standard_error(prod);
    CHECK(std::abs(mean(prod) - std::sqrt(2.0)) <= 3.0 * se);
}

TEST_CASE("dense Cholesky route matches the covariance too") {
    const HurstParam h(0.65);
    const int S = 20000;
    std::vector<double> v_end(S), cross(S);
    for (int s = 0; s < S; ++s) {
        const GridPath b = sample_fbm_dense(8, 1.0, h, 1, 42000 + s);
        v_end[s] = b.at(8, 0) * b.at(8, 0);
        cross[s] = b.at(4, 0) * b.at(8, 0);
    }
    CHECK(std::abs(mean(v_end) - 1.0) <= 3.0 * standard_error(v_end));
    CHECK(std::abs(mean(cross) - fbm_covariance(0.5, 1.0, h)) <= 3.0 * standard_error(cross));
}

TEST_CASE("dense Cholesky failure reports the offending pivot") {
    // N beyond the fallback cap is a numerical error, reported as such.
    CHECK_THROWS_WITH_AS(sample_fbm_dense(9000, 1.0, HurstParam(0.75), 1, 1),
                         doctest::Contains("8192"), std::runtime_error);
}

TEST_CASE("sample_wiener increments telescope and have the right variance") {
    const int S = 100000;
    std::vector<double> wt_sq(S);
    for (int s = 0; s < S; ++s) {
        const GridPath w = sample_wiener(4, 2.0, 1, 7777 + s);
        wt_sq[s] = w.at(4, 0) * w.at(4, 0);
    }
    CHECK(std::abs(mean(wt_sq) - 2.0) <= 3.0 * standard_error(wt_sq));  // Var W_T = T

    const GridPath w = sample_wiener(256, 1.0, 2, 3);
    for (int j = 0; j < 2; ++j) {
        double sum = 0.0;
        for (int k = 0; k < w.steps(); ++k) sum += w.at(k + 1, j) - w.at(k, j);
        CHECK(sum == doctest::Approx(w.at(w.steps(), j)).epsilon(1e-12));
        CHECK(w.at(0, j) == 0.0);
    }
}

TEST_CASE("sample_wiener components are uncorrelated") {
    const int S = 100000;
    std::vector<double> prod(S);
    for (int s = 0; s < S; ++s) {
        const GridPath w = sample_wiener(2, 1.0, 2, 900000 + s);
        prod[s] = w.at(2, 0) * w.at(2, 1);
    }
    CHECK(std::abs(mean(prod)) <= 3.0 * standard_error(prod));
}

TEST_CASE("holder seminorm basics") {
    GridPath constant(0.0, 0.1, 9, 1);
    for (double& v : constant.values) v = 4.2;
    CHECK(holder_seminorm(constant, 0.3, 0.0, 0.8) == 0.0);

    const GridPath lin = linear_path(64, 1.0);
    CHECK(holder_seminorm(lin, 0.5, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(holder_seminorm(lin, 1.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(holder_seminorm(lin, 0.5, 0.4, 0.4005), std::domain_error);
}

TEST_CASE("holder seminorm matches the brute-force oracle") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const GridPath p1 = random_path(8, 1, seed);
        CHECK(holder_seminorm(p1, 0.4, 0.0, 7 * 0.125) ==
              doctest::Approx(holder_bruteforce(p1, 0.4)).epsilon(1e-12));
        const GridPath p3 = random_path(8, 3, seed + 50);
        CHECK(holder_seminorm(p3, 0.55, 0.0, 7 * 0.125) ==
              doctest::Approx(holder_bruteforce(p3, 0.55)).epsilon(1e-12));
    }
}

TEST_CASE("holder seminorm monotonicity properties") {
    // Enlarging the window never decreases the seminorm; on spans <= 1,
    // raising gamma never decreases it (|t-s|^gamma shrinks with gamma there).
    GaussianStream g(77);
    for (int trial = 0; trial < 25; ++trial) {
        const GridPath p = random_path(17, 1, 1000 + trial);  // span 2.0
        const double inner = holder_seminorm(p, 0.4, 0.25, 1.0);
        const double outer = holder_seminorm(p, 0.4, 0.125, 1.25);
        CHECK(outer >= inner);

        const double g1 = 0.1 + 0.4 * g.uniform01();
        const double g2 = g1 + (0.99 - g1) * g.uniform01();
        const double low = holder_seminorm(p, g1, 0.0, 1.0);
        const double high = holder_seminorm(p, g2, 0.0, 1.0);
        CHECK(high >= low * (1.0 - 1e-12));
    }
}

TEST_CASE("sup norm") {
    GridPath constant(0.0, 0.1, 5, 2);
    for (int k = 0; k < 5; ++k) {
        constant.at(k, 0) = 3.0;
        constant.at(k, 1) = 4.0;
    }
    CHECK(sup_norm(constant, 0.0, 0.4) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(sup_norm(linear_path(32, 1.0), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(sup_norm(constant, 0.11, 0.19), std::domain_error);
}

TEST_CASE("smoothed driver of the zero path is zero") {
    GridPath zero(0.0, 1.0 / 64, 65, 2);
    const SmoothedDriver d = smoothed_driver(zero, 8.0);
    for (double v : d.z.values) CHECK(v == 0.0);
    for (double v : d.zdot.values) CHECK(v == 0.0);
}

TEST_CASE("smoothed driver of the identity path is exact") {
    const int N = 256;
    const GridPath b = linear_path(N, 1.0);
    for (double n : {4.0, 8.0, 16.0}) {
        const SmoothedDriver d = smoothed_driver(b, n);
        CHECK(d.z.at(0, 0) == 0.0);
        for (int k = 0; k <= N; ++k) {
            const double t = b.time(k);
            // n * integral of s over the trailing window, exactly.
            const double expected = t >= 1.0 / n ? t - 0.5 / n : 0.5 * n * t * t;
            CHECK(d.z.at(k, 0) == doctest::Approx(expected).epsilon(1e-10 * N));
            const double expected_dot = t >= 1.0 / n ? 1.0 : n * t;
            CHECK(d.zdot.at(k, 0) == doctest::Approx(expected_dot).epsilon(1e-12));
        }
    }
}

TEST_CASE("smoothed driver rejects windows finer than the grid") {
    const GridPath b = linear_path(16, 1.0);  // dt = 1/16
    CHECK_THROWS_WITH_AS(smoothed_driver(b, 32.0), doctest::Contains("refine"),
                         std::domain_error);
}

TEST_CASE("smoothed paths approach the driver as n grows") {
    const HurstParam h(0.75);
    for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
        const GridPath b = sample_fbm(512, 1.0, h, 1, seed);
        double prev = std::numeric_limits<double>::infinity();
        for (double n : {4.0, 8.0, 16.0, 32.0}) {
            const SmoothedDriver d = smoothed_driver(b, n);
            double err = 0.0;
            for (int k = 0; k <= b.steps(); ++k)
                err = std::max(err, std::abs(d.z.at(k, 0) - b.at(k, 0)));
            CHECK(err < prev);
            prev = err;
        }
    }
}

TEST_CASE("grid path CSV round-trips exactly") {
    const GridPath p = random_path(12, 3, 321);
    std::stringstream ss;
    write_grid_path_csv(ss, p);
    const GridPath q = read_grid_path_csv(ss);
    CHECK(q.dim == p.dim);
    CHECK(q.t0 == doctest::Approx(p.t0).epsilon(1e-15));
    CHECK(q.dt == doctest::Approx(p.dt).epsilon(1e-15));
    CHECK(q.values == p.values);  // %.17g round-trips bit-exactly

    std::stringstream bad("t,x1\n0,1\n0.5,2\n0.7,3\n");
    CHECK_THROWS_AS(read_grid_path_csv(bad), std::invalid_argument);
}

TEST_CASE("grid time is index-scaled") {
    GridPath p(0.5, 0.1, 1001, 1);
    CHECK(p.time(1000) == doctest::Approx(0.5 + 100.0).epsilon(1e-15));
    CHECK(p.index_of(p.time(731)) == 731);
    CHECK_THROWS_AS(p.index_of(0.5 + 731 * 0.1 + 0.03), std::domain_error);
}
