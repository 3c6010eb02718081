#pragma once

#include <cstdint>

#include "msl/grid_path.hpp"

namespace msl {

// Covariance of one fBm component, R_H(t,s) = (t^{2H} + s^{2H} - |t-s|^{2H})/2.
double fbm_covariance(double t, double s, HurstParam H);

// l independent fBm components on [0,T] with N steps, exact covariance at the
// grid nodes. Circulant embedding of the increment covariance by default,
// dense Cholesky of the path covariance when the embedding fails.
GridPath sample_fbm(int N, double T, HurstParam H, int l, std::uint64_t seed);

// Dense-Cholesky route, exposed for tests of the fallback path.
GridPath sample_fbm_dense(int N, double T, HurstParam H, int l, std::uint64_t seed);

// m independent Wiener components: N(0, dt) increments, W_0 = 0.
GridPath sample_wiener(int N, double T, int m, std::uint64_t seed);

// Grid Holder seminorm sup |f(t)-f(s)| / |t-s|^gamma over node pairs in [a,b],
// Euclidean norm in the numerator.
double holder_seminorm(const GridPath& p, double gamma, double a, double b);

// Max Euclidean node norm over [a,b].
double sup_norm(const GridPath& p, double a, double b);

struct SmoothedDriver {
    GridPath z;     // Z^n_t = n * integral of B over [(t-1/n) v t0, t]
    GridPath zdot;  // n * (B_t - B_{(t-1/n) v t0})
    double n = 0.0;
};

// Trailing moving-average smoothing of a path. Window ends that fall between
// grid nodes are handled by exact integration of the linear interpolant.
SmoothedDriver smoothed_driver(const GridPath& b, double n);

}  // namespace msl
