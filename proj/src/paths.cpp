#include "msl/paths.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "msl/rng.hpp"

namespace msl {

double fbm_covariance(double t, double s, HurstParam H) {
    if (t < 0.0 || s < 0.0) throw std::domain_error("fbm_covariance: times must be nonnegative");
    const double th = H.two_h();
    return 0.5 * (std::pow(t, th) + std::pow(s, th) - std::pow(std::abs(t - s), th));
}

namespace {

// Autocovariance of fractional Gaussian noise increments at lag k, step dt.
double fgn_autocov(int k, double dt, double two_h) {
    const double scale = std::pow(dt, two_h);
    if (k == 0) return scale;
    const double a = static_cast<double>(std::abs(k));
    return 0.5 * scale *
           (std::pow(a + 1.0, two_h) - 2.0 * std::pow(a, two_h) + std::pow(a - 1.0, two_h));
}

struct EmbeddingKey {
    int n;
    std::uint64_t h_bits;
    std::uint64_t dt_bits;
    bool operator<(const EmbeddingKey& o) const {
        if (n != o.n) return n < o.n;
        if (h_bits != o.h_bits) return h_bits < o.h_bits;
        return dt_bits < o.dt_bits;
    }
};

std::uint64_t bits_of(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof(u));
    return u;
}

struct Embedding {
    bool usable = false;          // eigenvalues nonnegative within tolerance
    std::vector<double> lambda;   // size 2N, clamped at 0
};

// Circulant-embedding eigenvalues, cached per (N, H, dt); guarded together with
// the FFTW planner, which is not thread-safe.
std::mutex g_fft_mutex;
std::map<EmbeddingKey, std::shared_ptr<const Embedding>> g_embeddings;
std::map<int, fftw_plan> g_c2r_plans;  // keyed by M, created with representative buffers

std::shared_ptr<const Embedding> embedding_for(int N, HurstParam H, double dt) {
    const EmbeddingKey key{N, bits_of(H.value()), bits_of(dt)};
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    auto it = g_embeddings.find(key);
    if (it != g_embeddings.end()) return it->second;

    const int M = 2 * N;
    std::vector<double> c(M);
    for (int k = 0; k <= N; ++k) c[k] = fgn_autocov(k, dt, H.two_h());
    for (int k = N + 1; k < M; ++k) c[k] = c[M - k];

    std::vector<double> in(M);
    std::vector<std::complex<double>> out(M / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(M, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
    std::copy(c.begin(), c.end(), in.begin());
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    auto emb = std::make_shared<Embedding>();
    emb->lambda.resize(M);
    double max_l = 0.0, min_l = 0.0;
    for (int j = 0; j <= M / 2; ++j) {
        const double l = out[j].real();  // symmetric input, real spectrum
        emb->lambda[j] = l;
        if (j > 0 && j < M / 2) emb->lambda[M - j] = l;
        max_l = std::max(max_l, l);
        min_l = std::min(min_l, l);
    }
    emb->usable = min_l >= -1e-8 * max_l;
    if (emb->usable)
        for (double& l : emb->lambda) l = std::max(l, 0.0);

    auto shared = std::shared_ptr<const Embedding>(emb);
    g_embeddings.emplace(key, shared);
    return shared;
}

fftw_plan c2r_plan_for(int M) {
    // Representative buffers; execution uses the new-array interface.
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    auto it = g_c2r_plans.find(M);
    if (it != g_c2r_plans.end()) return it->second;
    std::vector<std::complex<double>> in(M / 2 + 1);
    std::vector<double> out(M);
    fftw_plan plan =
        fftw_plan_dft_c2r_1d(M, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    g_c2r_plans.emplace(M, plan);
    return plan;
}

// One component of fGn by the circulant method: Hermitian spectral noise with
// weights sqrt(lambda), synthesized by a c2r transform. Covariance of the first
// N outputs is exactly the fGn autocovariance.
void sample_fgn_circulant(const Embedding& emb, GaussianStream& g, std::vector<double>& incr) {
    const int M = static_cast<int>(emb.lambda.size());
    const int half = M / 2;
    std::vector<std::complex<double>> spec(half + 1);
    const double inv_m = 1.0 / static_cast<double>(M);
    spec[0] = std::sqrt(emb.lambda[0] * inv_m) * g.next();
    spec[half] = std::sqrt(emb.lambda[half] * inv_m) * g.next();
    for (int j = 1; j < half; ++j) {
        const double w = std::sqrt(0.5 * emb.lambda[j] * inv_m);
        const double re = g.next();
        const double im = g.next();
        spec[j] = std::complex<double>(w * re, w * im);
    }
    std::vector<double> out(M);
    fftw_plan plan = c2r_plan_for(M);
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(spec.data()), out.data());
    incr.assign(out.begin(), out.begin() + M / 2);
}

void validate_sampling_args(int N, double T, int comps, const char* what) {
    if (N < 1) throw std::invalid_argument(std::string(what) + ": N must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument(std::string(what) + ": T must be positive");
    if (comps < 1) throw std::invalid_argument(std::string(what) + ": component count must be >= 1");
}

// Lower Cholesky with explicit pivot reporting.
void cholesky_in_place(std::vector<double>& a, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                sum -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
            if (i == j) {
                if (!(sum > 0.0))
                    throw std::runtime_error(
                        "fbm covariance Cholesky failed: nonpositive pivot " + std::to_string(sum) +
                        " at index " + std::to_string(i));
                a[static_cast<std::size_t>(i) * n + i] = std::sqrt(sum);
            } else {
                a[static_cast<std::size_t>(i) * n + j] = sum / a[static_cast<std::size_t>(j) * n + j];
            }
        }
        for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = 0.0;
    }
}

struct CholKey {
    int n;
    std::uint64_t h_bits;
    std::uint64_t dt_bits;
    bool operator<(const CholKey& o) const {
        if (n != o.n) return n < o.n;
        if (h_bits != o.h_bits) return h_bits < o.h_bits;
        return dt_bits < o.dt_bits;
    }
};

std::mutex g_chol_mutex;
std::map<CholKey, std::shared_ptr<const std::vector<double>>> g_chol_cache;

std::shared_ptr<const std::vector<double>> path_cholesky_for(int N, HurstParam H, double dt) {
    if (N > 8192)
        throw std::runtime_error(
            "fbm dense Cholesky fallback is capped at N = 8192 (requested N = " +
            std::to_string(N) + ")");
    const CholKey key{N, bits_of(H.value()), bits_of(dt)};
    std::lock_guard<std::mutex> lock(g_chol_mutex);
    auto it = g_chol_cache.find(key);
    if (it != g_chol_cache.end()) return it->second;

    auto mat = std::make_shared<std::vector<double>>(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            (*mat)[static_cast<std::size_t>(i) * N + j] =
                fbm_covariance((i + 1) * dt, (j + 1) * dt, H);
    cholesky_in_place(*mat, N);
    auto shared = std::shared_ptr<const std::vector<double>>(mat);
    g_chol_cache.emplace(key, shared);
    return shared;
}

}  // namespace

GridPath sample_fbm_dense(int N, double T, HurstParam H, int l, std::uint64_t seed) {
    validate_sampling_args(N, T, l, "sample_fbm");
    const double dt = T / N;
    auto chol = path_cholesky_for(N, H, dt);
    GridPath path(0.0, dt, N + 1, l);
    std::vector<double> xi(N);
    for (int q = 0; q < l; ++q) {
        GaussianStream g(substream_seed(seed, "fbm", static_cast<std::uint64_t>(q)));
        for (int i = 0; i < N; ++i) xi[i] = g.next();
        for (int i = 0; i < N; ++i) {
            double v = 0.0;
            const double* row = chol->data() + static_cast<std::size_t>(i) * N;
            for (int j = 0; j <= i; ++j) v += row[j] * xi[j];
            path.at(i + 1, q) = v;
        }
    }
    return path;
}

GridPath sample_fbm(int N, double T, HurstParam H, int l, std::uint64_t seed) {
    validate_sampling_args(N, T, l, "sample_fbm");
    const double dt = T / N;
    if (N < 2) return sample_fbm_dense(N, T, H, l, seed);

    auto emb = embedding_for(N, H, dt);
    if (!emb->usable) return sample_fbm_dense(N, T, H, l, seed);

    GridPath path(0.0, dt, N + 1, l);
    std::vector<double> incr;
    for (int q = 0; q < l; ++q) {
        GaussianStream g(substream_seed(seed, "fbm", static_cast<std::uint64_t>(q)));
        sample_fgn_circulant(*emb, g, incr);
        double acc = 0.0;
        for (int k = 0; k < N; ++k) {
            acc += incr[k];
            path.at(k + 1, q) = acc;
        }
    }
    return path;
}

GridPath sample_wiener(int N, double T, int m, std::uint64_t seed) {
    validate_sampling_args(N, T, m, "sample_wiener");
    const double dt = T / N;
    const double sd = std::sqrt(dt);
    GridPath path(0.0, dt, N + 1, m);
    for (int j = 0; j < m; ++j) {
        GaussianStream g(substream_seed(seed, "wiener", static_cast<std::uint64_t>(j)));
        double acc = 0.0;
        for (int k = 0; k < N; ++k) {
            acc += sd * g.next();
            path.at(k + 1, j) = acc;
        }
    }
    return path;
}

namespace {

std::pair<int, int> node_window(const GridPath& p, double a, double b, const char* what) {
    if (!(a <= b)) throw std::domain_error(std::string(what) + ": window must satisfy a <= b");
    const double tol = 1e-9 * std::max(1.0, std::abs(p.dt));
    const double lo = (a - p.t0) / p.dt;
    const double hi = (b - p.t0) / p.dt;
    int ia = static_cast<int>(std::ceil(lo - tol));
    int ib = static_cast<int>(std::floor(hi + tol));
    ia = std::max(ia, 0);
    ib = std::min(ib, p.steps());
    return {ia, ib};
}

}  // namespace

double holder_seminorm(const GridPath& p, double gamma, double a, double b) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("holder_seminorm: gamma must lie in (0,1)");
    auto [ia, ib] = node_window(p, a, b, "holder_seminorm");
    if (ib - ia < 1)
        throw std::domain_error("holder_seminorm: window [a,b] contains fewer than 2 grid nodes");
    const int d = p.dim;
    const int count = ib - ia + 1;
    const double* base = p.node_ptr(ia);
    double best = 0.0;
    // For each lag the time gap is constant, so a single pow per lag suffices.
    for (int lag = 1; lag < count; ++lag) {
        double max_sq = 0.0;
        if (d == 1) {
            for (int i = 0; i + lag < count; ++i) {
                const double diff = base[i + lag] - base[i];
                const double sq = diff * diff;
                if (sq > max_sq) max_sq = sq;
            }
        } else {
            for (int i = 0; i + lag < count; ++i) {
                double sq = 0.0;
                const double* x = base + static_cast<std::size_t>(i) * d;
                const double* y = x + static_cast<std::size_t>(lag) * d;
                for (int c = 0; c < d; ++c) {
                    const double diff = y[c] - x[c];
                    sq += diff * diff;
                }
                if (sq > max_sq) max_sq = sq;
            }
        }
        const double ratio = std::sqrt(max_sq) * std::pow(p.dt * lag, -gamma);
        if (ratio > best) best = ratio;
    }
    return best;
}

double sup_norm(const GridPath& p, double a, double b) {
    auto [ia, ib] = node_window(p, a, b, "sup_norm");
    if (ib < ia) throw std::domain_error("sup_norm: window [a,b] contains no grid nodes");
    double best = 0.0;
    for (int k = ia; k <= ib; ++k) {
        double sq = 0.0;
        const double* x = p.node_ptr(k);
        for (int c = 0; c < p.dim; ++c) sq += x[c] * x[c];
        if (sq > best) best = sq;
    }
    return std::sqrt(best);
}

namespace {

// Integral of the linear interpolant of component c over [t0, tau].
double prefix_integral_at(const GridPath& b, const std::vector<double>& prefix, int c, double tau) {
    if (tau <= b.t0) return 0.0;
    const int dim = b.dim;
    int j = b.floor_index(tau);
    if (j >= b.steps()) return prefix[static_cast<std::size_t>(b.steps()) * dim + c];
    const double frac = tau - b.time(j);
    if (frac <= 0.0) return prefix[static_cast<std::size_t>(j) * dim + c];
    const double bj = b.at(j, c);
    const double slope = (b.at(j + 1, c) - bj) / b.dt;
    return prefix[static_cast<std::size_t>(j) * dim + c] + frac * bj + 0.5 * slope * frac * frac;
}

double interp_value(const GridPath& b, int c, double tau) {
    if (tau <= b.t0) return b.at(0, c);
    int j = b.floor_index(tau);
    if (j >= b.steps()) return b.at(b.steps(), c);
    const double frac = (tau - b.time(j)) / b.dt;
    return (1.0 - frac) * b.at(j, c) + frac * b.at(j + 1, c);
}

}  // namespace

SmoothedDriver smoothed_driver(const GridPath& b, double n) {
    if (!(n >= 1.0)) throw std::domain_error("smoothed_driver: n must be >= 1");
    const double window = 1.0 / n;
    if (window < b.dt - 1e-12 * b.dt)
        throw std::domain_error(
            "smoothed_driver: smoothing window 1/n = " + std::to_string(window) +
            " is finer than the grid step dt = " + std::to_string(b.dt) +
            "; refine the grid so that dt <= 1/n");

    const int nodes = b.nodes();
    const int dim = b.dim;
    // Trapezoidal prefix integrals of B per component.
    std::vector<double> prefix(static_cast<std::size_t>(nodes) * dim, 0.0);
    for (int k = 1; k < nodes; ++k)
        for (int c = 0; c < dim; ++c)
            prefix[static_cast<std::size_t>(k) * dim + c] =
                prefix[static_cast<std::size_t>(k - 1) * dim + c] +
                0.5 * b.dt * (b.at(k - 1, c) + b.at(k, c));

    SmoothedDriver out;
    out.n = n;
    out.z = GridPath(b.t0, b.dt, nodes, dim);
    out.zdot = GridPath(b.t0, b.dt, nodes, dim);
    for (int k = 0; k < nodes; ++k) {
        const double t = b.time(k);
        const double lo = std::max(t - window, b.t0);
        for (int c = 0; c < dim; ++c) {
            const double full = prefix[static_cast<std::size_t>(k) * dim + c];
            out.z.at(k, c) = n * (full - prefix_integral_at(b, prefix, c, lo));
            out.zdot.at(k, c) = n * (b.at(k, c) - interp_value(b, c, lo));
        }
    }
    return out;
}

}  // namespace msl
