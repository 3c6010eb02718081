#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace msl {

// Hurst index restricted to the long-memory regime; boundary values rejected.
class HurstParam {
  public:
    explicit HurstParam(double h) : h_(h) {
        if (!(h > 0.5) || !(h < 1.0))
            throw std::domain_error("HurstParam: H must lie strictly in (1/2, 1), got " +
                                    std::to_string(h));
    }
    double value() const { return h_; }
    double two_h() const { return 2.0 * h_; }

  private:
    double h_;
};

// Values of a vector-valued process on a uniform time grid. Node times are
// index-scaled (t0 + k*dt), never accumulated, so they carry no summation drift.
struct GridPath {
    double t0 = 0.0;
    double dt = 0.0;
    int dim = 0;
    std::vector<double> values;  // (steps+1) x dim, row-major

    GridPath() = default;
    GridPath(double t0_, double dt_, int nodes, int dim_)
        : t0(t0_), dt(dt_), dim(dim_), values(static_cast<std::size_t>(nodes) * dim_, 0.0) {
        if (nodes < 2) throw std::invalid_argument("GridPath: need at least 2 grid nodes");
        if (!(dt_ > 0.0)) throw std::invalid_argument("GridPath: dt must be positive");
        if (dim_ < 1) throw std::invalid_argument("GridPath: dimension must be >= 1");
    }

    int nodes() const { return static_cast<int>(values.size()) / dim; }
    int steps() const { return nodes() - 1; }
    double time(int k) const { return t0 + static_cast<double>(k) * dt; }
    double end_time() const { return time(steps()); }

    double& at(int k, int c) { return values[static_cast<std::size_t>(k) * dim + c]; }
    double at(int k, int c) const { return values[static_cast<std::size_t>(k) * dim + c]; }
    const double* node_ptr(int k) const { return values.data() + static_cast<std::size_t>(k) * dim; }
    double* node_ptr(int k) { return values.data() + static_cast<std::size_t>(k) * dim; }

    Eigen::Map<const Eigen::VectorXd> node(int k) const {
        return Eigen::Map<const Eigen::VectorXd>(node_ptr(k), dim);
    }
    void set_node(int k, const Eigen::VectorXd& v) {
        Eigen::Map<Eigen::VectorXd>(node_ptr(k), dim) = v;
    }

    // Maps a time to its grid index; off-grid times are a domain error.
    int index_of(double t, const char* what = "time") const {
        const double pos = (t - t0) / dt;
        const int k = static_cast<int>(std::lround(pos));
        if (k < 0 || k > steps() || std::abs(t - time(k)) > 1e-9 * std::max(1.0, std::abs(t)))
            throw std::domain_error(std::string(what) + " " + std::to_string(t) +
                                    " does not lie on the grid");
        return k;
    }

    // Largest index with time(k) <= t (clamped to the grid).
    int floor_index(double t) const {
        const double pos = (t - t0) / dt;
        int k = static_cast<int>(std::floor(pos + 1e-12));
        return std::max(0, std::min(k, steps()));
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void require_same_grid(const GridPath& other, const char* what) const {
        const bool ok = other.nodes() == nodes() && std::abs(other.t0 - t0) <= 1e-12 &&
                        std::abs(other.dt - dt) <= 1e-12 * dt;
        if (!ok) throw std::invalid_argument(std::string(what) + ": paths must share the grid");
    }
};

}  // namespace msl
