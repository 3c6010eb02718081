#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace msl {

// Declared supremum bounds for a coefficient triple; these back the pathwise
// estimates, so they must dominate the true suprema.
struct CoefficientBounds {
    double a_inf = 0.0;
    double b_inf = 0.0;
    double c_inf = 0.0;
    double da_inf = 0.0;
    double db_inf = 0.0;
    double dc_inf = 0.0;
    double ddc_inf = 0.0;
};

// The triple (a, b, c) with exact Jacobians. jac_a(x) has row i equal to the
// gradient of a_i; jac_b(x)[j] and jac_c(x)[k] are d x d matrices whose row i
// is the gradient of b_{i,j} resp. c_{i,k}.
struct CoefficientSet {
    std::string name;
    int d = 0, m = 0, l = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> a;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> b;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> c;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_a;
    std::function<std::vector<Eigen::MatrixXd>(const Eigen::VectorXd&)> jac_b;
    std::function<std::vector<Eigen::MatrixXd>(const Eigen::VectorXd&)> jac_c;
    CoefficientBounds bounds;
};

struct BoundsProbe {
    bool ok = true;
    double worst_excess = 0.0;  // largest sampled value minus its declared bound
    std::string detail;
};

// Samples |a|, |b|, |c| and Jacobian norms at random points and compares them
// with the declared bounds.
BoundsProbe probe_coefficient_bounds(const CoefficientSet& coeffs, int points, std::uint64_t seed);

struct JacobianProbe {
    bool ok = true;
    double max_rel_err = 0.0;
};

// Central finite differences of a, b, c against the declared Jacobians.
JacobianProbe probe_jacobians(const CoefficientSet& coeffs, int points, std::uint64_t seed,
                              double rel_tol);

// Constant coefficient maps with zero Jacobians and exact declared bounds.
CoefficientSet make_constant_coefficients(const Eigen::VectorXd& a0, const Eigen::MatrixXd& b0,
                                          const Eigen::MatrixXd& c0);

const CoefficientSet& model_zoo(const std::string& name);
std::vector<std::string> model_zoo_names();

}  // namespace msl
