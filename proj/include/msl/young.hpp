#pragma once

#include <Eigen/Dense>

#include "msl/grid_path.hpp"
#include "msl/step_function.hpp"

namespace msl {

struct YoungConstant {
    double mu = 0.0;
    double nu = 0.0;
    double value = 0.0;  // (1 - 2^{1-(mu+nu)})^{-1}, >= 1
};

// Love-Young sewing constant; requires mu, nu in (0,1) with mu + nu > 1.
YoungConstant young_constant(double mu, double nu);

// Left-point Riemann-Stieltjes sum over grid cells in [a,b].
// Shapes: scalar f scales dg; f.dim == g.dim pairs as a dot product (scalar
// result); f.dim == p*g.dim treats f rows as a p x g.dim matrix per node.
Eigen::VectorXd young_integral(const GridPath& f, const GridPath& g, double a, double b);

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    bool informational = false;  // set for vector-valued checks, reported but not hard
};

// |integral f dg| against K_{mu,nu} ||g||_mu (||f||_inf (b-a)^mu + ||f||_nu (b-a)^{mu+nu}),
// all seminorms taken over grid nodes in [a,b].
BoundReport young_bound(const GridPath& f, const GridPath& g, double a, double b, double mu,
                        double nu);

// Exact double integral of phi(t,s) = H(2H-1)|t-s|^{2H-2} over [a,b] x [c,d].
double phi_box_integral(double a, double b, double c, double d, HurstParam H);

// <f,g>_H for scalar step functions, evaluated with the exact piecewise
// antiderivative of phi.
double fractional_inner_product(const StepFunction& f, const StepFunction& g, HurstParam H);

// L2[0,T] inner product of scalar step functions (closed form).
double l2_inner_product(const StepFunction& f, const StepFunction& g);

// Direction in the product space: l fBm slots followed by m Wiener slots.
struct MixedDirection {
    std::vector<StepFunction> fbm;
    std::vector<StepFunction> wiener;
};

double mixed_inner_product(const MixedDirection& f, const MixedDirection& g, HurstParam H);

// Kernel smoothing of a scalar step function: integral of phi(s,v) h(v) dv
// over the support of h.
double kernel_smooth(const StepFunction& h, double s, HurstParam H);

// Covariance-embedded shift <1_[0,u), h>_H; the path direction along which the
// driver is perturbed so that pathwise derivatives pair with the inner product.
double cm_shift_value(const StepFunction& h, double u, HurstParam H);

}  // namespace msl
