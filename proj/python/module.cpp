#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "msl/coefficients.hpp"
#include "msl/csv.hpp"
#include "msl/malliavin.hpp"
#include "msl/moments.hpp"
#include "msl/paths.hpp"
#include "msl/sde.hpp"
#include "msl/young.hpp"

namespace py = pybind11;
using namespace msl;

namespace {

py::array_t<double> path_values(const GridPath& p) {
    py::array_t<double> out({p.nodes(), p.dim});
    std::copy(p.values.begin(), p.values.end(), out.mutable_data());
    return out;
}

py::array_t<double> path_times(const GridPath& p) {
    py::array_t<double> out(p.nodes());
    double* data = out.mutable_data();
    for (int k = 0; k < p.nodes(); ++k) data[k] = p.time(k);
    return out;
}

GridPath make_path(double t0, double dt, py::array_t<double, py::array::c_style> values) {
    if (values.ndim() == 1) {
        GridPath p(t0, dt, static_cast<int>(values.shape(0)), 1);
        std::copy(values.data(), values.data() + values.size(), p.values.begin());
        return p;
    }
    if (values.ndim() != 2) throw std::invalid_argument("values must be 1-D or 2-D");
    GridPath p(t0, dt, static_cast<int>(values.shape(0)), static_cast<int>(values.shape(1)));
    std::copy(values.data(), values.data() + values.size(), p.values.begin());
    return p;
}

py::dict moment_report_dict(const MomentReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["params"] = r.params;
    d["batch_estimates"] = r.batch_estimates;
    d["pooled"] = r.pooled;
    d["spread"] = r.spread;
    d["sample_count"] = r.sample_count;
    d["overflow_count"] = r.overflow_count;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical laboratory for mixed SDEs driven by a Wiener process and a "
              "fractional Brownian motion with H > 1/2.";

    py::class_<GridPath>(m, "GridPath")
        .def(py::init(&make_path), py::arg("t0"), py::arg("dt"), py::arg("values"))
        .def_readonly("t0", &GridPath::t0)
        .def_readonly("dt", &GridPath::dt)
        .def_readonly("dim", &GridPath::dim)
        .def_property_readonly("nodes", &GridPath::nodes)
        .def("times", &path_times)
        .def("array", &path_values)
        .def("to_csv",
             [](const GridPath& p) {
                 std::ostringstream os;
                 write_grid_path_csv(os, p);
                 return os.str();
             })
        .def_static("from_csv", [](const std::string& text) {
            std::istringstream is(text);
            return read_grid_path_csv(is);
        });

    py::class_<StepFunction>(m, "StepFunction")
        .def(py::init<std::vector<double>, std::vector<double>, int>(), py::arg("breakpoints"),
             py::arg("levels"), py::arg("components") = 1)
        .def_static("indicator", &StepFunction::indicator, py::arg("a"), py::arg("b"),
                    py::arg("level") = 1.0)
        .def("value_at", &StepFunction::value_at, py::arg("t"), py::arg("component") = 0);

    py::class_<CoefficientSet>(m, "CoefficientSet")
        .def_readonly("name", &CoefficientSet::name)
        .def_readonly("d", &CoefficientSet::d)
        .def_readonly("m", &CoefficientSet::m)
        .def_readonly("l", &CoefficientSet::l);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("lhs", &BoundReport::lhs)
        .def_readonly("rhs", &BoundReport::rhs)
        .def_readonly("satisfied", &BoundReport::satisfied)
        .def_readonly("informational", &BoundReport::informational);

    m.def("fbm_covariance",
          [](double t, double s, double H) { return fbm_covariance(t, s, HurstParam(H)); },
          py::arg("t"), py::arg("s"), py::arg("H"));
    m.def("alpha_max", [](double H) { return alpha_max(HurstParam(H)); }, py::arg("H"));

    m.def("sample_fbm",
          [](int N, double T, double H, int l, std::uint64_t seed) {
              return sample_fbm(N, T, HurstParam(H), l, seed);
          },
          py::arg("N"), py::arg("T"), py::arg("H"), py::arg("l") = 1, py::arg("seed") = 0);
    m.def("sample_wiener", &sample_wiener, py::arg("N"), py::arg("T"), py::arg("m") = 1,
          py::arg("seed") = 0);
    m.def("holder_seminorm", &holder_seminorm, py::arg("path"), py::arg("gamma"), py::arg("a"),
          py::arg("b"));
    m.def("sup_norm", &sup_norm, py::arg("path"), py::arg("a"), py::arg("b"));
    m.def("smoothed_driver",
          [](const GridPath& b, double n) {
              const SmoothedDriver d = smoothed_driver(b, n);
              return py::make_tuple(d.z, d.zdot);
          },
          py::arg("b"), py::arg("n"));

    m.def("young_integral", &young_integral, py::arg("f"), py::arg("g"), py::arg("a"),
          py::arg("b"));
    m.def("young_bound", &young_bound, py::arg("f"), py::arg("g"), py::arg("a"), py::arg("b"),
          py::arg("mu"), py::arg("nu"));
    m.def("young_constant", [](double mu, double nu) { return young_constant(mu, nu).value; },
          py::arg("mu"), py::arg("nu"));
    m.def("fractional_inner_product",
          [](const StepFunction& f, const StepFunction& g, double H) {
              return fractional_inner_product(f, g, HurstParam(H));
          },
          py::arg("f"), py::arg("g"), py::arg("H"));
    m.def("mixed_inner_product",
          [](const std::vector<StepFunction>& f_fbm, const std::vector<StepFunction>& f_w,
             const std::vector<StepFunction>& g_fbm, const std::vector<StepFunction>& g_w,
             double H) {
              return mixed_inner_product({f_fbm, f_w}, {g_fbm, g_w}, HurstParam(H));
          },
          py::arg("f_fbm"), py::arg("f_wiener"), py::arg("g_fbm"), py::arg("g_wiener"),
          py::arg("H"));

    m.def("model_zoo", &model_zoo, py::return_value_policy::reference, py::arg("name"));
    m.def("model_zoo_names", &model_zoo_names);

    m.def("solve_mixed", &solve_mixed, py::arg("coeffs"), py::arg("x0"), py::arg("w"),
          py::arg("b"));
    m.def("solve_smoothed", &solve_smoothed, py::arg("coeffs"), py::arg("x0"), py::arg("w"),
          py::arg("zdot"));
    m.def("pathwise_bound_check", &pathwise_bound_check, py::arg("y"), py::arg("coeffs"),
          py::arg("gamma"), py::arg("w"), py::arg("theta"), py::arg("mu"));
    m.def("convergence_study",
          [](const CoefficientSet& cs, const Eigen::VectorXd& x0, double H, double T, int N,
             const std::vector<double>& n_list, int seeds, std::uint64_t seed) {
              const ConvergenceTable t =
                  convergence_study(cs, x0, HurstParam(H), T, N, n_list, seeds, seed);
              py::list rows;
              for (const auto& r : t.rows) rows.append(py::make_tuple(r.n, r.median, r.q1, r.q3));
              return rows;
          },
          py::arg("coeffs"), py::arg("x0"), py::arg("H"), py::arg("T"), py::arg("N"),
          py::arg("n_list"), py::arg("seeds"), py::arg("seed"));

    m.def("solve_variational_fbm", &solve_variational_fbm, py::arg("coeffs"), py::arg("xn"),
          py::arg("w"), py::arg("zdot"), py::arg("n"), py::arg("s"), py::arg("q") = 0);
    m.def("duhamel_reconstruct", &duhamel_reconstruct, py::arg("coeffs"), py::arg("xn"),
          py::arg("w"), py::arg("zdot"), py::arg("n"), py::arg("s"), py::arg("q") = 0);
    m.def("solve_variational_wiener", &solve_variational_wiener, py::arg("coeffs"), py::arg("x"),
          py::arg("w"), py::arg("b"), py::arg("s"), py::arg("j") = 0);

    m.def("J_statistic", &J_statistic, py::arg("y"), py::arg("coeffs"), py::arg("w"),
          py::arg("theta"));
    m.def("estimate_exp_moment",
          [](const std::vector<double>& samples, double z, double alpha, int batches) {
              return moment_report_dict(estimate_exp_moment(samples, z, alpha, batches));
          },
          py::arg("samples"), py::arg("z"), py::arg("alpha"), py::arg("batches") = 4);
}
