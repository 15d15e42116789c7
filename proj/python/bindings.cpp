#include "friction/constants.hpp"
#include "friction/dispersive.hpp"
#include "friction/errors.hpp"
#include "friction/kernels.hpp"
#include "friction/model.hpp"
#include "friction/radial.hpp"
#include "friction/sim.hpp"
#include "friction/version.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace friction;

namespace {

std::vector<double> real_parts(const KernelTable& t) { return t.real(); }

py::dict series_dict(const TimeSeries& s) {
    std::vector<double> px, py_, pz, x, y, z;
    for (std::size_t i = 0; i < s.size(); ++i) {
        px.push_back(s.P[i][0]);
        py_.push_back(s.P[i][1]);
        pz.push_back(s.P[i][2]);
        x.push_back(s.X[i][0]);
        y.push_back(s.X[i][1]);
        z.push_back(s.X[i][2]);
    }
    py::dict d;
    d["t"] = s.t;
    d["px"] = px;
    d["py"] = py_;
    d["pz"] = pz;
    d["pabs"] = s.pabs;
    d["x"] = x;
    d["y"] = y;
    d["z"] = z;
    d["energy"] = s.energy;
    d["splash"] = s.splash;
    d["splash_comoving"] = s.splash_comoving;
    d["mu"] = s.mu;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical core: Omega integrals, memory kernels, dispersive decay and the box simulator";
    m.attr("__version__") = kVersion;

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<GridError>(m, "GridError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    (void)numerical;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double M, double g, double rho0, double g_max) {
                 ModelParams p{M, g, rho0, g_max};
                 p.validate();
                 return p;
             }),
             py::arg("M") = 10.0, py::arg("g") = 0.05, py::arg("rho0") = 1.0, py::arg("g_max") = 0.1)
        .def_readwrite("M", &ModelParams::M)
        .def_readwrite("g", &ModelParams::g)
        .def_readwrite("rho0", &ModelParams::rho0)
        .def_readwrite("g_max", &ModelParams::g_max)
        .def_property_readonly("Z", &ModelParams::Z);

    py::class_<RadialPotential>(m, "RadialPotential")
        .def_readonly("sigma", &RadialPotential::sigma)
        .def("value", &RadialPotential::value)
        .def("hat", &RadialPotential::hat)
        .def("integral", &RadialPotential::integral);
    m.def("make_default_potential", [](double sigma) { return make_default_potential(sigma); }, py::arg("sigma") = 1.0);

    py::class_<constants::OmegaEvaluation>(m, "OmegaEvaluation")
        .def_readonly("delta", &constants::OmegaEvaluation::delta)
        .def_readonly("omega1", &constants::OmegaEvaluation::omega1)
        .def_readonly("omega2", &constants::OmegaEvaluation::omega2)
        .def_readonly("omega", &constants::OmegaEvaluation::omega)
        .def_readonly("direct", &constants::OmegaEvaluation::direct)
        .def_readonly("quad_error", &constants::OmegaEvaluation::quad_error)
        .def_readonly("closed_form", &constants::OmegaEvaluation::closed_form)
        .def_readonly("deviation", &constants::OmegaEvaluation::deviation);
    m.def("omega", [](double d, int nodes) { return constants::omega(d, nodes); }, py::arg("delta"),
          py::arg("nodes") = constants::kDefaultOmegaNodes);
    m.def("delta_star", [](double tol) { return constants::delta_star(tol); }, py::arg("tol") = 1e-6);
    m.def("n_zero", &constants::n_zero, py::arg("delta"));
    m.def("fresnel_constant", [](double X) {
        const auto f = constants::fresnel_constant(X);
        return py::make_tuple(f.cos_integral, f.sin_integral, f.truncation);
    }, py::arg("cutoff") = 20.0);
    m.def("convolution_bound", [](double delta, double t_max) {
        const auto r = constants::convolution_bound_check(delta, t_max);
        py::dict d;
        d["t"] = r.t;
        d["integral"] = r.integral;
        d["scaled"] = r.scaled;
        d["sup_scaled"] = r.sup_scaled;
        d["last_decade_slope"] = r.last_decade_slope;
        d["integrand_nonnegative"] = r.integrand_nonnegative;
        return d;
    }, py::arg("delta") = 0.6, py::arg("t_max") = 1e4);

    m.def("g_function", &g_function, py::arg("k"), py::arg("params"), py::arg("W"));
    m.def("f_function", [](double t, const ModelParams& p, const RadialPotential& W) { return f_function(t, p, W).value; },
          py::arg("t"), py::arg("params"), py::arg("W"));
    m.def("kernel_fourier",
          [](const std::vector<double>& t, const ModelParams& p, const RadialPotential& W) {
              return real_parts(k_kernel_fourier(t, p, W));
          },
          py::arg("t"), py::arg("params"), py::arg("W"));
    m.def("kernel_volterra",
          [](double dt, double t_max, const ModelParams& p, const RadialPotential& W) {
              const auto K = k_kernel_volterra(dt, t_max, p, W);
              return py::make_tuple(K.abscissae, K.real());
          },
          py::arg("dt"), py::arg("t_max"), py::arg("params"), py::arg("W"));
    m.def("kernel_tail_constant", &kernel_tail_constant);
    m.def("f_tail_constant", &f_tail_constant);

    m.def("bar_beta",
          [](const RadialPotential& W, double g, double rho0, const std::vector<double>& r) {
              const auto b = bar_beta(W.profile, g, rho0);
              std::vector<double> out;
              for (double x : r) out.push_back(b(x));
              return out;
          },
          py::arg("W"), py::arg("g"), py::arg("rho0"), py::arg("r"));

    m.def("propagator_suite", [](const ModelParams& p, const RadialPotential& W) {
        py::list rows;
        for (const auto& r : verify_propagator_suite(p, W)) {
            py::dict d;
            d["tag"] = r.tag;
            d["expected"] = r.expected;
            d["exponent"] = r.fit.exponent;
            d["weight_power"] = r.weight_power;
            d["times"] = r.trace.times;
            d["norms"] = r.trace.weighted_norms;
            d["pass"] = r.pass;
            rows.append(d);
        }
        return rows;
    }, py::arg("params"), py::arg("W"));

    m.def("simulate",
          [](const ModelParams& p, const RadialPotential& W, int n, double L, double absorber_width, double dt,
             double t_max, int sample_every, std::vector<double> p0, double beta_amplitude) {
              if (p0.size() != 3) throw ParameterError("p0 needs three components");
              BoxGrid g;
              g.n = n;
              g.L = L;
              g.absorber_width = absorber_width;
              SimOptions o;
              o.dt = dt;
              o.t_max = t_max;
              o.sample_every = sample_every;
              InitialData d;
              d.P0 = {p0[0], p0[1], p0[2]};
              d.beta0.amplitude = beta_amplitude;
              RunResult run;
              {
                  py::gil_scoped_release release;
                  BoxSimulator sim(p, W, g, o);
                  run = sim.run(d);
              }
              py::dict out = series_dict(run.series);
              out["status"] = run.status;
              out["steps"] = run.steps;
              return out;
          },
          py::arg("params"), py::arg("W"), py::arg("n") = 32, py::arg("L") = 20.0, py::arg("absorber_width") = 3.0,
          py::arg("dt") = 0.01, py::arg("t_max") = 1.0, py::arg("sample_every") = 10,
          py::arg("p0") = std::vector<double>{0.05, 0.0, 0.0}, py::arg("beta_amplitude") = 1e-3);
}
