#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seirs/cli.hpp"
#include "seirs/delay_margin.hpp"
#include "seirs/equilibria.hpp"
#include "seirs/errors.hpp"
#include "seirs/integrators.hpp"
#include "seirs/linear_stability.hpp"
#include "seirs/sde.hpp"

namespace py = pybind11;
using namespace seirs;

namespace {

py::array_t<double> states_array(const Trajectory& t) {
  py::array_t<double> out({static_cast<py::ssize_t>(t.size()), py::ssize_t{4}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto row = t.states[k].as_array();
    for (py::ssize_t j = 0; j < 4; ++j) v(k, j) = row[j];
  }
  return out;
}

py::dict state_dict(const State& x) {
  py::dict d;
  d["s"] = x.s;
  d["e"] = x.e;
  d["i"] = x.i;
  d["r"] = x.rcv;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SEIRS epidemic model with latency delay";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<NoCrossingError>(m, "NoCrossingError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<Params>(m, "Params")
      .def(py::init([](double beta, double mu, double gamma, double k_r, double r, double epsilon) {
             return Params{beta, mu, gamma, k_r, r, epsilon};
           }),
           py::arg("beta"), py::arg("mu"), py::arg("gamma"), py::arg("k_r"), py::arg("r") = 0.0,
           py::arg("epsilon") = 0.0)
      .def_readwrite("beta", &Params::beta)
      .def_readwrite("mu", &Params::mu)
      .def_readwrite("gamma", &Params::gamma)
      .def_readwrite("k_r", &Params::k_r)
      .def_readwrite("r", &Params::r)
      .def_readwrite("epsilon", &Params::epsilon)
      .def(py::self == py::self)
      .def("__repr__", [](const Params& p) {
        return "Params(beta=" + cli::format_shortest(p.beta) + ", mu=" + cli::format_shortest(p.mu) +
               ", gamma=" + cli::format_shortest(p.gamma) + ", k_r=" + cli::format_shortest(p.k_r) +
               ", r=" + cli::format_shortest(p.r) + ", epsilon=" + cli::format_shortest(p.epsilon) + ")";
      });

  py::class_<State>(m, "State")
      .def(py::init(&make_state), py::arg("s"), py::arg("e"), py::arg("i"), py::arg("r"))
      .def_readonly("s", &State::s)
      .def_readonly("e", &State::e)
      .def_readonly("i", &State::i)
      .def_readonly("r", &State::rcv)
      .def("sum", &State::sum)
      .def("as_tuple", [](const State& x) { return py::make_tuple(x.s, x.e, x.i, x.rcv); })
      .def(py::self == py::self);

  py::class_<InitialCondition>(m, "InitialCondition")
      .def(py::init(&make_initial_condition), py::arg("e0"), py::arg("s0"), py::arg("i0"),
           py::arg("r0"))
      .def_readonly("e0", &InitialCondition::e0)
      .def_readonly("s0", &InitialCondition::s0)
      .def_readonly("i0", &InitialCondition::i0)
      .def_readonly("r0", &InitialCondition::r0);

  m.def("validate_params", [](const Params& p) {
    const auto rep = validate_params(p);
    return py::make_tuple(rep.valid, rep.violations);
  });
  m.def("basic_reproduction_number", &basic_reproduction_number);
  m.def("coexistence_equilibrium", &coexistence_equilibrium);
  m.def("equilibrium_residual", &equilibrium_residual);

  m.def("integrate_ode", [](const Params& p, const State& x0, double t_end, double h) {
    const auto t = integrate_ode(p, x0, t_end, h);
    return py::make_tuple(py::array(py::cast(t.times)), states_array(t));
  });
  m.def(
      "integrate_dde",
      [](const Params& p, const InitialCondition& ic, double t_end, double h) {
        const auto t = integrate_dde(p, ic, t_end, h);
        return py::make_tuple(py::array(py::cast(t.times)), states_array(t));
      },
      py::arg("p"), py::arg("ic"), py::arg("t_end"), py::arg("h"));
  m.def(
      "integrate_dde_cascade",
      [](const Params& p, const InitialCondition& ic, double t_end, int quad_n) {
        const auto t = integrate_dde_cascade(p, ic, t_end, quad_n);
        return py::make_tuple(py::array(py::cast(t.times)), states_array(t));
      },
      py::arg("p"), py::arg("ic"), py::arg("t_end"), py::arg("quad_n") = 50);

  m.def("free_disease_eigenvalues", &free_disease_eigenvalues_closed_form);
  m.def("routh_hurwitz_coexistence", [](const Params& p) {
    const auto v = routh_hurwitz_coexistence(p);
    py::list criteria;
    for (const auto& c : v.criteria) criteria.append(py::make_tuple(c.condition, c.value, c.satisfied));
    return py::make_tuple(std::string(to_string(v.verdict)), criteria);
  });

  m.def("deg2_crossing", [](const Params& p) {
    const auto c = deg2_crossing(char_poly_delay_free(p));
    py::dict d;
    d["omega"] = c.omega;
    d["theta"] = c.theta;
    d["r_star"] = c.r_star;
    d["residual"] = c.residual;
    return d;
  });
  m.def("free_disease_margin", py::overload_cast<const Params&>(&free_disease_margin));
  m.def("deg3_crossing", [](const Params& p) -> py::object {
    const auto d = deg3_crossing(char_poly_delay_coexistence(p));
    if (!d.report) return py::none();
    py::dict out;
    out["omega"] = d.report->omega;
    out["theta"] = d.report->theta;
    out["r_star"] = d.report->r_star;
    out["residual"] = d.report->residual;
    return out;
  });

  m.def(
      "simulate_sde",
      [](const Params& p, const InitialCondition& ic, double t_end, double h, std::uint64_t seed,
         std::uint64_t replica) {
        const auto t = simulate_sde(p, ic, t_end, h, Seed{seed}, replica);
        return py::make_tuple(py::array(py::cast(t.times)), states_array(t));
      },
      py::arg("p"), py::arg("ic"), py::arg("t_end"), py::arg("h"), py::arg("seed"),
      py::arg("replica") = 0);
  m.def(
      "ensemble",
      [](const Params& p, const InitialCondition& ic, double t_end, double h, std::size_t n_rep,
         std::uint64_t seed, const std::vector<double>& rho_grid, unsigned threads) {
        const auto s = ensemble(p, ic, t_end, h, n_rep, Seed{seed}, rho_grid, threads);
        py::dict d;
        d["sup_deviations"] = py::array(py::cast(s.sup_deviations));
        d["mean_final"] = state_dict(s.mean_final);
        py::list tail;
        for (const auto& t : s.tail) tail.append(py::make_tuple(t.rho, t.probability, t.exceedances));
        d["tail"] = tail;
        return d;
      },
      py::arg("p"), py::arg("ic"), py::arg("t_end"), py::arg("h"), py::arg("n_rep"),
      py::arg("seed"), py::arg("rho_grid") = std::vector<double>{}, py::arg("threads") = 0u);

  m.def("lyapunov_condition", &lyapunov_condition);
  m.def("lyapunov_certificate", [](const Params& p) {
    const auto c = lyapunov_certificate(p);
    py::dict d;
    d["v2"] = c.v2;
    d["v3"] = c.v3;
    d["lambda1_sq"] = c.lambda1_sq;
    d["lambda3_sq"] = c.lambda3_sq;
    d["alpha0"] = c.alpha0;
    d["inequalities"] = c.inequalities;
    d["lv_bound"] = c.lv_bound;
    d["holds"] = c.holds;
    return d;
  });

  m.def(
      "run",
      [](const std::string& command, const std::string& config_text) {
        return cli::run(command, cli::parse_config(config_text)).report.render();
      },
      py::arg("command"), py::arg("config_text"),
      "Runs a CLI command on a configuration document and returns the report text.");
}
