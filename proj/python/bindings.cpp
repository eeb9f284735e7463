#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bec/config.hpp"
#include "bec/functionals.hpp"
#include "bec/lab.hpp"
#include "bec/regularization.hpp"
#include "bec/runner.hpp"
#include "bec/stepper.hpp"

namespace py = pybind11;
using namespace bec;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

RawParams raw_from(const py::dict& d) {
  RawParams raw;
  for (const auto& [key, value] : d) {
    const auto k = key.cast<std::string>();
    if (k == "n") raw.n = value.cast<double>();
    else if (k == "alpha") raw.alpha = value.cast<double>();
    else if (k == "beta") raw.beta = value.cast<double>();
    else if (k == "gamma") raw.gamma = value.cast<double>();
    else if (k == "L") raw.L = value.cast<double>();
    else if (k == "eps") raw.eps = value.cast<double>();
    else if (k == "k") raw.k = value.cast<double>();
    else if (k == "N") raw.N = value.cast<int>();
    else if (k == "eps_star") raw.eps_star = value.cast<double>();
    else throw py::key_error("unknown parameter '" + k + "'");
  }
  return raw;
}

py::dict stop_dict(const StopEvent& s) {
  py::dict d;
  d["kind"] = to_string(s.kind);
  d["t_event"] = s.t_event;
  d["detail"] = s.detail;
  return d;
}

py::dict diagnostics_dict(const std::vector<DiagnosticsRecord>& records) {
  std::vector<double> t, mass, energy, sup, bound, holder, dead, kin, ent;
  std::vector<std::vector<double>> diss(5);
  for (const auto& r : records) {
    t.push_back(r.t);
    mass.push_back(r.mass_beta);
    energy.push_back(r.grad_energy);
    for (int k = 0; k < 5; ++k) diss[k].push_back(r.dissipation[k]);
    sup.push_back(r.sup_u);
    bound.push_back(r.sup_bound);
    holder.push_back(r.holder_C);
    dead.push_back(r.deadcore);
    kin.push_back(r.kinetic_energy);
    ent.push_back(r.entropy);
  }
  py::dict d;
  d["t"] = to_array(t);
  d["mass_beta"] = to_array(mass);
  d["grad_energy"] = to_array(energy);
  for (int k = 0; k < 5; ++k) d[("diss" + std::to_string(k + 1)).c_str()] = to_array(diss[k]);
  d["sup_u"] = to_array(sup);
  d["sup_bound"] = to_array(bound);
  d["holder_C"] = to_array(holder);
  d["deadcore"] = to_array(dead);
  d["energy"] = to_array(kin);
  d["entropy"] = to_array(ent);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simulator and verification lab for the regularized condensation equation";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::list names;
      for (const auto& v : e.violations()) names.append(v.name);
      py::object type = py::module_::import("becsim._core").attr("ValidationError");
      py::object err = type(e.what());
      err.attr("violations") = names;
      PyErr_SetObject(type.ptr(), err.ptr());
    }
  });

  m.def("critical_polynomial", &critical_polynomial, py::arg("n"));
  m.def("nstar_root", &nstar_root);
  m.def("holder_exponents", &holder_exponents, py::arg("gamma"));
  m.def("lambda_lower", &lambda_lower, py::arg("eps"), py::arg("L"));

  py::class_<Params>(m, "Params")
      .def_property_readonly("n", &Params::n)
      .def_property_readonly("alpha", &Params::alpha)
      .def_property_readonly("beta", &Params::beta)
      .def_property_readonly("gamma", &Params::gamma)
      .def_property_readonly("L", &Params::L)
      .def_property_readonly("eps", &Params::eps)
      .def_property_readonly("k", &Params::k)
      .def_property_readonly("N", &Params::N)
      .def_property_readonly("eps0", &Params::eps0)
      .def_property_readonly("eps_star", &Params::eps_star)
      .def_property_readonly("nstar", &Params::nstar)
      .def_property_readonly("theta", &Params::theta)
      .def_property_readonly("theta_time", &Params::theta_time)
      .def("with_eps", &Params::with_eps, py::arg("eps"));
  m.def(
      "validate", [](const py::dict& d) { return validate(raw_from(d)); }, py::arg("params"),
      "Validates a dict of parameters; raises ValidationError with a .violations list.");

  py::class_<Grid>(m, "Grid")
      .def(py::init(&Grid::build), py::arg("N"), py::arg("L") = 1.0, py::arg("p") = 1.0)
      .def_property_readonly("cells", &Grid::cells)
      .def_property_readonly("x", [](const Grid& g) { return to_array(g.x()); })
      .def_property_readonly("weights", [](const Grid& g) { return to_array(g.weights()); });

  py::class_<Model>(m, "Model")
      .def(py::init(&Model::make), py::arg("params"), py::arg("grid"))
      .def_property_readonly("grid", &Model::grid)
      .def("rhs", [](const Model& mod, const std::vector<double>& u) { return to_array(mod.rhs(u)); })
      .def("flux", [](const Model& mod, const std::vector<double>& u) { return to_array(mod.flux_values(u)); })
      .def("weighted_mass", [](const Model& mod, const std::vector<double>& u) { return mod.weighted_mass(u); })
      .def("weights", [](const Model& mod) {
        const auto& t = mod.tables();
        py::dict d;
        d["zeta"] = to_array(t.zeta);
        d["z"] = to_array(t.z);
        d["g"] = to_array(t.g);
        d["gx"] = to_array(t.gx);
        d["lambda"] = t.lambda;
        return d;
      });

  m.def(
      "run",
      [](const Model& model, const std::vector<double>& u0, double t_end, double snapshot_interval,
         double dt_init) {
        StepControl ctl;
        ctl.dt_init = dt_init;
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = run(model, u0, ctl, t_end, SnapshotPolicy{10, snapshot_interval});
        }
        py::array_t<double> states({tr.states.size(), u0.size()});
        auto view = states.mutable_unchecked<2>();
        for (std::size_t s = 0; s < tr.states.size(); ++s)
          for (std::size_t i = 0; i < u0.size(); ++i) view(s, i) = tr.states[s][i];
        py::dict d;
        d["times"] = to_array(tr.times);
        d["states"] = states;
        d["stop"] = stop_dict(tr.stop);
        d["diagnostics"] = diagnostics_dict(tr.diagnostics);
        d["accepted_steps"] = tr.accepted_steps;
        d["rejected_steps"] = tr.rejected_steps;
        return d;
      },
      py::arg("model"), py::arg("u0"), py::arg("t_end"), py::arg("snapshot_interval") = 0.0,
      py::arg("dt_init") = 1e-6);

  m.def(
      "jacobian_error",
      [](const Model& model, const std::vector<double>& u) {
        const BandMatrix band = colored_jacobian(model, u);
        const auto dense = dense_jacobian(model, u);
        const int n = model.size();
        double err = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double e = dense[static_cast<std::size_t>(i) * n + j];
            err = std::max(err, std::abs(band(i, j) - e) / std::max(std::abs(e), 1e-300));
          }
        return err;
      },
      py::arg("model"), py::arg("u"), "Max relative difference between colored and dense Jacobians.");

  m.def("ode_bound", [](double A, double c5, double c6, double n) {
    const OdeBound b = ode_bound(A, c5, c6, n);
    py::dict d;
    d["T0"] = b.T0;
    d["overflow"] = b.overflow;
    d["times"] = to_array(b.times);
    d["values"] = to_array(b.values);
    return d;
  }, py::arg("A"), py::arg("c5"), py::arg("c6"), py::arg("n"));

  m.def("exceptional_exponents", &lab::exceptional_exponents, py::arg("alpha"), py::arg("n"));
  m.def(
      "steady_residual",
      [](double sigma, const Params& p, int N, double x_cut) {
        const auto r = lab::steady_residual(sigma, lab::WeightSetting::from(p, 0.0), Grid::build(N, p.L(), 1.0), x_cut);
        py::dict d;
        d["member"] = r.member;
        d["exponent"] = r.exponent;
        d["discrete_residual"] = r.discrete_residual;
        d["consistency_error"] = r.consistency_error;
        d["closed_form_max"] = r.closed_form_max;
        return d;
      },
      py::arg("sigma"), py::arg("params"), py::arg("N"), py::arg("x_cut") = 0.1);
  m.def(
      "check_corpus",
      [](const Params& p, std::uint64_t seed, int count, std::vector<double> etas, double constant_scale) {
        const auto s = lab::WeightSetting::from(p);
        py::list out;
        const auto functions = lab::corpus(seed, count, p.L());
        for (std::size_t i = 0; i < functions.size(); ++i) {
          const auto v = lab::integrals(functions[i], s);
          for (lab::Lemma l : {lab::Lemma::L2, lab::Lemma::L3, lab::Lemma::L4, lab::Lemma::L6, lab::Lemma::Inter})
            for (double eta : etas) {
              const auto r = lab::check_inequality(l, v, s, eta, constant_scale);
              out.append(py::make_tuple(i, lab::to_string(l), eta, r.lhs, r.rhs, r.pass));
            }
        }
        return out;
      },
      py::arg("params"), py::arg("seed") = 1, py::arg("count") = 10, py::arg("etas") = std::vector<double>{0.1, 0.5, 0.9},
      py::arg("constant_scale") = 1.0,
      "Rows (function, lemma, eta, lhs, rhs, pass) over a seeded corpus.");

  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_path, const std::string& out_dir) {
        py::gil_scoped_release release;
        return run_command_file(command, config_path, out_dir);
      },
      py::arg("command"), py::arg("config_path"), py::arg("out_dir") = "",
      "Runs a CLI subcommand; returns its exit code.");
  m.attr("__version__") = code_version();
}
