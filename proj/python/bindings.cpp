#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ibnls/errors.hpp"
#include "ibnls/io.hpp"
#include "ibnls/virial.hpp"

namespace py = pybind11;
using namespace ibnls;

namespace {

// The C++ side shares grids as shared_ptr<const RadialGrid>; python holds the
// mutable-typed pointer (every bound method is const anyway).
using PyGridPtr = std::shared_ptr<RadialGrid>;

PyGridPtr unconst(const GridPtr& grid) { return std::const_pointer_cast<RadialGrid>(grid); }

RadialField field_from_array(const PyGridPtr& grid, const Eigen::VectorXcd& values) {
  return grid->make_field(values);
}

py::dict report_dict(const FunctionalReport& rep) {
  py::dict d;
  d["mass"] = rep.mass;
  d["kinetic"] = rep.kinetic;
  d["grad_sq"] = rep.grad_sq;
  d["potential"] = rep.potential;
  d["energy"] = rep.energy;
  return d;
}

SimConfig config_from_dict(const py::dict& kv) {
  std::map<std::string, std::string> flat;
  for (auto item : kv) {
    flat[py::str(item.first)] = py::str(item.second);
  }
  return sim_config_from_map(flat);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "radial numerical laboratory for the energy-critical inhomogeneous biharmonic NLS";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def_readonly("dim", &ModelParams::dim)
      .def_readonly("b", &ModelParams::b)
      .def_readonly("p", &ModelParams::p)
      .def_readonly("alpha", &ModelParams::alpha)
      .def_readonly("q", &ModelParams::q)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(N=" + std::to_string(p.dim) + ", b=" + std::to_string(p.b) + ")";
      });

  m.def("make_params", &make_params, py::arg("dim"), py::arg("b"));
  m.def("threshold_16_over_n", [](const ModelParams& params) {
    const BThresholdInfo info = threshold_16_over_n(params);
    return py::make_tuple(info.threshold, info.reachable);
  });
  m.def("unit_sphere_area", &unit_sphere_area, py::arg("dim"));

  py::class_<RadialGrid, PyGridPtr>(m, "RadialGrid")
      .def_static(
          "create",
          [](const ModelParams& params, double r_max, int n) { return unconst(RadialGrid::create(params, r_max, n)); },
          py::arg("params"), py::arg("r_max"), py::arg("n"))
      .def_property_readonly("n", &RadialGrid::n)
      .def_property_readonly("r_max", &RadialGrid::r_max)
      .def_property_readonly("h", &RadialGrid::h)
      .def_property_readonly("nodes", [](const RadialGrid& g) { return g.nodes(); })
      .def_property_readonly("weights", [](const RadialGrid& g) { return g.weights(); })
      .def("integrate", [](const RadialGrid& g, const Eigen::VectorXd& s) { return g.integrate(s); })
      .def("integrate_singular",
           [](const RadialGrid& g, const Eigen::VectorXd& s) { return g.integrate_singular(s); })
      .def("apply_laplacian",
           [](const RadialGrid& g, const Eigen::VectorXcd& f) { return g.apply_laplacian(f); })
      .def("apply_bilaplacian",
           [](const RadialGrid& g, const Eigen::VectorXcd& f) { return g.apply_bilaplacian(f); })
      .def("laplacian_eigenvalues", [](const RadialGrid& g) { return g.laplacian_eigenvalues(); });

  py::class_<RadialField>(m, "RadialField")
      .def_property_readonly("values", [](const RadialField& f) { return f.values; })
      .def_property_readonly("grid", [](const RadialField& f) { return unconst(f.grid); });

  m.def("make_field", &field_from_array, py::arg("grid"), py::arg("values"));
  m.def("report", [](const RadialField& f) { return report_dict(report(f)); });
  m.def(
      "inequality_report",
      [](const RadialField& f, double R, std::optional<double> k_opt) {
        const InequalityReport rep = inequality_report(f, R, k_opt);
        py::dict d;
        d["interp_ratio"] = rep.interp_ratio;
        d["strauss_ratio"] = rep.strauss_ratio;
        d["sobolev_ratio"] = rep.sobolev_ratio;
        return d;
      },
      py::arg("f"), py::arg("R"), py::arg("k_opt") = std::nullopt);
  m.def("critical_rescale", &critical_rescale, py::arg("f"), py::arg("lambda_"));

  py::class_<CutoffProfile>(m, "CutoffProfile")
      .def_readonly("R", &CutoffProfile::R)
      .def_readonly("phi", &CutoffProfile::phi)
      .def_readonly("delta_phi", &CutoffProfile::delta_phi)
      .def_readonly("delta2_phi", &CutoffProfile::delta2_phi)
      .def_readonly("delta3_phi", &CutoffProfile::delta3_phi)
      .def_readonly("big_phi", &CutoffProfile::big_phi)
      .def_property_readonly("dphi", [](const CutoffProfile& c) { return c.radial_derivs[0]; })
      .def_property_readonly("d2phi", [](const CutoffProfile& c) { return c.radial_derivs[1]; });

  m.def(
      "make_cutoff",
      [](const PyGridPtr& grid, double R, double joint_width) { return make_cutoff(grid, R, joint_width); },
      py::arg("grid"), py::arg("R"), py::arg("joint_width") = 0.1);
  m.def("scaling_certificate", &scaling_certificate, py::arg("R_values"), py::arg("j"),
        py::arg("joint_width") = 0.1);

  m.def("morawetz", &morawetz);
  m.def("rate_exact", &rate_exact);
  m.def("rate_localized", [](const RadialField& f, const CutoffProfile& c) {
    const VirialReport rep = rate_localized(f, c);
    py::dict d;
    d["v"] = rep.v;
    d["rate_exact"] = rep.rate_exact;
    d["rate_localized"] = rep.rate_localized;
    d["rate_bound_main"] = rep.rate_bound_main;
    d["tail_error"] = rep.tail_error;
    d["terms"] = rep.terms;
    return d;
  });
  m.def("tail_error", &tail_error);
  m.def("rate_bound", [](const RadialField& f, const CutoffProfile& c) {
    const RateBound bound = rate_bound(f, c);
    return py::make_tuple(bound.main, bound.error_budget);
  });

  py::class_<GroundStateResult>(m, "GroundStateResult")
      .def_readonly("kinetic_W", &GroundStateResult::kinetic_W)
      .def_readonly("potential_W", &GroundStateResult::potential_W)
      .def_readonly("energy_W", &GroundStateResult::energy_W)
      .def_readonly("k_opt", &GroundStateResult::k_opt)
      .def_readonly("residual", &GroundStateResult::residual)
      .def_readonly("gamma_final", &GroundStateResult::gamma_final)
      .def_readonly("iterations", &GroundStateResult::iterations)
      .def_property_readonly("W", [](const GroundStateResult& gs) { return gs.W; });

  m.def(
      "solve_ground_state",
      [](const PyGridPtr& grid, double tol, int max_iter, double seed_width) {
        GroundStateOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        opts.seed_width = seed_width;
        return solve_ground_state(grid, opts);
      },
      py::arg("grid"), py::arg("tol") = 1e-8, py::arg("max_iter") = 3000, py::arg("seed_width") = 1.0);
  m.def("weinstein", &weinstein);
  m.def("coercivity_gap", &coercivity_gap);

  m.def(
      "evolve",
      [](const py::dict& kv) {
        const SimConfig config = config_from_dict(kv);
        const TimeSeries series = evolve(config);
        const BlowupVerdict verdict = detect_blowup(series, config.growth_factor);
        const std::size_t m_rec = series.records.size();
        Eigen::VectorXd t(m_rec), mass(m_rec), energy(m_rec), kinetic(m_rec), grad_sq(m_rec), potential(m_rec),
            v_r(m_rec), rate(m_rec), dt(m_rec);
        for (std::size_t i = 0; i < m_rec; ++i) {
          const SeriesRecord& rec = series.records[i];
          t[i] = rec.t;
          mass[i] = rec.mass;
          energy[i] = rec.energy;
          kinetic[i] = rec.kinetic;
          grad_sq[i] = rec.grad_sq;
          potential[i] = rec.potential;
          v_r[i] = rec.v_r;
          rate[i] = rec.rate_localized;
          dt[i] = rec.dt;
        }
        py::dict out;
        out["t"] = t;
        out["mass"] = mass;
        out["energy"] = energy;
        out["kinetic"] = kinetic;
        out["grad_sq"] = grad_sq;
        out["potential"] = potential;
        out["V_R"] = v_r;
        out["rate_localized"] = rate;
        out["dt"] = dt;
        out["termination"] = to_string(series.termination);
        out["verdict"] = to_string(verdict.verdict);
        out["t_star_estimate"] = verdict.t_star_estimate;
        out["mass_drift"] = series.mass_drift;
        out["energy_drift"] = series.energy_drift;
        return out;
      },
      py::arg("config"));

  m.def("ode_blowup", [](double A1, double C, double t1) {
    const OdeBlowup ode = ode_blowup(A1, C, t1);
    py::dict d;
    d["t_star"] = ode.t_star;
    d["trajectory"] = ode.trajectory;
    return d;
  });

  m.def(
      "classify",
      [](const RadialField& f, const GroundStateResult& gs, bool radial) {
        const Classification cls = classify(f, gs, radial);
        py::dict d;
        d["regime"] = to_string(cls.regime);
        d["energy"] = cls.facts.energy;
        d["energy_W"] = cls.facts.energy_W;
        d["kinetic"] = cls.facts.kinetic;
        d["kinetic_W"] = cls.facts.kinetic_W;
        d["b_threshold"] = cls.facts.b_threshold;
        d["b_range_empty"] = cls.facts.b_range_empty;
        return d;
      },
      py::arg("f"), py::arg("gs"), py::arg("radial") = true);
}
