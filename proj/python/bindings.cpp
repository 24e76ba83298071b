#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oob/analysis.hpp"
#include "oob/brownian.hpp"
#include "oob/optimizer.hpp"

namespace py = pybind11;

namespace {

std::vector<oob::TimeValue> to_points(const std::vector<std::pair<double, double>>& pts) {
  std::vector<oob::TimeValue> out;
  out.reserve(pts.size());
  for (const auto& [t, w] : pts) out.push_back({t, w});
  return out;
}

std::vector<std::pair<double, double>> from_points(const std::vector<oob::TimeValue>& pts) {
  std::vector<std::pair<double, double>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.t, p.w);
  return out;
}

}  // namespace

PYBIND11_MODULE(_oob, m) {
  m.doc() = "Optimistic optimization of a lazily sampled Brownian motion on [0, 1]";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<oob::RandomSource>(m, "RandomSource")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_property_readonly("seed", &oob::RandomSource::seed)
      .def("uniform", &oob::RandomSource::uniform)
      .def("gaussian", &oob::RandomSource::gaussian);

  m.def("derive_seed", &oob::derive_seed, py::arg("seed"), py::arg("index"));

  py::class_<oob::BrownianPath>(m, "BrownianPath")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("evaluate", &oob::BrownianPath::evaluate, py::arg("t"))
      .def("evaluations", [](const oob::BrownianPath& p) { return from_points(p.evaluation_list()); })
      .def_property_readonly("seed", &oob::BrownianPath::seed)
      .def("rng", &oob::BrownianPath::rng, py::return_value_policy::reference_internal)
      .def("__len__", &oob::BrownianPath::size);

  m.def("bridge_max_exceed_prob", &oob::bridge_max_exceed_prob, py::arg("a"), py::arg("b"),
        py::arg("wa"), py::arg("wb"), py::arg("x"));
  m.def("bridge_max_from_uniform", &oob::bridge_max_from_uniform, py::arg("u"), py::arg("a"),
        py::arg("b"), py::arg("wa"), py::arg("wb"));
  m.def("bridge_max_sample", &oob::bridge_max_sample, py::arg("rng"), py::arg("a"), py::arg("b"),
        py::arg("wa"), py::arg("wb"));

  m.def("eta", &oob::eta, py::arg("epsilon"), py::arg("delta"));
  m.def("ucb", &oob::ucb, py::arg("wa"), py::arg("wb"), py::arg("epsilon"), py::arg("h"));
  m.def("compute_h_max", &oob::compute_h_max, py::arg("epsilon"));

  py::class_<oob::RunResult>(m, "RunResult")
      .def_readonly("epsilon", &oob::RunResult::epsilon)
      .def_readonly("t_hat", &oob::RunResult::t_hat)
      .def_readonly("m_hat", &oob::RunResult::m_hat)
      .def_readonly("n_evals", &oob::RunResult::n_evals)
      .def_readonly("h_max", &oob::RunResult::h_max)
      .def_readonly("seed", &oob::RunResult::seed)
      .def_property_readonly("trace", [](const oob::RunResult& r) { return from_points(r.trace); })
      .def("__eq__", [](const oob::RunResult& a, const oob::RunResult& b) { return a == b; })
      .def("__repr__", [](const oob::RunResult& r) {
        return "RunResult(epsilon=" + std::to_string(r.epsilon) +
               ", n_evals=" + std::to_string(r.n_evals) + ", m_hat=" + std::to_string(r.m_hat) +
               ")";
      });

  m.def("run_oob", &oob::run_oob, py::arg("epsilon"), py::arg("seed"));
  m.def(
      "run_oob_on_path",
      [](double epsilon, oob::BrownianPath& path) { return oob::run_oob_on_path(epsilon, path); },
      py::arg("epsilon"), py::arg("path"));

  py::class_<oob::VerificationReport>(m, "VerificationReport")
      .def_readonly("suite", &oob::VerificationReport::suite)
      .def_readonly("trials", &oob::VerificationReport::trials)
      .def_readonly("violations", &oob::VerificationReport::violations)
      .def_readonly("empirical_rate", &oob::VerificationReport::empirical_rate)
      .def_readonly("bound", &oob::VerificationReport::bound)
      .def_readonly("wilson_upper_95", &oob::VerificationReport::wilson_upper_95)
      .def_readonly("passed", &oob::VerificationReport::passed)
      .def_property_readonly("metadata", [](const oob::VerificationReport& r) {
        py::dict d;
        for (const auto& [k, v] : r.metadata) d[py::str(k)] = v;
        return d;
      });

  m.def(
      "conditional_max_sample",
      [](const std::vector<std::pair<double, double>>& evaluations, oob::RandomSource& rng) {
        return oob::conditional_max_sample(to_points(evaluations), rng);
      },
      py::arg("evaluations"), py::arg("rng"));
  m.def("pac_estimate", &oob::pac_estimate, py::arg("epsilon"), py::arg("runs"),
        py::arg("draws_per_run"), py::arg("seed"));
  m.def(
      "near_optimal_count",
      [](const std::vector<double>& grid, double m_ref, double eta) {
        return oob::near_optimal_count(grid, m_ref, eta).count;
      },
      py::arg("grid_values"), py::arg("m_ref"), py::arg("eta"));
  m.def("lemma3_mc", &oob::lemma3_mc, py::arg("h"), py::arg("eta"), py::arg("trials"),
        py::arg("oracle_depth"), py::arg("seed"));
  m.def("event_c_check", &oob::event_c_check, py::arg("epsilon"), py::arg("check_depth"),
        py::arg("trials"), py::arg("seed"));
  m.def("uniform_grid_baseline", &oob::uniform_grid_baseline, py::arg("n"), py::arg("seed"));
  m.def(
      "baseline_separation",
      [](const std::vector<double>& epsilons, std::uint64_t trials, std::uint64_t seed,
         double min_final_ratio) {
        return oob::baseline_separation(epsilons, trials, seed, min_final_ratio);
      },
      py::arg("epsilons"), py::arg("trials"), py::arg("seed"), py::arg("min_final_ratio") = 3.0);
}
