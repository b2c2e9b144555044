#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "uncoordsim/errors.hpp"
#include "uncoordsim/metrics.hpp"
#include "uncoordsim/runner.hpp"
#include "uncoordsim/scenario.hpp"
#include "uncoordsim/simulation.hpp"

namespace py = pybind11;
using namespace uncoordsim;

namespace {

py::dict report_to_dict(const MetricsReport& r) {
  py::dict d;
  d["delay_mean"] = r.delay_mean;
  d["delay_p95"] = r.delay_p95;
  d["delay_samples"] = r.delay_samples;
  py::list cdf;
  for (const auto& p : r.cdf) cdf.append(py::make_tuple(p.value, p.cumulative));
  d["cdf"] = cdf;
  d["traffic_bytes"] = r.traffic_bytes;
  d["traffic_rate"] = r.traffic_rate;
  d["utilization_per_executor"] = r.utilization_per_executor;
  d["utilization_mean"] = r.utilization_mean;
  d["requests_sent"] = r.requests_sent;
  d["probes_sent"] = r.probes_sent;
  d["probes_per_request"] = r.probes_per_request;
  d["generated"] = r.counts.generated;
  d["completed"] = r.counts.completed;
  d["in_flight"] = r.counts.in_flight;
  return d;
}

py::dict row_to_dict(const SummaryRow& r) {
  py::dict d;
  d["param"] = std::string(to_string(r.param));
  d["value"] = r.value;
  d["seed"] = r.seed;
  d["delay_mean"] = r.delay_mean;
  d["delay_p95"] = r.delay_p95;
  d["traffic_rate"] = r.traffic_rate;
  d["utilization_mean"] = r.utilization_mean;
  d["probes_per_request"] = r.probes_per_request;
  return d;
}

SweepSpec make_spec(const std::string& param, std::vector<double> values,
                    std::vector<std::uint64_t> seeds) {
  const auto p = sweep_param_from_string(param);
  if (!p) throw ValidationError("param", "expected \"chi\" or \"k\"");
  return SweepSpec{*p, std::move(values), std::move(seeds)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete-event simulator of uncoordinated serverless dispatch at the edge";

  auto validation_error = py::register_exception<ValidationError>(m, "ValidationError",
                                                                  PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
  (void)validation_error;

  py::class_<Scenario>(m, "Scenario")
      .def_static("from_json", &parse_scenario, py::arg("text"))
      .def_static("from_file", &load_scenario, py::arg("path"))
      .def("to_json", &to_json_text)
      .def_property_readonly("num_executors", [](const Scenario& s) { return s.executors.size(); })
      .def_property_readonly("num_clients", [](const Scenario& s) { return s.clients.size(); })
      .def_property_readonly("policy_kind",
                             [](const Scenario& s) { return std::string(to_string(s.policy.kind)); })
      .def_property_readonly("k", [](const Scenario& s) { return s.policy.k; })
      .def_property_readonly("chi", [](const Scenario& s) { return s.policy.chi; })
      .def_property_readonly("alpha", [](const Scenario& s) { return s.policy.alpha; })
      .def_property_readonly("horizon", [](const Scenario& s) { return s.horizon; })
      .def_property_readonly("warmup", [](const Scenario& s) { return s.warmup; })
      .def(
          "with_policy",
          [](Scenario s, std::optional<int> k, std::optional<double> chi,
             std::optional<double> alpha) {
            if (k) s.policy.k = *k;
            if (chi) s.policy.chi = *chi;
            if (alpha) s.policy.alpha = *alpha;
            check_invariants(s);
            return s;
          },
          py::arg("k") = py::none(), py::arg("chi") = py::none(), py::arg("alpha") = py::none(),
          "Copy with policy parameters replaced, re-validated.")
      .def(
          "latency",
          [](const Scenario& s, int client, int executor) {
            return latency(s.clients.at(static_cast<std::size_t>(client)),
                           s.executors.at(static_cast<std::size_t>(executor)), s.network);
          },
          py::arg("client"), py::arg("executor"), "One-way latency in seconds.")
      .def(
          "assign_pool",
          [](const Scenario& s, int client, int k) {
            return assign_pool(s.clients.at(static_cast<std::size_t>(client)), k, s.executors,
                               s.network);
          },
          py::arg("client"), py::arg("k"));

  m.def(
      "run_simulation",
      [](const Scenario& s, std::uint64_t seed, bool trace) {
        std::ostringstream out;
        MetricsReport report;
        {
          py::gil_scoped_release release;
          report = run_simulation(s, seed, trace ? &out : nullptr);
        }
        auto d = report_to_dict(report);
        if (trace) d["trace"] = out.str();
        return d;
      },
      py::arg("scenario"), py::arg("seed"), py::arg("trace") = false,
      "Run one replication; returns the metrics report as a dict.");

  m.def(
      "sweep",
      [](const Scenario& s, const std::string& param, std::vector<double> values,
         std::vector<std::uint64_t> seeds, unsigned threads) {
        const auto spec = make_spec(param, std::move(values), std::move(seeds));
        std::vector<SweepPoint> points;
        {
          py::gil_scoped_release release;
          points = sweep(s, spec, threads);
        }
        py::list rows;
        for (const auto& p : points) rows.append(row_to_dict(p.row));
        return rows;
      },
      py::arg("scenario"), py::arg("param"), py::arg("values"), py::arg("seeds"),
      py::arg("threads") = 0, "Summary rows ordered by (value, seed).");

  m.def(
      "sweep_to_dir",
      [](const Scenario& s, const std::string& param, std::vector<double> values,
         std::vector<std::uint64_t> seeds, const std::filesystem::path& out, unsigned threads) {
        const auto spec = make_spec(param, std::move(values), std::move(seeds));
        py::gil_scoped_release release;
        write_sweep_outputs(sweep(s, spec, threads), s.policy.kind, out);
      },
      py::arg("scenario"), py::arg("param"), py::arg("values"), py::arg("seeds"),
      py::arg("out"), py::arg("threads") = 0,
      "Run a sweep and write summary.csv plus per-point CDF files.");

  m.def(
      "quantile_nearest_rank",
      [](const std::vector<double>& samples, double p) { return quantile_nearest_rank(samples, p); },
      py::arg("samples"), py::arg("p"), "Nearest-rank quantile; None for no samples.");
  m.def(
      "empirical_cdf",
      [](const std::vector<double>& samples) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : empirical_cdf(samples)) out.emplace_back(p.value, p.cumulative);
        return out;
      },
      py::arg("samples"));

#ifdef UNCOORDSIM_VERSION
  m.attr("__version__") = UNCOORDSIM_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
