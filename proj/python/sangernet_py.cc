// Copyright 2026 The sangernet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sangernet/datamodel.h"
#include "sangernet/distributed.h"
#include "sangernet/error.h"
#include "sangernet/harness.h"
#include "sangernet/hebbian.h"
#include "sangernet/metrics.h"
#include "sangernet/topology.h"

namespace py = pybind11;
using namespace sangernet;

namespace {

py::dict trajectory_dict(const RunResult& r) {
  std::vector<std::int64_t> iter;
  std::vector<double> comm, err, dev;
  std::vector<std::uint32_t> flags;
  for (const auto& row : r.trajectory.rows) {
    iter.push_back(row.iteration);
    comm.push_back(row.comm_units);
    err.push_back(row.error);
    dev.push_back(row.consensus_dev);
    flags.push_back(row.flags);
  }
  py::dict d;
  d["iter"] = iter;
  d["comm_units"] = comm;
  d["error"] = err;
  d["consensus_dev"] = dev;
  d["flags"] = flags;
  d["run_flags"] = flag_names(r.flags);
  if (!r.phase.empty()) d["phase"] = r.phase;
  return d;
}

Graph make_graph(const std::string& topology, int m, double p, std::uint64_t seed) {
  if (topology == "erdos_renyi") return erdos_renyi(m, p, seed);
  if (topology == "cycle") return cycle(m);
  if (topology == "star") return star(m);
  if (topology == "complete") return complete(m);
  throw Error(ErrorCode::kInvalidArgument, "unknown topology " + topology);
}

Problem problem_from(const Matrix& data, int m, int k, const std::string& topology,
                     double p, std::uint64_t seed) {
  const auto parts = partition(center(DataMatrix(data)), m, PartitionScheme::equal());
  return make_problem(parts, make_graph(topology, m, p, seed), k, seed);
}

}  // namespace

PYBIND11_MODULE(_sangernet, m) {
  m.doc() = "Distributed Sanger's algorithm for PCA over networks";

  static py::exception<Error> error(m, "SangernetError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("geometric_spectrum",
        [](int d, double gap) { return SpectrumSpec::geometric(d, gap).eigenvalues(); },
        py::arg("d"), py::arg("gap"));
  m.def("generate_gaussian",
        [](int d, int n, const std::vector<double>& spectrum, std::uint64_t seed) {
          return generate_gaussian(d, n, SpectrumSpec(spectrum, d), seed).values();
        },
        py::arg("d"), py::arg("n"), py::arg("spectrum"), py::arg("seed"));
  m.def("center", [](const Matrix& y) { return center(DataMatrix(y)).values(); });
  m.def("covariance", [](const Matrix& y) { return covariance(DataMatrix(y)).values(); });
  m.def("read_matrix", [](const std::string& path) { return read_matrix(path).values(); });
  m.def("write_binary", [](const std::string& path, const Matrix& y) {
    write_binary(path, DataMatrix(y));
  });

  m.def("graph_edges",
        [](const std::string& topology, int nodes, double p, std::uint64_t seed) {
          return make_graph(topology, nodes, p, seed).edges();
        },
        py::arg("topology"), py::arg("nodes"), py::arg("p") = 0.5, py::arg("seed") = 0);
  m.def("metropolis_weights",
        [](int nodes, const std::vector<Graph::Edge>& edges) {
          return metropolis_weights(Graph(nodes, edges)).weights();
        });
  m.def("mixing_beta", [](const Matrix& w) { return beta(w); });

  m.def("sanger_direction", &sanger_direction, py::arg("c"), py::arg("x"));
  m.def("step_size_bound", &step_size_bound, py::arg("lambda1"), py::arg("k"),
        py::arg("self_weight") = 1.0);
  m.def("gha_run",
        [](const Matrix& c, const Matrix& init, double alpha, std::int64_t iterations) {
          GhaOptions o;
          o.alpha = alpha;
          o.iterations = iterations;
          const auto t = gha_run(c, init, o);
          return py::make_tuple(t.final, flag_names(t.flags));
        },
        py::arg("c"), py::arg("init"), py::arg("alpha"), py::arg("iterations"));
  m.def("orthogonal_iteration",
        [](const Matrix& c, int k, double tol) {
          const auto b = orthogonal_iteration(c, k, tol);
          return py::make_tuple(b.values, b.vectors);
        },
        py::arg("c"), py::arg("k"), py::arg("tol") = 1e-12);
  m.def("avg_angle_error",
        [](const std::vector<Matrix>& estimates, const Matrix& truth) {
          EigenBasis b{truth, Vector::Zero(truth.cols())};
          return avg_angle_error(estimates, b);
        });
  m.def("consensus_deviation",
        [](const std::vector<Matrix>& estimates) { return consensus_deviation(estimates); });

  m.def("dsa_run",
        [](const Matrix& data, int nodes, int k, double alpha, std::int64_t iterations,
           const std::string& topology, double p, std::uint64_t seed) {
          const Problem pr = problem_from(data, nodes, k, topology, p, seed);
          RunOptions o;
          o.alpha = alpha;
          o.iterations = iterations;
          return trajectory_dict(dsa_run(pr, o));
        },
        py::arg("data"), py::arg("nodes"), py::arg("k"), py::arg("alpha"),
        py::arg("iterations"), py::arg("topology") = "erdos_renyi", py::arg("p") = 0.5,
        py::arg("seed") = 1);
  m.def("dpgd_run",
        [](const Matrix& data, int nodes, int k, double alpha, std::int64_t iterations,
           const std::string& topology, double p, std::uint64_t seed) {
          const Problem pr = problem_from(data, nodes, k, topology, p, seed);
          RunOptions o;
          o.alpha = alpha;
          o.iterations = iterations;
          return trajectory_dict(dpgd_run(pr, o));
        },
        py::arg("data"), py::arg("nodes"), py::arg("k"), py::arg("alpha"),
        py::arg("iterations"), py::arg("topology") = "erdos_renyi", py::arg("p") = 0.5,
        py::arg("seed") = 1);
  m.def("seqdistpm_run",
        [](const Matrix& data, int nodes, int k, int tc, std::int64_t outer_iters,
           const std::string& topology, double p, std::uint64_t seed) {
          const Problem pr = problem_from(data, nodes, k, topology, p, seed);
          SeqDistPmOptions o;
          o.consensus_rounds = tc;
          o.outer_iters = outer_iters;
          return trajectory_dict(seqdistpm_run(pr, o));
        },
        py::arg("data"), py::arg("nodes"), py::arg("k"), py::arg("tc") = 50,
        py::arg("outer_iters") = 100, py::arg("topology") = "erdos_renyi",
        py::arg("p") = 0.5, py::arg("seed") = 1);

  m.def("validate_config",
        [](const std::string& text) { return validate_config(parse_config(text)).warnings; });
  m.def("run_config",
        [](const std::string& text, bool write) {
          const auto cfg = parse_config(text);
          const auto r = write ? run_experiment(cfg) : run_trials(cfg);
          return aggregate_csv(r.aggregate);
        },
        py::arg("text"), py::arg("write") = false,
        "Runs a config and returns the aggregate CSV text.");
}
