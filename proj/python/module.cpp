#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expgraph/eval.hpp"
#include "expgraph/gen.hpp"
#include "expgraph/graph.hpp"
#include "expgraph/io.hpp"
#include "expgraph/oracle.hpp"
#include "expgraph/solvers.hpp"
#include "expgraph/taylor.hpp"

namespace py = pybind11;
using namespace expgraph;

namespace {

template <class T>
py::array_t<T> to_array(std::span<const T> s) {
  py::array_t<T> out(static_cast<py::ssize_t>(s.size()));
  std::copy(s.begin(), s.end(), out.mutable_data());
  return out;
}

py::dict to_dict(const SparseVector& v) {
  py::dict d;
  for (const auto& e : v.sorted_by_node()) d[py::int_(e.node)] = e.value;
  return d;
}

// Accepts a {node: value} mapping or a dense 1-d sequence.
SparseVector to_sparse(const py::handle& obj) {
  SparseVector v;
  if (py::isinstance<py::dict>(obj)) {
    for (const auto& [k, val] : obj.cast<py::dict>()) v.set(k.cast<node_t>(), val.cast<double>());
    return v;
  }
  const auto dense = obj.cast<std::vector<double>>();
  return SparseVector::from_dense(dense);
}

ThresholdRule parse_rule(const std::string& s) {
  if (s == "strict") return ThresholdRule::kStrict;
  if (s == "pseudocode") return ThresholdRule::kPseudocode;
  throw std::invalid_argument("threshold_rule must be 'strict' or 'pseudocode'");
}

SolveOptions make_options(const std::string& rule, bool trace, bool residual, std::uint64_t max_steps) {
  SolveOptions o;
  o.rule = parse_rule(rule);
  o.record_trace = trace;
  o.keep_residual = residual;
  o.max_steps = max_steps;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Columns of exp(P) for column-stochastic graph matrices";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<CscGraph>(m, "Graph")
      .def_static(
          "from_arcs",
          [](std::size_t n, const std::vector<std::pair<node_t, node_t>>& arcs, bool symmetrize) {
            std::vector<Arc> a;
            a.reserve(arcs.size());
            for (const auto& [s, d] : arcs) a.push_back({s, d});
            return CscGraph::from_arcs(n, a, symmetrize);
          },
          py::arg("n"), py::arg("arcs"), py::arg("symmetrize") = false)
      .def_property_readonly("num_nodes", &CscGraph::num_nodes)
      .def_property_readonly("nnz", &CscGraph::nnz)
      .def_property_readonly("col_ptr", [](const CscGraph& g) { return to_array(g.col_ptr()); })
      .def_property_readonly("row_idx", [](const CscGraph& g) { return to_array(g.row_idx()); })
      .def_property_readonly("values", [](const CscGraph& g) { return to_array(g.values()); })
      .def_property_readonly("out_degree",
                             [](const CscGraph& g) { return to_array<std::uint64_t>(g.out_degree()); })
      .def_property_readonly("labels", [](const CscGraph& g) { return to_array(g.labels()); })
      .def("is_stochastic", &CscGraph::is_stochastic)
      .def("__repr__", [](const CscGraph& g) {
        return "<Graph n=" + std::to_string(g.num_nodes()) + " nnz=" + std::to_string(g.nnz()) + ">";
      });

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("x", [](const SolveReport& r) { return to_dict(r.x); })
      .def_readonly("degree", &SolveReport::degree)
      .def_readonly("final_tracker", &SolveReport::final_tracker)
      .def_readonly("skipped_mass", &SolveReport::skipped_mass)
      .def_readonly("steps", &SolveReport::steps)
      .def_readonly("edge_touches", &SolveReport::edge_touches)
      .def_readonly("effective_matvecs", &SolveReport::effective_matvecs)
      .def_readonly("wallclock", &SolveReport::wallclock)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("iterate_nnz", &SolveReport::iterate_nnz)
      .def_property_readonly("trace",
                             [](const SolveReport& r) {
                               py::list out;
                               for (const auto& s : r.trace) out.append(py::make_tuple(s.block, s.node, s.value, s.tracker));
                               return out;
                             })
      .def_property_readonly("residual", [](const SolveReport& r) {
        py::list out;
        for (const auto& e : r.residual) out.append(py::make_tuple(e.block, e.node, e.value));
        return out;
      });

  m.def(
      "read_graph",
      [](const std::string& path, const std::string& format, bool undirected) {
        ReadOptions o;
        o.format = parse_graph_format(format);
        o.undirected = undirected;
        return read_graph(path, o);
      },
      py::arg("path"), py::arg("format") = "auto", py::arg("undirected") = false);
  m.def("write_smat", py::overload_cast<const CscGraph&, const std::string&>(&write_smat), py::arg("graph"),
        py::arg("path"));
  m.def("normalize_to_stochastic", &normalize_to_stochastic, py::arg("graph"));
  m.def(
      "column",
      [](const CscGraph& g, node_t i) {
        std::vector<std::pair<node_t, double>> out;
        for (const auto& e : column(g, i)) out.emplace_back(e.node, e.value);
        return out;
      },
      py::arg("graph"), py::arg("i"));

  m.def("select_degree_exact", &select_degree_exact, py::arg("eps"));
  m.def("select_degree_bound", &select_degree_bound, py::arg("eps"));
  m.def("psi_weights", &psi_weights, py::arg("degree"));

  m.def(
      "gexpm",
      [](const CscGraph& g, node_t c, double eps, const std::string& rule, bool trace, bool residual,
         std::uint64_t max_steps) {
        const auto opts = make_options(rule, trace, residual, max_steps);
        py::gil_scoped_release release;
        return gexpm(g, c, eps, opts);
      },
      py::arg("graph"), py::arg("c"), py::arg("eps"), py::arg("threshold_rule") = "strict",
      py::arg("record_trace") = false, py::arg("keep_residual") = false, py::arg("max_steps") = 0);
  m.def(
      "gexpmq",
      [](const CscGraph& g, node_t c, double eps, const std::string& rule, bool trace, bool residual,
         std::uint64_t max_steps) {
        const auto opts = make_options(rule, trace, residual, max_steps);
        py::gil_scoped_release release;
        return gexpmq(g, c, eps, opts);
      },
      py::arg("graph"), py::arg("c"), py::arg("eps"), py::arg("threshold_rule") = "strict",
      py::arg("record_trace") = false, py::arg("keep_residual") = false, py::arg("max_steps") = 0);
  m.def(
      "expmimv",
      [](const CscGraph& g, node_t c, int degree, std::size_t z) {
        py::gil_scoped_release release;
        return expmimv(g, c, degree, z);
      },
      py::arg("graph"), py::arg("c"), py::arg("degree"), py::arg("z"));

  m.def(
      "dense_taylor_oracle",
      [](const CscGraph& g, node_t c, int degree) {
        const auto v = dense_taylor_oracle(g, c, degree);
        return to_array<double>(v);
      },
      py::arg("graph"), py::arg("c"), py::arg("degree") = kOracleDegree);
  m.def(
      "horner_full",
      [](const CscGraph& g, node_t c, int degree) {
        const auto v = horner_full(g, c, degree);
        return to_array<double>(v);
      },
      py::arg("graph"), py::arg("c"), py::arg("degree") = kOracleDegree);
  m.def(
      "dense_normalized_laplacian_exp",
      [](const CscGraph& g, node_t c, int degree) {
        const auto v = dense_normalized_laplacian_exp(g, c, degree);
        return to_array<double>(v);
      },
      py::arg("graph"), py::arg("c"), py::arg("degree") = 30);
  m.def(
      "laplacian_column",
      [](const py::handle& x, const CscGraph& g, node_t c) {
        return to_dict(laplacian_column_from_exp_column(to_sparse(x), g.out_degree(), c));
      },
      py::arg("x"), py::arg("graph"), py::arg("c"),
      "Column c of exp(-L) from an approximation of exp(P) e_c; degrees come from graph.");

  m.def(
      "forest_fire",
      [](std::size_t n, double p, std::uint64_t seed, std::uint64_t arc_target) {
        return forest_fire({n, p, seed, arc_target});
      },
      py::arg("n"), py::arg("p") = 0.4, py::arg("seed") = 0, py::arg("arc_target") = 0);
  m.def("random_regular", &random_regular, py::arg("n"), py::arg("degree"), py::arg("seed") = 0);

  m.def(
      "precision_at_k",
      [](const py::handle& approx, const py::handle& truth, std::size_t k, const std::string& exclude,
         const CscGraph& g, node_t c) {
        return precision_at_k(to_sparse(approx), to_sparse(truth), k, parse_exclude_policy(exclude), g, c)
            .precision;
      },
      py::arg("approx"), py::arg("truth"), py::arg("k"), py::arg("exclude") = "none", py::arg("graph"),
      py::arg("c"));
  m.def(
      "one_norm_error",
      [](const py::handle& approx, const py::handle& truth) {
        return one_norm_error(to_sparse(approx), to_sparse(truth));
      },
      py::arg("approx"), py::arg("truth"));
}
