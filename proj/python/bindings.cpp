#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surfemb/canonical.hpp"
#include "surfemb/certify.hpp"
#include "surfemb/constructions.hpp"
#include "surfemb/families.hpp"
#include "surfemb/graph_io.hpp"
#include "surfemb/maximality.hpp"
#include "surfemb/search.hpp"

namespace py = pybind11;
using namespace surfemb;

namespace {

SearchBudget budget_of(std::optional<std::uint64_t> max_nodes, std::optional<double> time_limit,
                       std::optional<int> workers) {
  SearchBudget b = SearchBudget::from_env();
  if (max_nodes) b.max_nodes = *max_nodes;
  if (time_limit) b.time_limit_seconds = *time_limit;
  if (workers) b.workers = *workers;
  return b;
}

#define BUDGET_ARGS py::kw_only(), py::arg("max_nodes") = py::none(), py::arg("time_limit") = py::none(), \
                    py::arg("workers") = py::none()
using OptNodes = std::optional<std::uint64_t>;
using OptTime = std::optional<double>;
using OptWorkers = std::optional<int>;

std::vector<std::pair<int, int>> edge_pairs(const std::vector<Edge>& edges) {
  std::vector<std::pair<int, int>> out;
  for (auto e : edges) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

PYBIND11_MODULE(_surfemb, m) {
  m.doc() = "Graph embeddings on closed surfaces";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EmbeddingError>(m, "EmbeddingError", PyExc_ValueError);
  py::register_exception<SearchError>(m, "SearchError", PyExc_ValueError);
  py::register_exception<MaximalityError>(m, "MaximalityError", PyExc_ValueError);
  py::register_exception<CertificateError>(m, "CertificateError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             std::vector<Edge> es;
             for (auto [a, b] : edges) es.push_back(make_edge(a, b));
             return Graph(n, es);
           }),
           py::arg("n"), py::arg("edges") = std::vector<std::pair<int, int>>{})
      .def_static("parse", [](const std::string& s) { return parse_graph(s); }, "graph6 or 'n; u-v ...' text")
      .def_property_readonly("order", &Graph::order)
      .def_property_readonly("size", &Graph::size)
      .def_property_readonly("edges", [](const Graph& g) { return edge_pairs(g.edges()); })
      .def("adjacent", &Graph::adjacent)
      .def("degree", &Graph::degree)
      .def("with_edge", [](const Graph& g, int a, int b) { return g.with_edge(make_edge(a, b)); })
      .def("without_edge",
           [](const Graph& g, int a, int b) {
             Edge e = make_edge(a, b);
             return g.without_edges(std::span<const Edge>(&e, 1));
           })
      .def("connected", &Graph::connected)
      .def("graph6", [](const Graph& g) { return to_graph6(g); })
      .def("edge_list", [](const Graph& g) { return to_edge_list(g); })
      .def("canonical_form", [](const Graph& g) { return canonical_form(g); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) { return "Graph('" + to_edge_list(g) + "')"; });

  py::class_<SurfaceSpec>(m, "Surface")
      .def(py::init(&SurfaceSpec::parse), py::arg("name"))
      .def_readonly("orientable", &SurfaceSpec::orientable)
      .def_readonly("genus", &SurfaceSpec::genus)
      .def_property_readonly("euler_genus", &SurfaceSpec::euler_genus)
      .def_property_readonly("name", &SurfaceSpec::name)
      .def("__eq__", [](const SurfaceSpec& a, const SurfaceSpec& b) { return a == b; })
      .def("__repr__", [](const SurfaceSpec& s) { return "Surface('" + s.name() + "')"; });

  py::class_<RotationEmbedding>(m, "Embedding")
      .def(py::init<Graph, std::vector<std::vector<Vertex>>, std::vector<int>>(), py::arg("graph"),
           py::arg("rotation"), py::arg("signature"))
      .def_property_readonly("graph", &RotationEmbedding::graph)
      .def_property_readonly("rotation", py::overload_cast<>(&RotationEmbedding::rotation, py::const_))
      .def_property_readonly("signature", &RotationEmbedding::signature)
      .def_property_readonly("surface", &surface_of)
      .def_property_readonly("euler_genus", &euler_genus)
      .def_property_readonly("orientable", &is_orientable)
      .def("faces",
           [](const RotationEmbedding& e) {
             std::vector<Walk> out;
             for (const auto& f : trace_faces(e)) out.push_back(f.vertices());
             return out;
           })
      .def("face_sizes", &face_size_multiset)
      .def("k4_quads", &quad_faces_inducing_K4)
      .def("is_facial_cycle", [](const RotationEmbedding& e, const Walk& c) { return is_facial_cycle(e, c); })
      .def("flip",
           [](const RotationEmbedding& e, int u, int v, std::size_t face, std::size_t cu, std::size_t cv) {
             return flip_edge(e, make_edge(u, v), face, cu, cv);
           },
           py::arg("u"), py::arg("v"), py::arg("face"), py::arg("corner_u"), py::arg("corner_v"))
      .def("ensure_4face", &ensure_4face)
      .def("certificate",
           [](const RotationEmbedding& e) { return serialize_certificate(make_certificate(e)); },
           "Certificate JSON text");

  m.def("complete_graph", &complete_graph);
  m.def("from_certificate", [](const std::string& text) { return certificate_embedding(parse_certificate(text)); });
  m.def(
      "verify_certificate",
      [](const std::string& text) {
        VerifyResult v = verify_certificate(parse_certificate(text));
        return py::make_tuple(v.valid, v.failure);
      },
      "Returns (valid, first failing claim).");

  m.def(
      "embeds",
      [](const Graph& g, const std::string& surface, OptNodes n, OptTime t, OptWorkers w) {
        SearchOutcome o = embeds_on(g, SurfaceSpec::parse(surface), budget_of(n, t, w));
        py::dict d;
        d["decision"] = to_string(o.decision);
        d["witness"] = o.witness ? py::cast(*o.witness) : py::none();
        d["proof"] = o.proof;
        d["nodes"] = o.nodes;
        return d;
      },
      py::arg("graph"), py::arg("surface"), BUDGET_ARGS);

  auto genus_fn = [](GenusResult (*fn)(const Graph&, const SearchBudget&)) {
    return [fn](const Graph& g, OptNodes n, OptTime t, OptWorkers w) -> py::object {
      GenusResult r = fn(g, budget_of(n, t, w));
      if (r.exact) return py::int_(r.genus);
      return py::make_tuple(r.lower, r.upper);
    };
  };
  const char* genus_doc = "Exact value, or a (lower, upper) bracket when the budget runs out.";
  m.def("orientable_genus", genus_fn(&min_orientable_genus), genus_doc, py::arg("graph"), BUDGET_ARGS);
  m.def("nonorientable_genus", genus_fn(&min_nonorientable_genus), genus_doc, py::arg("graph"), BUDGET_ARGS);
  m.def("euler_genus", genus_fn(&min_euler_genus), genus_doc, py::arg("graph"), BUDGET_ARGS);

  m.def(
      "is_edge_maximal",
      [](const Graph& g, const std::string& surface, OptNodes n, OptTime t, OptWorkers w) {
        MaximalityResult r = is_edge_maximal(g, SurfaceSpec::parse(surface), budget_of(n, t, w));
        py::dict d;
        d["verdict"] = to_string(r.verdict);
        d["addable"] = r.addable ? py::cast(std::make_pair(r.addable->u, r.addable->v)) : py::none();
        return d;
      },
      py::arg("graph"), py::arg("surface"), BUDGET_ARGS);

  m.def(
      "is_euler_impure",
      [](const Graph& g, const std::string& surface, OptNodes n, OptTime t, OptWorkers w) {
        EulerImpurity r = is_euler_impure(g, SurfaceSpec::parse(surface), budget_of(n, t, w));
        py::dict d;
        d["verdict"] = to_string(r.verdict);
        d["reason"] = r.reason;
        d["deficit"] = r.report.deficit;
        d["edge_maximal"] = r.report.edge_maximal;
        d["triangulates"] = r.report.triangulates;
        d["witness"] = r.report.witness ? py::cast(*r.report.witness) : py::none();
        return d;
      },
      py::arg("graph"), py::arg("surface"), BUDGET_ARGS);

  m.def(
      "impurity",
      [](const Graph& g, const std::string& surface, OptNodes n, OptTime t, OptWorkers w) {
        ImpurityResult r = impurity(g, SurfaceSpec::parse(surface), budget_of(n, t, w));
        return py::make_tuple(r.k, r.exact);
      },
      "Returns (k, exact).", py::arg("graph"), py::arg("surface"), BUDGET_ARGS);

  m.def(
      "census",
      [](int nmax, const std::string& surface, OptNodes n, OptTime t, OptWorkers w) {
        CensusResult r = census_euler_impure(nmax, SurfaceSpec::parse(surface), budget_of(n, t, w));
        std::vector<std::string> found;
        for (const auto& e : r.impure) found.push_back(e.graph6);
        py::dict d;
        d["euler_impure"] = found;
        d["complete"] = r.complete;
        d["undecided"] = r.undecided;
        return d;
      },
      "Euler impure graphs (canonical graph6) on the surface with at most nmax vertices.", py::arg("nmax"),
      py::arg("surface"), BUDGET_ARGS);

  m.def(
      "enumerate_embeddings",
      [](const Graph& g, const std::string& surface, OptNodes n, OptTime t) {
        std::vector<RotationEmbedding> out;
        SearchBudget b = budget_of(n, t, 1);
        EnumerationResult r = enumerate_embeddings(
            g, SurfaceSpec::parse(surface),
            [&](const RotationEmbedding& e) {
              out.push_back(e);
              return true;
            },
            b);
        if (!r.complete) throw SearchError("enumeration did not finish within the budget");
        return out;
      },
      "Every embedding on exactly this surface, one per switching/reflection class.", py::arg("graph"),
      py::arg("surface"), py::kw_only(), py::arg("max_nodes") = py::none(), py::arg("time_limit") = py::none());

  m.def(
      "fg",
      [](int g, int plate_depth, int plate_gap, OptNodes n, OptTime t, OptWorkers w) {
        Plate p = plate_gap > 0 ? gapped_plate(plate_gap) : quad_plate_faces(plate_depth);
        FgResult r = fg_embedding(g, p, budget_of(n, t, w));
        return py::make_tuple(r.embedding, serialize_certificate(r.certificate));
      },
      "Returns (embedding on S_g, certificate text).", py::arg("g"), py::arg("plate_depth") = 0,
      py::arg("plate_gap") = 0, BUDGET_ARGS);
}
