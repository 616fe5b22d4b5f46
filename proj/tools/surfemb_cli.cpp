#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "surfemb/canonical.hpp"
#include "surfemb/certify.hpp"
#include "surfemb/constructions.hpp"
#include "surfemb/families.hpp"
#include "surfemb/graph_io.hpp"
#include "surfemb/maximality.hpp"
#include "surfemb/search.hpp"

using namespace surfemb;
using nlohmann::ordered_json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 10;
constexpr int kUnknown = 20;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered key/value summary printed as "key: value" lines or one JSON line.
class Report {
 public:
  explicit Report(bool json) : json_(json) {}
  template <class T>
  void set(const std::string& key, const T& value) {
    out_[key] = value;
  }
  int finish(int code, const std::string& result, const std::string& reason = "") {
    out_["result"] = result;
    if (!reason.empty()) out_["reason"] = reason;
    out_["exit"] = code;
    if (json_) {
      std::cout << out_.dump() << "\n";
    } else {
      for (const auto& [k, v] : out_.items()) {
        if (k == "exit") continue;
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
    return code;
  }

 private:
  bool json_;
  ordered_json out_ = ordered_json::object();
};

struct Common {
  bool json = false;
  std::optional<int> workers;
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> time_limit;

  // Flags override the environment, which overrides the defaults.
  SearchBudget budget() const {
    SearchBudget b = SearchBudget::from_env();
    if (workers) b.workers = *workers;
    if (max_nodes) b.max_nodes = *max_nodes;
    if (time_limit) b.time_limit_seconds = *time_limit;
    return b;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_flag("--json", c.json, "Print a one-line JSON summary");
  app->add_option("--workers", c.workers, "Search worker threads (default 1 or SURFEMB_WORKERS)")->check(CLI::PositiveNumber);
  app->add_option("--max-nodes", c.max_nodes, "Node budget per search, 0 for none (default 1e8 or SURFEMB_MAX_NODES)");
  app->add_option("--time-limit", c.time_limit, "Seconds per search, 0 for none (default 60 or SURFEMB_TIME_LIMIT)");
}

Graph named_graph(const std::string& name) {
  auto strip = [&](const std::string& prefix) { return name.substr(prefix.size()); };
  if (name == "K7-e") {
    Edge e{0, 1};
    return complete_graph(7).without_edges(std::span<const Edge>(&e, 1));
  }
  if (name == "K8-C5") {
    std::vector<Edge> c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
    return complete_graph(8).without_edges(c5);
  }
  if (name.rfind("K", 0) == 0 && name.find_first_not_of("0123456789", 1) == std::string::npos && name.size() > 1)
    return complete_graph(std::stoi(strip("K")));
  if (name.rfind("quad_plate", 0) == 0) return quad_plate(std::stoi(strip("quad_plate")));
  throw UsageError("unknown named graph '" + name + "' (known: Kn, K7-e, K8-C5, quad_plateD)");
}

Graph load_graph(const std::string& arg) {
  if (arg.rfind("name:", 0) == 0) return named_graph(arg.substr(5));
  std::string text = arg;
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_graph(text);
}

SurfaceSpec surface_arg(const std::string& s) {
  try {
    return SurfaceSpec::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string sizes_text(const std::map<int, int>& m) {
  std::string s = "{";
  bool first = true;
  for (auto [len, count] : m) {
    s += (first ? "" : ", ") + std::to_string(len) + ":" + std::to_string(count);
    first = false;
  }
  return s + "}";
}

void emit(const std::string& path, const RotationEmbedding& emb, std::map<std::string, std::string> provenance,
          Report& rep) {
  if (path.empty()) return;
  EmbeddingCertificate cert = make_certificate(emb);
  cert.provenance = std::move(provenance);
  write_certificate(cert, path);
  rep.set("certificate", path);
}

int decision_code(Decision d) {
  return d == Decision::embeddable ? kHolds : d == Decision::not_embeddable ? kFails : kUnknown;
}

// Predicates for `enumerate --assert`.
std::function<bool(const RotationEmbedding&)> predicate(const std::string& name) {
  if (name == "any") return [](const RotationEmbedding&) { return true; };
  if (name == "triangulation")
    return [](const RotationEmbedding& e) {
      auto m = face_size_multiset(e);
      return m.size() == 1 && m.begin()->first == 3;
    };
  if (name == "one-4-face")
    return [](const RotationEmbedding& e) {
      auto m = face_size_multiset(e);
      int other = 0;
      for (auto [len, count] : m)
        if (len != 3) other += count;
      return other == 1 && m.count(4) == 1;
    };
  if (name == "two-4-faces")
    return [](const RotationEmbedding& e) {
      auto m = face_size_multiset(e);
      int other = 0;
      for (auto [len, count] : m)
        if (len != 3) other += count;
      return other == 2 && m.count(4) && m.at(4) == 2;
    };
  if (name == "has-4-face") return [](const RotationEmbedding& e) { return face_size_multiset(e).count(4) > 0; };
  throw UsageError("unknown predicate '" + name + "' (any, triangulation, one-4-face, two-4-faces, has-4-face)");
}

Edge edge_arg(const std::string& s) {
  auto dash = s.find('-');
  if (dash == std::string::npos) throw UsageError("edge must look like u-v");
  try {
    return make_edge(std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1)));
  } catch (const std::logic_error&) {
    throw UsageError("edge must look like u-v");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph embeddings on surfaces: genus search, edge-maximality and constructions"};
  app.require_subcommand(1);
  Common common;
  std::string graph_arg, surface, out_cert, assertion = "any", cert_path, edge, corners, fixtures_dir;
  int nmax = 0, g = 2, depth = 0, gap = 0, face = -1;
  bool want_impurity = false;
  std::string kind = "all";

  auto* genus = app.add_subcommand("genus", "Minimum orientable, nonorientable and Euler genus");
  genus->add_option("graph", graph_arg, "graph6, edge list, file path or name:K7")->required();
  genus->add_option("--kind", kind, "orientable, nonorientable, euler or all")
      ->check(CLI::IsMember({"orientable", "nonorientable", "euler", "all"}));
  genus->add_option("--emit-cert", out_cert, "Write a certificate for the minimum Euler genus witness");
  add_common(genus, common);

  auto* embeds = app.add_subcommand("embeds", "Decide whether a graph embeds on a surface");
  embeds->add_option("graph", graph_arg, "graph6, edge list, file path or name:K7")->required();
  embeds->add_option("--surface", surface, "S<g> or N<k>")->required();
  embeds->add_option("--emit-cert", out_cert, "Write the witness certificate");
  add_common(embeds, common);

  auto* maximal = app.add_subcommand("maximal", "Is the graph edge-maximal on the surface");
  maximal->add_option("graph", graph_arg, "graph6, edge list, file path or name:K7")->required();
  maximal->add_option("--surface", surface, "S<g> or N<k>")->required();
  add_common(maximal, common);

  auto* impure = app.add_subcommand("impure", "Is the graph Euler impure on the surface");
  impure->add_option("graph", graph_arg, "graph6, edge list, file path or name:K7")->required();
  impure->add_option("--surface", surface, "S<g> or N<k>")->required();
  impure->add_flag("--impurity", want_impurity, "Also compute k-impurity (at most 9 vertices)");
  impure->add_option("--emit-cert", out_cert, "Write the embedding certificate");
  add_common(impure, common);

  auto* census = app.add_subcommand("census", "All Euler impure graphs up to n vertices");
  census->add_option("--surface", surface, "S<g> or N<k>")->required();
  census->add_option("--nmax", nmax, "Largest vertex count (at most 8)")->required();
  census->add_option("--out-dir", fixtures_dir, "Directory for witness certificates");
  add_common(census, common);

  auto* construct = app.add_subcommand("construct", "Build a family member");
  construct->require_subcommand(1);
  auto* fgcmd = construct->add_subcommand("fg", "F_g(P) with its embedding on S_g");
  fgcmd->add_option("--g", g, "Genus, at least 2")->required();
  fgcmd->add_option("--plate-depth", depth, "Stacking depth of the quad plate P");
  fgcmd->add_option("--plate-gap", gap, "Interior quadrilaterals in P (replaces --plate-depth)");
  fgcmd->add_option("--emit-cert", out_cert, "Write the certificate");
  fgcmd->add_option("--fixtures", fixtures_dir, "Fixture certificate cache directory");
  add_common(fgcmd, common);

  auto* enumerate = app.add_subcommand("enumerate", "Check a predicate on every embedding on a surface");
  enumerate->add_option("graph", graph_arg, "graph6, edge list, file path or name:K7")->required();
  enumerate->add_option("--surface", surface, "S<g> or N<k>")->required();
  enumerate->add_option("--assert", assertion, "any, triangulation, one-4-face, two-4-faces or has-4-face");
  enumerate->add_option("--emit-cert", out_cert, "Write a counterexample certificate");
  add_common(enumerate, common);

  auto* verify = app.add_subcommand("verify", "Verify a certificate");
  verify->add_option("cert", cert_path, "Certificate file")->required();
  add_common(verify, common);

  auto* flip = app.add_subcommand("flip", "Move an edge across a face");
  flip->add_option("cert", cert_path, "Certificate file")->required();
  flip->add_option("--edge", edge, "u-v")->required();
  flip->add_option("--face", face, "Face index in trace order")->required();
  flip->add_option("--corners", corners, "i,j: step indices on the face for u and v")->required();
  flip->add_option("--emit-cert", out_cert, "Write the flipped embedding");
  add_common(flip, common);

  auto* four = app.add_subcommand("ensure-4face", "Produce an embedding with a 4-face by one flip");
  four->add_option("cert", cert_path, "Certificate file")->required();
  four->add_option("--emit-cert", out_cert, "Write the embedding with a 4-face");
  add_common(four, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  Report rep(common.json);
  try {
    SearchBudget budget = common.budget();
    if (genus->parsed()) {
      Graph gr = load_graph(graph_arg);
      rep.set("graph", to_graph6(gr));
      bool exact = true;
      auto put = [&](const std::string& key, const GenusResult& r) {
        if (r.exact) {
          rep.set(key, r.genus);
        } else {
          rep.set(key, "[" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "]");
          exact = false;
        }
      };
      if (kind == "orientable" || kind == "all") put("orientable_genus", min_orientable_genus(gr, budget));
      if (kind == "nonorientable" || kind == "all") put("nonorientable_genus", min_nonorientable_genus(gr, budget));
      if (kind == "euler" || kind == "all" || !out_cert.empty()) {
        GenusResult e = min_euler_genus(gr, budget);
        put("euler_genus", e);
        if (e.witness) emit(out_cert, *e.witness, {{"construction", "minimum Euler genus search"}}, rep);
      }
      return exact ? rep.finish(kHolds, "exact") : rep.finish(kUnknown, "unknown", "budget exhausted");
    }
    if (embeds->parsed()) {
      Graph gr = load_graph(graph_arg);
      SurfaceSpec s = surface_arg(surface);
      SearchOutcome o = embeds_on(gr, s, budget);
      rep.set("graph", to_graph6(gr));
      rep.set("surface", s.name());
      rep.set("nodes", o.nodes);
      if (o.witness) {
        rep.set("witness_surface", surface_of(*o.witness).name());
        rep.set("face_sizes", sizes_text(face_size_multiset(*o.witness)));
        emit(out_cert, *o.witness, {{"construction", "embeddability search on " + s.name()}}, rep);
      }
      return rep.finish(decision_code(o.decision), to_string(o.decision), o.proof);
    }
    if (maximal->parsed()) {
      Graph gr = load_graph(graph_arg);
      SurfaceSpec s = surface_arg(surface);
      rep.set("graph", to_graph6(gr));
      rep.set("surface", s.name());
      MaximalityResult m = is_edge_maximal(gr, s, budget);
      rep.set("non_edges_checked", m.blocking.size());
      if (m.verdict == Verdict::no)
        return rep.finish(kFails, "not-maximal",
                          "edge " + std::to_string(m.addable->u) + "-" + std::to_string(m.addable->v) + " can be added");
      if (m.verdict == Verdict::unknown) return rep.finish(kUnknown, "unknown", "budget exhausted");
      return rep.finish(kHolds, "edge-maximal", "every non-edge proven not addable");
    }
    if (impure->parsed()) {
      Graph gr = load_graph(graph_arg);
      SurfaceSpec s = surface_arg(surface);
      rep.set("graph", to_graph6(gr));
      rep.set("surface", s.name());
      EulerImpurity r = is_euler_impure(gr, s, budget);
      rep.set("deficit", r.report.deficit);
      rep.set("edge_maximal", r.report.edge_maximal);
      rep.set("complete", r.report.complete);
      rep.set("triangulates", r.report.triangulates);
      if (want_impurity && r.verdict != Verdict::unknown) {
        ImpurityResult k = impurity(gr, s, budget);
        rep.set("impurity", k.k);
        rep.set("impurity_exact", k.exact);
      }
      if (r.report.witness) emit(out_cert, *r.report.witness, {{"construction", "embedding on " + s.name()}}, rep);
      int code = r.verdict == Verdict::yes ? kHolds : r.verdict == Verdict::no ? kFails : kUnknown;
      return rep.finish(code, r.verdict == Verdict::yes ? "euler-impure" : to_string(r.verdict), r.reason);
    }
    if (census->parsed()) {
      SurfaceSpec s = surface_arg(surface);
      if (nmax < 1 || nmax > 8) throw UsageError("--nmax must be between 1 and 8");
      CensusResult c = census_euler_impure(nmax, s, budget);
      int index = 0;
      for (const auto& e : c.impure) {
        std::string path = "-";
        if (!fixtures_dir.empty()) {
          std::filesystem::create_directories(fixtures_dir);
          path = (std::filesystem::path(fixtures_dir) / ("impure_" + s.name() + "_" + std::to_string(index++) + ".emb.json"))
                     .string();
          EmbeddingCertificate cert = make_certificate(e.witness);
          cert.provenance["construction"] = "census witness on " + s.name();
          write_certificate(cert, path);
        }
        if (!common.json)
          std::cout << e.graph6 << " euler-impure deficit=" << e.deficit << " certificate=" << path << "\n";
      }
      ordered_json list = ordered_json::array();
      for (const auto& e : c.impure) list.push_back(e.graph6);
      rep.set("surface", s.name());
      rep.set("nmax", nmax);
      rep.set("graphs_examined", c.graphs);
      rep.set("searches", c.searches);
      rep.set("euler_impure", list);
      if (!c.complete) return rep.finish(kUnknown, "incomplete", std::to_string(c.undecided.size()) + " graph(s) undecided");
      return rep.finish(kHolds, "complete", std::to_string(c.impure.size()) + " euler impure graph(s)");
    }
    if (fgcmd->parsed()) {
      Plate p = gap > 0 ? gapped_plate(gap) : quad_plate_faces(depth);
      std::optional<std::filesystem::path> cache;
      if (!fixtures_dir.empty()) cache = fixtures_dir;
      FgResult r = fg_embedding(g, p, budget, cache);
      VerifyResult v = verify_certificate(r.certificate);
      rep.set("g", g);
      rep.set("vertices", r.graph.order());
      rep.set("edges", r.graph.size());
      rep.set("surface", surface_of(r.embedding).name());
      rep.set("deficit", triangulation_deficit(r.graph, {true, g}));
      rep.set("k4_quads", r.certificate.k4_quad_count);
      rep.set("face_sizes", sizes_text(r.certificate.face_sizes));
      rep.set("digest", certificate_digest(r.certificate));
      if (!out_cert.empty()) {
        write_certificate(r.certificate, out_cert);
        rep.set("certificate", out_cert);
      }
      return v.valid ? rep.finish(kHolds, "constructed") : rep.finish(kFails, "invalid", v.failure);
    }
    if (enumerate->parsed()) {
      Graph gr = load_graph(graph_arg);
      SurfaceSpec s = surface_arg(surface);
      auto pred = predicate(assertion);
      PredicateOutcome o = all_embeddings_satisfy(gr, s, pred, budget);
      rep.set("graph", to_graph6(gr));
      rep.set("surface", s.name());
      rep.set("assert", assertion);
      rep.set("visited", o.visited);
      if (o.counterexample) {
        rep.set("counterexample_faces", sizes_text(face_size_multiset(*o.counterexample)));
        emit(out_cert, *o.counterexample, {{"construction", "counterexample to " + assertion + " on " + s.name()}},
             rep);
      }
      int code = o.verdict == PredicateVerdict::holds ? kHolds
                 : o.verdict == PredicateVerdict::counterexample ? kFails
                                                                 : kUnknown;
      return rep.finish(code, to_string(o.verdict));
    }
    if (verify->parsed()) {
      EmbeddingCertificate cert = read_certificate(cert_path);
      VerifyResult v = verify_certificate(cert);
      rep.set("certificate", cert_path);
      rep.set("surface", cert.surface().name());
      rep.set("digest", certificate_digest(cert));
      return v.valid ? rep.finish(kHolds, "valid") : rep.finish(kFails, "invalid", v.failure);
    }
    if (flip->parsed() || four->parsed()) {
      EmbeddingCertificate cert = read_certificate(cert_path);
      VerifyResult v = verify_certificate(cert);
      if (!v.valid) return rep.finish(kFails, "invalid", "input certificate: " + v.failure);
      RotationEmbedding emb = certificate_embedding(cert);
      RotationEmbedding out;
      try {
        if (flip->parsed()) {
          auto comma = corners.find(',');
          if (comma == std::string::npos || face < 0) throw UsageError("--corners must look like i,j");
          out = flip_edge(emb, edge_arg(edge), static_cast<std::size_t>(face), std::stoul(corners.substr(0, comma)),
                          std::stoul(corners.substr(comma + 1)));
        } else {
          out = ensure_4face(emb);
        }
      } catch (const EmbeddingError& e) {
        return rep.finish(kFails, "rejected", e.what());
      }
      rep.set("surface", surface_of(out).name());
      rep.set("face_sizes_before", sizes_text(face_size_multiset(emb)));
      rep.set("face_sizes_after", sizes_text(face_size_multiset(out)));
      emit(out_cert, out, {{"construction", flip->parsed() ? "edge flip" : "4-face by one flip"}}, rep);
      return rep.finish(kHolds, "done");
    }
  } catch (const UsageError& e) {
    return rep.finish(kUsage, "usage-error", e.what());
  } catch (const ParseError& e) {
    return rep.finish(kUsage, "usage-error", std::string("cannot parse graph: ") + e.what());
  } catch (const GraphError& e) {
    return rep.finish(kUsage, "usage-error", e.what());
  } catch (const SearchError& e) {
    return rep.finish(kUsage, "usage-error", e.what());
  } catch (const MaximalityError& e) {
    return rep.finish(kFails, "rejected", e.what());
  } catch (const CertificateError& e) {
    return rep.finish(kFails, "invalid", e.what());
  } catch (const std::exception& e) {
    return rep.finish(kFails, "error", e.what());
  }
  return kUsage;
}
