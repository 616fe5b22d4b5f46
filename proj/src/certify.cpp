#include "surfemb/certify.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace surfemb {

using nlohmann::json;

EmbeddingCertificate make_certificate(const RotationEmbedding& input) {
  RotationEmbedding emb = input.normalized();
  EmbeddingCertificate c;
  const Graph& g = emb.graph();
  c.n = g.order();
  c.edges = g.edges();
  c.rotation = emb.rotation();
  c.negative_edges = emb.negative_edges();
  SurfaceSpec s = surface_of(emb);
  c.orientable = s.orientable;
  c.genus = s.genus;
  c.euler_genus = s.euler_genus();
  c.face_sizes = face_size_multiset(emb);
  for (const auto& f : trace_faces(emb)) {
    Walk w = f.vertices();
    if (w.size() == 4 && induces_complete(g, w)) c.k4_quads.push_back(w);
  }
  c.k4_quad_count = static_cast<int>(c.k4_quads.size());
  if (g.order() >= 3) c.deficit = triangulation_edge_target(g.order(), c.euler_genus) - static_cast<int>(g.size());
  return c;
}

RotationEmbedding certificate_embedding(const EmbeddingCertificate& cert) {
  Graph g(cert.n, cert.edges);
  std::vector<int> sig(g.size(), 1);
  for (Edge e : cert.negative_edges) {
    int id = (e.u >= 0 && e.v >= 0 && e.u < g.order() && e.v < g.order()) ? g.edge_id(e.u, e.v) : -1;
    if (id < 0) throw EmbeddingError("dangling negative edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    if (sig[id] < 0) throw EmbeddingError("negative edge listed twice");
    sig[id] = -1;
  }
  return RotationEmbedding(g, cert.rotation, sig);
}

namespace {

VerifyResult fail(std::string why) {
  return {false, std::move(why)};
}

std::string walk_text(const Walk& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

}  // namespace

VerifyResult verify_certificate(const EmbeddingCertificate& cert) {
  if (cert.schema != kCertificateSchema) return fail("schema mismatch: expected " + std::to_string(kCertificateSchema));
  RotationEmbedding emb;
  try {
    emb = certificate_embedding(cert);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  const Graph& g = emb.graph();
  if (!g.connected()) return fail("graph is not connected");
  SurfaceSpec s = surface_of(emb);
  if (cert.orientable != s.orientable) return fail("orientability mismatch");
  if (cert.euler_genus != s.euler_genus()) return fail("euler genus mismatch");
  if (cert.genus != s.genus) return fail("surface genus mismatch");
  if (cert.face_sizes != face_size_multiset(emb)) return fail("face size multiset mismatch");
  if (cert.k4_quad_count != quad_faces_inducing_K4(emb)) return fail("K4 quad count mismatch");
  if (static_cast<int>(cert.k4_quads.size()) != cert.k4_quad_count) return fail("K4 quad list does not match its count");
  std::set<Walk> seen;
  for (const Walk& w : cert.k4_quads) {
    if (w.size() != 4 || !is_facial_walk(emb, w) || !induces_complete(g, w))
      return fail("K4 quad " + walk_text(w) + " is not a 4-face inducing K4");
    Walk key = w;
    std::rotate(key.begin(), std::min_element(key.begin(), key.end()), key.end());
    if (!seen.insert(key).second) return fail("K4 quad " + walk_text(w) + " listed twice");
  }
  for (const auto& [name, w] : cert.facial_cycles) {
    for (Vertex v : w)
      if (v < 0 || v >= g.order()) return fail("facial cycle " + name + " has an out-of-range vertex");
    if (!is_facial_cycle(emb, w)) return fail("facial cycle " + name + " is not facial");
  }
  if (cert.deficit) {
    if (g.order() < 3 || *cert.deficit != triangulation_edge_target(g.order(), s.euler_genus()) - static_cast<int>(g.size()))
      return fail("triangulation deficit mismatch");
  }
  for (const auto& [name, off] : cert.offsets)
    if (off < 0 || off >= g.order()) return fail("offset " + name + " out of range");
  return {true, ""};
}

namespace {

json edges_json(const std::vector<Edge>& es) {
  json a = json::array();
  for (Edge e : es) a.push_back({e.u, e.v});
  return a;
}

std::vector<Edge> edges_from(const json& a) {
  std::vector<Edge> out;
  for (const auto& p : a) {
    if (!p.is_array() || p.size() != 2) throw CertificateError("edge must be a pair of vertices");
    out.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return out;
}

json to_json(const EmbeddingCertificate& c) {
  json j;
  j["schema"] = c.schema;
  j["graph"] = {{"n", c.n}, {"edges", edges_json(c.edges)}};
  j["rotation"] = c.rotation;
  j["negative_edges"] = edges_json(c.negative_edges);
  j["surface"] = {{"orientable", c.orientable}, {"genus", c.genus}, {"euler_genus", c.euler_genus}};
  json sizes = json::object();
  for (auto [len, count] : c.face_sizes) sizes[std::to_string(len)] = count;
  j["face_sizes"] = sizes;
  j["k4_quads"] = {{"count", c.k4_quad_count}, {"faces", c.k4_quads}};
  j["facial_cycles"] = c.facial_cycles;
  if (c.deficit) j["deficit"] = *c.deficit;
  j["offsets"] = c.offsets;
  j["provenance"] = c.provenance;
  j["assumptions"] = c.assumptions;
  return j;
}

EmbeddingCertificate from_json(const json& j) {
  EmbeddingCertificate c;
  c.schema = j.at("schema").get<int>();
  c.n = j.at("graph").at("n").get<int>();
  c.edges = edges_from(j.at("graph").at("edges"));
  c.rotation = j.at("rotation").get<std::vector<std::vector<Vertex>>>();
  c.negative_edges = edges_from(j.at("negative_edges"));
  const json& s = j.at("surface");
  c.orientable = s.at("orientable").get<bool>();
  c.genus = s.at("genus").get<int>();
  c.euler_genus = s.at("euler_genus").get<int>();
  for (const auto& [key, value] : j.at("face_sizes").items()) {
    std::size_t used = 0;
    int len = std::stoi(key, &used);
    if (used != key.size()) throw CertificateError("face size key '" + key + "' is not an integer");
    c.face_sizes[len] = value.get<int>();
  }
  c.k4_quad_count = j.at("k4_quads").at("count").get<int>();
  c.k4_quads = j.at("k4_quads").at("faces").get<std::vector<Walk>>();
  c.facial_cycles = j.at("facial_cycles").get<std::map<std::string, Walk>>();
  if (j.contains("deficit")) c.deficit = j.at("deficit").get<int>();
  c.offsets = j.at("offsets").get<std::map<std::string, int>>();
  c.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
  c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  return c;
}

}  // namespace

std::string serialize_certificate(const EmbeddingCertificate& cert) {
  return to_json(cert).dump(2) + "\n";
}

EmbeddingCertificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateError("certificate is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw CertificateError(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw CertificateError("malformed certificate: face size key is not an integer");
  } catch (const std::out_of_range&) {
    throw CertificateError("malformed certificate: number out of range");
  }
}

void write_certificate(const EmbeddingCertificate& cert, const std::filesystem::path& path) {
  std::string text = serialize_certificate(cert);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CertificateError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw CertificateError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CertificateError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

EmbeddingCertificate read_certificate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CertificateError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_certificate(buf.str());
  } catch (const CertificateError& e) {
    throw CertificateError(path.string() + ": " + e.what());
  }
}

std::string certificate_digest(const EmbeddingCertificate& cert) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize_certificate(cert)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace surfemb
