#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surfemb/embedding.hpp"
#include "surfemb/graph.hpp"

namespace surfemb {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kCertificateSchema = 1;

/// Raw, unverified certificate contents. Everything except the graph,
/// rotation and negative edges is a claim that verification recomputes.
struct EmbeddingCertificate {
  int schema = kCertificateSchema;
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> rotation;
  std::vector<Edge> negative_edges;

  bool orientable = true;
  int genus = 0;
  int euler_genus = 0;
  std::map<int, int> face_sizes;
  int k4_quad_count = 0;
  std::vector<Walk> k4_quads;
  // Named cycles claimed to bound a face (in either direction).
  std::map<std::string, Walk> facial_cycles;
  std::optional<int> deficit;  // claimed triangulation deficit on the surface
  // Named vertex offsets, e.g. where a joined graph's labels start.
  std::map<std::string, int> offsets;

  std::map<std::string, std::string> provenance;
  std::vector<std::string> assumptions;

  SurfaceSpec surface() const { return {orientable, genus}; }
};

// Certificate whose claims are computed from emb.normalized(). Facial cycles,
// offsets, provenance and assumptions are left for the caller to add.
EmbeddingCertificate make_certificate(const RotationEmbedding& emb);

// Rebuilds the embedding; throws EmbeddingError/GraphError on bad data.
RotationEmbedding certificate_embedding(const EmbeddingCertificate& cert);

struct VerifyResult {
  bool valid = false;
  std::string failure;  // first failing claim
};

VerifyResult verify_certificate(const EmbeddingCertificate& cert);

// Key-sorted JSON text, two-space indent, trailing newline.
std::string serialize_certificate(const EmbeddingCertificate& cert);
EmbeddingCertificate parse_certificate(const std::string& text);

// Writes to a temporary sibling and renames it into place.
void write_certificate(const EmbeddingCertificate& cert, const std::filesystem::path& path);
EmbeddingCertificate read_certificate(const std::filesystem::path& path);

// FNV-1a 64-bit digest of the serialized text, as 16 hex digits.
std::string certificate_digest(const EmbeddingCertificate& cert);

}  // namespace surfemb
