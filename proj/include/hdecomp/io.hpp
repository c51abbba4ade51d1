#pragma once

// hdecomp/1 file format: canonical JSON serialization of decompositions,
// certificate reports, a plain-text edge dump, and fixture-file helpers.
//
// Canonical form (fixed key order, integers only, two-space indent, one
// trailing newline) makes identical inputs serialize to identical bytes.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdecomp/graph.hpp"
#include "hdecomp/piece.hpp"
#include "hdecomp/verify.hpp"

namespace hdecomp {

inline constexpr const char* kFormatTag = "hdecomp/1";
inline constexpr const char* kCertFormatTag = "hdecomp-cert/1";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kFixtureEnvVar = "HDECOMP_FIXTURES";

using ordered_json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error("hdecomp/1: " + what) {}
};

struct FileMeta {
  std::string generator;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
};

inline ordered_json descriptor_to_json(const GraphDescriptor& d) {
  ordered_json j;
  switch (d.kind()) {
    case GraphDescriptor::Kind::hypercube:
      j["type"] = "hypercube";
      j["n"] = d.dim();
      break;
    case GraphDescriptor::Kind::cycle:
      j["type"] = "cycle";
      j["k"] = d.cycle_length();
      break;
    case GraphDescriptor::Kind::product:
      j["type"] = "product";
      j["left"] = descriptor_to_json(d.left());
      j["right"] = descriptor_to_json(d.right());
      break;
  }
  return j;
}

inline GraphDescriptor descriptor_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw FormatError("graph object needs a string 'type'");
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "hypercube") {
      if (!j.contains("n") || !j["n"].is_number_integer()) throw FormatError("hypercube needs integer 'n'");
      return GraphDescriptor::hypercube(j["n"].get<int>());
    }
    if (type == "cycle") {
      if (!j.contains("k") || !j["k"].is_number_integer()) throw FormatError("cycle needs integer 'k'");
      return GraphDescriptor::cycle(j["k"].get<int>());
    }
    if (type == "product") {
      if (!j.contains("left") || !j.contains("right")) throw FormatError("product needs 'left' and 'right'");
      return GraphDescriptor::product(descriptor_from_json(j["left"]), descriptor_from_json(j["right"]));
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown graph type '" + type + "'");
}

inline ordered_json piece_kind_to_json(const PieceKind& k) {
  ordered_json j;
  j["kind"] = k.shape == PieceShape::cycle ? "cycle" : "sunlet";
  j["cycle_length"] = k.cycle_length;
  return j;
}

inline PieceKind piece_kind_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string() || !j.contains("cycle_length") ||
      !j["cycle_length"].is_number_integer())
    throw FormatError("piece needs string 'kind' and integer 'cycle_length'");
  const std::string kind = j["kind"].get<std::string>();
  const int k = j["cycle_length"].get<int>();
  if (k < 3) throw FormatError("cycle_length must be at least 3");
  if (kind == "cycle") return PieceKind{PieceShape::cycle, k};
  if (kind == "sunlet") return PieceKind{PieceShape::sunlet, k};
  throw FormatError("unknown piece kind '" + kind + "'");
}

inline std::string serialize_decomposition(const Decomposition& d, const FileMeta& meta) {
  ordered_json j;
  j["format_tag"] = kFormatTag;
  j["graph"] = descriptor_to_json(d.graph);
  j["piece"] = piece_kind_to_json(d.kind);
  ordered_json pieces = ordered_json::array();
  for (const Piece& p : d.pieces) {
    ordered_json jp;
    jp["cycle"] = p.cycle;
    if (d.kind.shape == PieceShape::sunlet) {
      ordered_json pendants = ordered_json::array();
      for (std::size_t i = 0; i < p.pendants.size(); ++i)
        pendants.push_back(ordered_json::array({p.cycle[i], p.pendants[i]}));
      jp["pendants"] = std::move(pendants);
    }
    pieces.push_back(std::move(jp));
  }
  j["pieces"] = std::move(pieces);
  ordered_json m;
  m["generator"] = meta.generator;
  m["seed"] = meta.seed;
  m["tool_version"] = meta.tool_version;
  j["meta"] = std::move(m);
  return j.dump(2) + "\n";
}

struct LoadedDecomposition {
  Decomposition decomposition;
  FileMeta meta;
};

inline LoadedDecomposition parse_decomposition(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("top level must be an object");
  for (const char* key : {"format_tag", "graph", "piece", "pieces", "meta"})
    if (!j.contains(key)) throw FormatError(std::string("missing key '") + key + "'");
  if (!j["format_tag"].is_string() || j["format_tag"].get<std::string>() != kFormatTag)
    throw FormatError("format_tag must be \"hdecomp/1\"");

  GraphDescriptor graph = descriptor_from_json(j["graph"]);
  const std::uint64_t vertex_count = graph.vertex_count();
  PieceKind kind = piece_kind_from_json(j["piece"]);

  auto read_label = [&](const ordered_json& v) -> Vertex {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw FormatError("labels must be nonnegative integers");
    const std::uint64_t label = v.get<std::uint64_t>();
    if (label >= vertex_count) throw FormatError("label " + std::to_string(label) + " out of range");
    return static_cast<Vertex>(label);
  };

  if (!j["pieces"].is_array()) throw FormatError("'pieces' must be an array");
  std::vector<Piece> pieces;
  pieces.reserve(j["pieces"].size());
  for (const ordered_json& jp : j["pieces"]) {
    if (!jp.is_object() || !jp.contains("cycle") || !jp["cycle"].is_array())
      throw FormatError("each piece needs a 'cycle' array");
    Piece p;
    for (const ordered_json& v : jp["cycle"]) p.cycle.push_back(read_label(v));
    if (p.cycle.size() < 3) throw FormatError("piece cycle needs at least 3 vertices");
    if (kind.shape == PieceShape::sunlet) {
      if (!jp.contains("pendants") || !jp["pendants"].is_array())
        throw FormatError("sunlet pieces need a 'pendants' array");
      if (jp["pendants"].size() != p.cycle.size())
        throw FormatError("pendants list must have exactly one entry per cycle vertex");
      std::size_t i = 0;
      for (const ordered_json& pair : jp["pendants"]) {
        if (!pair.is_array() || pair.size() != 2) throw FormatError("pendant entries are [cycle_vertex, pendant_vertex]");
        const Vertex c = read_label(pair[0]);
        const Vertex leaf = read_label(pair[1]);
        if (c != p.cycle[i])
          throw FormatError("pendant entry " + std::to_string(i) + " does not align with its cycle vertex");
        p.pendants.push_back(leaf);
        ++i;
      }
    } else if (jp.contains("pendants")) {
      throw FormatError("cycle pieces cannot carry pendants");
    }
    pieces.push_back(std::move(p));
  }

  const ordered_json& jm = j["meta"];
  if (!jm.is_object() || !jm.contains("generator") || !jm["generator"].is_string() || !jm.contains("seed") ||
      !jm["seed"].is_number() || !jm.contains("tool_version") || !jm["tool_version"].is_string())
    throw FormatError("meta needs generator, seed, tool_version");
  FileMeta meta;
  meta.generator = jm["generator"].get<std::string>();
  meta.seed = jm["seed"].get<std::uint64_t>();
  meta.tool_version = jm["tool_version"].get<std::string>();

  return LoadedDecomposition{Decomposition{std::move(graph), kind, std::move(pieces)}, std::move(meta)};
}

inline void save_decomposition_file(const std::filesystem::path& path, const Decomposition& d,
                                    const FileMeta& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << serialize_decomposition(d, meta);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline LoadedDecomposition load_decomposition_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_decomposition(buf.str());
}

// Plain-text dump: one "u v" line per edge, grouped by piece.
inline std::string serialize_edges(const Decomposition& d) {
  std::ostringstream out;
  out << "# " << d.graph.to_string() << " into " << to_string(d.kind) << ", " << d.pieces.size()
      << " pieces\n";
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    out << "piece " << i << "\n";
    for (const Edge& e : piece_edges(d.pieces[i])) out << e.a << " " << e.b << "\n";
  }
  return out.str();
}

inline std::string serialize_certificate(const ImpossibilityCertificate& cert) {
  ordered_json j;
  j["format_tag"] = kCertFormatTag;
  j["graph"] = descriptor_to_json(GraphDescriptor::hypercube(cert.dimension));
  j["piece"] = piece_kind_to_json(PieceKind{PieceShape::sunlet, 8});
  if (cert.reason == ImpossibilityCertificate::Reason::divisibility) {
    j["reason"] = "divisibility";
    j["divisor"] = cert.divisor;
    j["edge_count"] = cert.edge_count;
  } else {
    j["reason"] = "degree_counting";
    j["pieces"] = cert.pieces;
    j["forced"] = cert.forced;
    j["available"] = cert.available;
  }
  return j.dump(2) + "\n";
}

// Directory for persisted search results; empty string disables the cache.
inline std::string default_fixture_dir() {
  const char* env = std::getenv(kFixtureEnvVar);
  return env == nullptr ? std::string{} : std::string{env};
}

}  // namespace hdecomp
