#pragma once

// JSON documents: graph files, exact matrices, certificates, weighted
// digraphs and pair-catalog records. Matrices are nested arrays of exact
// rational strings ("p/q", or "p" for integers); vertices and colors are
// 1-based in every document.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lgt/cospectral.hpp"
#include "lgt/error.hpp"
#include "lgt/graph.hpp"
#include "lgt/linalg.hpp"
#include "lgt/search.hpp"
#include "lgt/transplant.hpp"

namespace lgt::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + ": missing field '" + key + "'");
  return *it;
}

inline long integer_field(const json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_number_integer()) throw ParseError(path + "." + key + ": expected an integer");
  return v.get<long>();
}

}  // namespace detail

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + detail::position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Graph documents

inline json graph_to_json(const ColoredGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    json item;
    item["color"] = g.color_name(e.color);
    item["kind"] = to_string(e.kind);
    if (e.kind == EdgeKind::link) item["u"] = e.u + 1;
    item["v"] = e.kind == EdgeKind::link ? e.v + 1 : e.u + 1;
    edges.push_back(std::move(item));
  }
  json doc;
  doc["version"] = kSchemaVersion;
  doc["n"] = g.n();
  doc["colors"] = g.color_names();
  doc["edges"] = std::move(edges);
  return doc;
}

// Structural parse; the returned graph may still be invalid (see
// ColoredGraph::validation()).
inline ColoredGraph graph_from_json_unchecked(const json& doc) {
  const std::string root = "graph";
  if (!doc.is_object()) throw ParseError(root + ": expected an object");
  if (auto it = doc.find("version"); it != doc.end() && (!it->is_number_integer() || it->get<int>() != kSchemaVersion))
    throw ParseError(root + ".version: unsupported schema version");
  long n = detail::integer_field(doc, "n", root);
  if (n <= 0) throw ParseError(root + ".n: n must be positive");
  const auto& colors = detail::field(doc, "colors", root);
  if (!colors.is_array() || colors.empty()) throw ParseError(root + ".colors: expected a nonempty array of names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (!colors[i].is_string()) throw ParseError(root + ".colors[" + std::to_string(i) + "]: expected a string");
    auto name = colors[i].get<std::string>();
    for (const auto& prev : names)
      if (prev == name) throw ParseError(root + ".colors[" + std::to_string(i) + "]: duplicate color name '" + name + "'");
    names.push_back(std::move(name));
  }
  const auto& edges = detail::field(doc, "edges", root);
  if (!edges.is_array()) throw ParseError(root + ".edges: expected an array");
  std::vector<ColoredEdge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = root + ".edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    const auto& c = detail::field(e, "color", path);
    int color = -1;
    if (c.is_string()) {
      for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == c.get<std::string>()) color = static_cast<int>(j);
      if (color < 0) throw ParseError(path + ".color: unknown color '" + c.get<std::string>() + "'");
    } else if (c.is_number_integer()) {
      color = c.get<int>() - 1;
      if (color < 0 || color >= static_cast<int>(names.size())) throw ParseError(path + ".color: color index out of range");
    } else {
      throw ParseError(path + ".color: expected a color name or 1-based index");
    }
    const auto& kind = detail::field(e, "kind", path);
    if (!kind.is_string()) throw ParseError(path + ".kind: expected a string");
    const auto k = kind.get<std::string>();
    long v = detail::integer_field(e, "v", path);
    if (v < 1 || v > n) throw ParseError(path + ".v: vertex out of range 1.." + std::to_string(n));
    if (k == "link") {
      long u = detail::integer_field(e, "u", path);
      if (u < 1 || u > n) throw ParseError(path + ".u: vertex out of range 1.." + std::to_string(n));
      out.push_back({color, EdgeKind::link, static_cast<int>(std::min(u, v) - 1), static_cast<int>(std::max(u, v) - 1)});
    } else if (k == "nloop") {
      out.push_back(ColoredEdge::nloop(color, static_cast<int>(v - 1)));
    } else if (k == "dloop") {
      out.push_back(ColoredEdge::dloop(color, static_cast<int>(v - 1)));
    } else {
      throw ParseError(path + ".kind: expected one of link|nloop|dloop, got '" + k + "'");
    }
  }
  const auto k = static_cast<int>(names.size());
  return ColoredGraph(static_cast<int>(n), k, std::move(out), std::move(names));
}

inline ColoredGraph graph_from_json(const json& doc) {
  auto g = graph_from_json_unchecked(doc);
  if (!g.valid()) {
    std::string msg = "graph validation failed:";
    for (const auto& v : g.validation().violations) msg += "\n  " + v;
    throw InvalidGraph(msg);
  }
  return g;
}

inline ColoredGraph parse_graph(std::string_view text) { return graph_from_json(parse_json(text)); }
inline std::string serialize_graph(const ColoredGraph& g) { return graph_to_json(g).dump(2); }

// ---------------------------------------------------------------------------
// Matrices and polynomials

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>) r.push_back(to_string(m(i, j)));
      else r.push_back(std::to_string(m(i, j)));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline ExactMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError(path + "[" + std::to_string(r) + "]: ragged or non-array row");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& x = j[r][c];
      const std::string at = path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (x.is_string()) {
        try {
          m(r, c) = parse_rational(x.get<std::string>());
        } catch (const ParseError& e) {
          throw ParseError(at + ": " + e.what());
        }
      } else if (x.is_number_integer()) {
        m(r, c) = Rational(x.get<long>());
      } else {
        throw ParseError(at + ": expected a rational string");
      }
    }
  }
  return m;
}

inline json polynomial_to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(to_string(c));
  return coeffs;
}

inline json word_to_json(const ColoredGraph& g, const Word& w) {
  json out = json::array();
  for (int c : w) out.push_back(g.color_name(c));
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

inline json certificate_to_json(const ColoredGraph& g, const ColoredGraph& h, const TransplantCertificate& cert) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["type"] = "transplant-certificate";
  doc["verdict"] = to_string(cert.verdict);
  doc["graphs"] = {{"source", graph_to_json(g)}, {"target", graph_to_json(h)}};
  doc["canonical_keys"] = {{"source", canonical_form(g).to_hex()}, {"target", canonical_form(h).to_hex()}};
  if (cert.dims) doc["dims"] = {cert.dims->source_source, cert.dims->target_target, cert.dims->source_target};
  if (cert.refutation) {
    doc["refutation"] = {{"word", word_to_json(g, cert.refutation->word)},
                         {"trace_source", cert.refutation->trace_g},
                         {"trace_target", cert.refutation->trace_h}};
  }
  if (cert.transplantable()) {
    doc["block_sizes"] = cert.block_sizes;
    doc["T"] = matrix_to_json(*cert.witness);
    if (cert.line_transplantation) doc["T_L"] = matrix_to_json(*cert.line_transplantation);
  }
  return doc;
}

struct CertificateCheck {
  std::vector<std::string> problems;
  bool ok() const noexcept { return problems.empty(); }
};

// Re-verifies a transplantable certificate from its own contents: canonical
// keys, invertibility and intertwining of T, and T_L both as the matrix
// derived from T and as an invertible intertwiner of the line graphs.
inline CertificateCheck check_certificate(const json& doc) {
  CertificateCheck out;
  auto problem = [&](std::string s) { out.problems.push_back(std::move(s)); };
  if (!doc.is_object() || doc.value("type", "") != "transplant-certificate")
    throw ParseError("certificate: not a transplant-certificate document");
  const auto& graphs = detail::field(doc, "graphs", "certificate");
  auto g = graph_from_json(detail::field(graphs, "source", "certificate.graphs"));
  auto h = graph_from_json(detail::field(graphs, "target", "certificate.graphs"));
  if (doc.value("verdict", "") != "transplantable") {
    problem("certificate does not claim transplantability");
    return out;
  }
  const auto& keys = detail::field(doc, "canonical_keys", "certificate");
  if (keys.value("source", "") != canonical_form(g).to_hex()) problem("source canonical key mismatch");
  if (keys.value("target", "") != canonical_form(h).to_hex()) problem("target canonical key mismatch");
  if (g.n() != h.n() || g.k() != h.k()) {
    problem("graphs differ in vertex or color count");
    return out;
  }
  auto t = matrix_from_json(detail::field(doc, "T", "certificate"), "certificate.T");
  if (t.rows() != static_cast<std::size_t>(g.n()) || !t.is_square()) {
    problem("T has the wrong shape");
    return out;
  }
  if (determinant(t) == 0) problem("T is singular");
  if (!intertwines(adjacency_matrices<Rational>(g), t, adjacency_matrices<Rational>(h))) {
    problem("T does not intertwine the color matrices");
    return out;
  }
  const auto sizes = index_edges(g).block_sizes();
  if (doc.contains("block_sizes") && doc["block_sizes"].get<std::vector<std::size_t>>() != sizes)
    problem("block sizes do not match tr(I + A^c)/2");
  if (doc.contains("T_L")) {
    auto tl = matrix_from_json(doc["T_L"], "certificate.T_L");
    if (tl != build_line_transplantation(t, g, h)) problem("T_L is not the line transplantation of T");
    else if (!verify_line_certificate(tl, g, h)) problem("T_L does not certify the line graphs");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weighted digraphs and search records

inline json digraph_to_json(const WeightedDigraph& d) {
  json w = json::array();
  for (const auto& x : d.weights.weights) w.push_back(to_string(x));
  return {{"vertices", d.vertices},
          {"flavor", to_string(d.weights.flavor)},
          {"weights", std::move(w)},
          {"source", d.source_fingerprint},
          {"adjacency", matrix_to_json(d.adjacency)},
          {"char_poly", polynomial_to_json(d.char_poly)},
          {"char_poly_text", d.char_poly.to_string("x")}};
}

inline json pair_record_to_json(const PairRecord& r) {
  json doc;
  doc["key_a"] = r.key_a.to_hex();
  doc["key_b"] = r.key_b.to_hex();
  doc["verdict"] = to_string(r.certificate.verdict);
  if (r.certificate.dims)
    doc["dims"] = {r.certificate.dims->source_source, r.certificate.dims->target_target, r.certificate.dims->source_target};
  doc["block_sizes"] = r.certificate.block_sizes;
  doc["line_graph_isomorphic"] = r.line_graph_isomorphic ? json(*r.line_graph_isomorphic) : json(nullptr);
  doc["certificate_verified"] = r.certificate_verified;
  doc["graph_a"] = graph_to_json(r.a);
  doc["graph_b"] = graph_to_json(r.b);
  if (r.certificate.witness) doc["T"] = matrix_to_json(*r.certificate.witness);
  if (r.certificate.line_transplantation) doc["T_L"] = matrix_to_json(*r.certificate.line_transplantation);
  return doc;
}

}  // namespace lgt::io
