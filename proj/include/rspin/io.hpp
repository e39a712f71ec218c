#pragma once
// JSON (de)serialization of graph documents.
//
// Schema:
//   {"r": int, "extended": bool?,
//    "vertices": [{"id": str, "kind": "open"|"closed"}, ...],
//    "half_edges": [{"id": str, "vertex": str, "sector": "boundary"|"internal",
//                    "tw": int, "alt": 0|1?, "marking": 0|[int,...]?,
//                    "cb": bool?, "anchor": bool?}, ...],
//    "pairs": [[str, str], ...]}

#include <json.hpp>

#include "graph.hpp"

namespace rspin {

using json = nlohmann::ordered_json;

inline RSpinGraph parse_graph(const json& doc) {
  auto fail = [](const std::string& path, const std::string& why) -> void {
    throw ParseError("at " + path + ": " + why);
  };
  if (!doc.is_object()) fail("$", "document must be an object");
  if (!doc.contains("r") || !doc["r"].is_number_integer()) fail("$.r", "missing integer r");

  RSpinGraph g;
  g.r = doc["r"].get<int>();
  if (g.r < 2) fail("$.r", "r must be >= 2");
  if (doc.contains("extended")) {
    if (!doc["extended"].is_boolean()) fail("$.extended", "must be a boolean");
    g.extended = doc["extended"].get<bool>();
  }

  if (doc.contains("vertices")) {
    if (!doc["vertices"].is_array()) fail("$.vertices", "must be an array");
    int i = 0;
    for (const auto& v : doc["vertices"]) {
      std::string path = "$.vertices[" + std::to_string(i++) + "]";
      if (!v.is_object() || !v.contains("id") || !v.contains("kind"))
        fail(path, "need {id, kind}");
      std::string id = v["id"].get<std::string>();
      std::string kind = v["kind"].get<std::string>();
      if (kind != "open" && kind != "closed") fail(path + ".kind", "open|closed expected");
      if (g.vertices.count(id)) fail(path + ".id", "duplicate vertex id '" + id + "'");
      g.vertices[id] = kind == "open" ? VertexKind::Open : VertexKind::Closed;
    }
  }

  if (doc.contains("half_edges")) {
    if (!doc["half_edges"].is_array()) fail("$.half_edges", "must be an array");
    int i = 0;
    for (const auto& h : doc["half_edges"]) {
      std::string path = "$.half_edges[" + std::to_string(i++) + "]";
      if (!h.is_object() || !h.contains("id") || !h.contains("vertex") ||
          !h.contains("sector") || !h.contains("tw"))
        fail(path, "need {id, vertex, sector, tw}");
      HalfEdge he;
      he.id = h["id"].get<std::string>();
      he.vertex = h["vertex"].get<std::string>();
      std::string sector = h["sector"].get<std::string>();
      if (sector != "boundary" && sector != "internal")
        fail(path + ".sector", "boundary|internal expected");
      he.sector = sector == "boundary" ? Sector::Boundary : Sector::Internal;
      if (!h["tw"].is_number_integer()) fail(path + ".tw", "integer expected");
      he.tw = h["tw"].get<int>();
      if (h.contains("alt")) {
        if (!h["alt"].is_number_integer()) fail(path + ".alt", "0|1 expected");
        he.alt = h["alt"].get<int>();
      }
      if (h.contains("marking")) {
        const auto& m = h["marking"];
        if (m.is_number_integer() && m.get<int>() == 0) {
          he.marking = Marking{};  // the zero-marker
        } else if (m.is_array()) {
          Marking mk;
          for (const auto& e : m) {
            if (!e.is_number_integer() || e.get<int>() <= 0)
              fail(path + ".marking", "positive integers expected");
            mk.insert(e.get<int>());
          }
          if (mk.empty()) fail(path + ".marking", "marking set must be nonempty (use 0)");
          he.marking = mk;
        } else {
          fail(path + ".marking", "0 or [int,...] expected");
        }
      }
      if (h.contains("cb")) he.contracted_boundary = h["cb"].get<bool>();
      if (h.contains("anchor")) he.anchor = h["anchor"].get<bool>();
      if (g.half_edges.count(he.id)) fail(path + ".id", "duplicate half-edge id");
      g.half_edges[he.id] = he;
    }
  }

  if (doc.contains("pairs")) {
    if (!doc["pairs"].is_array()) fail("$.pairs", "must be an array");
    int i = 0;
    for (const auto& p : doc["pairs"]) {
      std::string path = "$.pairs[" + std::to_string(i++) + "]";
      if (!p.is_array() || p.size() != 2) fail(path, "[h, h'] expected");
      std::string a = p[0].get<std::string>(), b = p[1].get<std::string>();
      if (g.pairing.count(a) || g.pairing.count(b))
        throw StructureError("half-edge paired twice in " + path);
      g.pairing[a] = b;
      g.pairing[b] = a;
    }
  }

  g.check_structure();
  return g;
}

inline json emit_graph(const RSpinGraph& g) {
  json doc;
  doc["r"] = g.r;
  if (g.extended) doc["extended"] = true;
  doc["vertices"] = json::array();
  for (const auto& [id, kind] : g.vertices)
    doc["vertices"].push_back({{"id", id}, {"kind", to_string(kind)}});
  doc["half_edges"] = json::array();
  for (const auto& [id, he] : g.half_edges) {
    json h = {{"id", id},
              {"vertex", he.vertex},
              {"sector", to_string(he.sector)},
              {"tw", he.tw}};
    if (he.sector == Sector::Boundary) h["alt"] = he.alt;
    if (he.marking) {
      if (he.marking->empty())
        h["marking"] = 0;
      else
        h["marking"] = *he.marking;
    }
    if (he.contracted_boundary) h["cb"] = true;
    if (he.anchor) h["anchor"] = true;
    doc["half_edges"].push_back(h);
  }
  doc["pairs"] = json::array();
  for (const auto& [a, b] : g.edges()) doc["pairs"].push_back({a, b});
  return doc;
}

}  // namespace rspin
