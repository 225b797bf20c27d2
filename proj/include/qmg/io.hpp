#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmg/cubulation.hpp"
#include "qmg/error.hpp"
#include "qmg/graph.hpp"
#include "qmg/graph_products.hpp"
#include "qmg/groups.hpp"
#include "qmg/hyperplanes.hpp"
#include "qmg/recognition.hpp"
#include "qmg/relhyp.hpp"

// JSON schemas
//
//   graph         {"vertices": N, "edges": [[i, j], ...], "labels": {"i": "name", ...}}
//                 labels optional; an array of N strings is accepted too
//   presentation  {"gamma": graph, "groups": [{"cyclic": n} | {"table": [[...], ...]} | "infinite", ...]}
//   labelled      {"gamma": graph, "finiteness": ["finite" | "infinite", ...]}

namespace qmg::io {

using nlohmann::json;

[[noreturn]] inline void malformed(const std::string& what) { throw Error(Errc::MalformedInput, what); }

inline json parse_json(const std::string& text, const std::string& origin = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(origin + ": " + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

inline std::uint64_t as_count(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) malformed(what + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

// ---------------------------------------------------------------------------
// Graph

inline json to_json(const Graph& g) {
  json edges = json::array();
  for (Edge e : g.edges()) edges.push_back({e.u, e.v});
  json out = {{"vertices", g.size()}, {"edges", std::move(edges)}};
  if (g.has_labels()) {
    json labels = json::object();
    for (Vertex v = 0; v < g.size(); ++v) labels[std::to_string(v)] = g.labels()[v];
    out["labels"] = std::move(labels);
  }
  return out;
}

inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) malformed("graph needs 'vertices' and 'edges'");
  const auto n = as_count(j["vertices"], "graph.vertices");
  if (!j["edges"].is_array()) malformed("graph.edges must be an array");
  std::vector<Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) malformed("each edge must be a pair [i, j]");
    auto a = as_count(e[0], "edge endpoint");
    auto b = as_count(e[1], "edge endpoint");
    if (a >= n || b >= n) malformed("edge endpoint out of range");
    if (a == b) malformed("self-loop at vertex " + std::to_string(a));
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  std::vector<std::string> labels;
  if (j.contains("labels") && !j["labels"].is_null()) {
    const json& l = j["labels"];
    labels.resize(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = std::to_string(v);
    if (l.is_array()) {
      if (l.size() != n) malformed("labels array must have one entry per vertex");
      for (std::size_t v = 0; v < n; ++v) {
        if (!l[v].is_string()) malformed("labels must be strings");
        labels[v] = l[v].get<std::string>();
      }
    } else if (l.is_object()) {
      for (const auto& [key, value] : l.items()) {
        std::size_t v = 0;
        try {
          std::size_t used = 0;
          v = std::stoul(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          malformed("label key '" + key + "' is not a vertex index");
        }
        if (v >= n) malformed("label key out of range");
        if (!value.is_string()) malformed("labels must be strings");
        labels[v] = value.get<std::string>();
      }
    } else {
      malformed("labels must be an object or an array");
    }
  }
  return Graph(n, edges, std::move(labels));
}

inline json to_json(const VertexSet& s) { return s.members(); }

inline json to_json(const std::vector<VertexSet>& sets) {
  json out = json::array();
  for (const auto& s : sets) out.push_back(to_json(s));
  return out;
}

inline VertexSet vertex_set_from_json(const json& j, std::size_t universe) {
  if (!j.is_array()) malformed("vertex set must be an array");
  VertexSet s(universe);
  for (const auto& v : j) {
    auto x = as_count(v, "vertex");
    if (x >= universe) malformed("vertex " + std::to_string(x) + " out of range");
    s.insert(static_cast<Vertex>(x));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Groups and presentations

inline GroupSpec group_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "infinite") return SymbolicInfinite{};
    malformed("unknown group '" + j.get<std::string>() + "'");
  }
  if (!j.is_object()) malformed("group must be \"infinite\", {\"cyclic\": n} or {\"table\": ...}");
  try {
    if (j.contains("cyclic")) {
      auto n = as_count(j["cyclic"], "cyclic order");
      if (n == 0 || n > 1'000'000) malformed("cyclic order out of range");
      return FiniteGroup::cyclic(static_cast<std::uint32_t>(n));
    }
    if (j.contains("table")) {
      if (!j["table"].is_array()) malformed("table must be an array of rows");
      std::vector<std::vector<FiniteGroup::Element>> t;
      for (const auto& row : j["table"]) {
        if (!row.is_array()) malformed("table rows must be arrays");
        auto& r = t.emplace_back();
        for (const auto& x : row) r.push_back(static_cast<FiniteGroup::Element>(as_count(x, "table entry")));
      }
      return FiniteGroup::from_table(std::move(t));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedInput) throw;
    malformed(std::string("invalid group: ") + e.what());
  }
  malformed("group must be \"infinite\", {\"cyclic\": n} or {\"table\": ...}");
}

inline json to_json(const GroupSpec& g) {
  if (std::holds_alternative<SymbolicInfinite>(g)) return "infinite";
  return {{"table", std::get<FiniteGroup>(g).table()}};
}

/// Parses "cyclic:n" (or "Z/n").
inline FiniteGroup group_from_string(const std::string& text) {
  std::string digits;
  if (text.rfind("cyclic:", 0) == 0)
    digits = text.substr(7);
  else if (text.rfind("Z/", 0) == 0)
    digits = text.substr(2);
  else
    malformed("group must be written cyclic:n");
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
    malformed("bad cyclic order in '" + text + "'");
  auto n = std::stoul(digits);
  if (n == 0) malformed("cyclic order must be positive");
  return FiniteGroup::cyclic(static_cast<std::uint32_t>(n));
}

inline GraphProductPresentation presentation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("gamma") || !j.contains("groups")) malformed("presentation needs 'gamma' and 'groups'");
  Graph gamma = graph_from_json(j["gamma"]);
  if (!j["groups"].is_array()) malformed("groups must be an array");
  std::vector<GroupSpec> groups;
  for (const auto& g : j["groups"]) groups.push_back(group_from_json(g));
  if (groups.size() != gamma.size()) malformed("need one group per vertex of gamma");
  try {
    return GraphProductPresentation(std::move(gamma), std::move(groups));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

inline LabelledGamma labelled_gamma_from_json(const json& j) {
  if (!j.is_object() || !j.contains("gamma") || !j.contains("finiteness"))
    malformed("labelled gamma needs 'gamma' and 'finiteness'");
  Graph gamma = graph_from_json(j["gamma"]);
  if (!j["finiteness"].is_array()) malformed("finiteness must be an array");
  std::vector<Finiteness> f;
  for (const auto& x : j["finiteness"]) {
    if (x == "finite")
      f.push_back(Finiteness::Finite);
    else if (x == "infinite")
      f.push_back(Finiteness::Infinite);
    else
      malformed("finiteness entries must be \"finite\" or \"infinite\"");
  }
  if (f.size() != gamma.size()) malformed("need one finiteness flag per vertex of gamma");
  if (gamma.size() == 0) malformed("gamma must be nonempty");
  return LabelledGamma(std::move(gamma), std::move(f));
}

inline json to_json(const SyllableWord& w) {
  json syllables = json::array();
  for (Syllable s : w) syllables.push_back({s.vertex, s.element});
  return syllables;
}

// ---------------------------------------------------------------------------
// Results

inline json to_json(const RecognitionVerdict& v) {
  json out = {{"status", std::string(to_string(v.status))}};
  if (!v.positive()) out["witness"] = {{"kind", std::string(to_string(v.witness_kind))}, {"vertices", v.witness}};
  return out;
}

inline json to_json(const HyperplaneDecomposition& d) {
  const Graph& g = d.host();
  json classes = json::array(), sectors = json::array(), fibers = json::array(), carriers = json::array();
  for (ClassId j = 0; j < d.size(); ++j) {
    json edges = json::array();
    for (EdgeId e : d.edges(j)) edges.push_back({g.edges()[e].u, g.edges()[e].v});
    classes.push_back(std::move(edges));
    sectors.push_back(to_json(d.sectors(j)));
    fibers.push_back(to_json(d.fibers(j)));
    carriers.push_back(to_json(d.carrier(j)));
  }
  return {{"classes", std::move(classes)},
          {"sectors", std::move(sectors)},
          {"fibers", std::move(fibers)},
          {"carriers", std::move(carriers)},
          {"crossing_graph", to_json(crossing_graph(d))}};
}

inline json to_json(const PeripheralCollection& c) {
  json stages = json::array();
  for (const auto& s : c.history) stages.push_back(to_json(s));
  return {{"members", to_json(c.members)}, {"stages", std::move(stages)}, {"iterations", c.iterations}};
}

inline json to_json(const Classification& c) {
  return {{"verdict", std::string(to_string(c.verdict))},
          {"peripherals", to_json(c.peripherals.members)},
          {"iterations", c.peripherals.iterations},
          {"degenerate", c.degenerate}};
}

inline json to_json(const QuasiIsometryReport& r) {
  json out = {{"max_additive_error", r.max_additive_error},
              {"coboundedness", r.coboundedness},
              {"injective", r.injective}};
  out["lambda"] = r.lambda ? json(*r.lambda) : json(nullptr);
  return out;
}

}  // namespace qmg::io
