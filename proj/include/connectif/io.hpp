#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "connectif/enumerate.hpp"
#include "connectif/generic_graph.hpp"
#include "connectif/structure.hpp"

namespace connectif::io {

using nlohmann::json;

/// A structure plus optional display names for its points.
struct LabeledStructure {
  ConnectivityStructure structure;
  std::optional<std::vector<std::string>> labels;
};

/// {"n": 4, "connected": [[1,2],[2,3],[1,2,3],[1,2,3,4]], "labels": [...]}
inline json to_json(const ConnectivityStructure& s,
                    const std::optional<std::vector<std::string>>& labels = std::nullopt) {
  json connected = json::array();
  for (Subset k : s.kstar()) connected.push_back(k.elements());
  json out = {{"n", s.size()}, {"connected", connected}};
  if (labels) out["labels"] = *labels;
  return out;
}

/// Reads and validates the structure schema. Parts may come in any order;
/// singletons are accepted and dropped.
inline LabeledStructure structure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
    throw OutOfDomain("structure JSON needs an integer \"n\"");
  }
  const GroundSet ground(j.at("n").get<long long>());
  std::vector<Subset> sets;
  if (j.contains("connected")) {
    const json& list = j.at("connected");
    if (!list.is_array()) throw OutOfDomain("\"connected\" must be an array of arrays");
    for (const json& part : list) {
      if (!part.is_array()) throw OutOfDomain("\"connected\" must be an array of arrays");
      Subset s;
      for (const json& e : part) {
        if (!e.is_number_integer()) throw OutOfDomain("elements must be integers");
        const long long v = e.get<long long>();
        if (v < 1 || v > static_cast<long long>(ground.size())) throw OutOfRange(0, ground.size());
        s = s | singleton(static_cast<unsigned>(v));
      }
      sets.push_back(s);
    }
  }
  LabeledStructure out{make_structure(ground, sets), std::nullopt};
  if (j.contains("labels")) {
    auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != ground.size()) throw OutOfDomain("\"labels\" must have length n");
    out.labels = std::move(labels);
  }
  return out;
}

inline LabeledStructure parse_structure(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw OutOfDomain(std::string("invalid JSON: ") + e.what());
  }
  return structure_from_json(j);
}

/// Set literal "1,2;2,3;1,2,3": sets separated by ';', elements by ','.
/// The empty string is the empty list.
inline std::vector<Subset> parse_sets(std::string_view text, const GroundSet& ground) {
  std::vector<Subset> out;
  std::size_t pos = 0;
  auto trimmed = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  if (trimmed(text).empty()) return out;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(';', pos), text.size());
    const std::string_view chunk = text.substr(pos, end - pos);
    Subset s;
    std::size_t p = 0;
    while (p <= chunk.size()) {
      const std::size_t comma = std::min(chunk.find(',', p), chunk.size());
      const std::string_view token = trimmed(chunk.substr(p, comma - p));
      if (token.empty()) throw SyntaxError(pos + p, "an element number");
      unsigned long long value = 0;
      for (char ch : token) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw SyntaxError(pos + p, "an element number");
        value = value * 10 + static_cast<unsigned>(ch - '0');
        if (value > 1000) throw OutOfRange(0, ground.size());
      }
      if (value < 1 || value > ground.size()) throw OutOfRange(0, ground.size());
      s = s | singleton(static_cast<unsigned>(value));
      p = comma + 1;
    }
    out.push_back(s);
    pos = end + 1;
  }
  return out;
}

inline json sets_json(const std::vector<Subset>& sets) {
  json out = json::array();
  for (Subset s : sets) out.push_back(s.elements());
  return out;
}

/// {"n":5,"s":254076,"c":252000,"k":2076,"f":13,"hist":{"0":1,...}}
inline json stats_json(const EnumStats& st) {
  json hist = json::object();
  for (std::size_t i = 0; i < st.hist.size(); ++i) {
    if (st.hist[i] != 0) hist[std::to_string(i)] = st.hist[i];
  }
  json out = {{"n", st.n}, {"s", st.s}, {"c", st.c}, {"k", st.k}, {"f", st.f}, {"hist", hist}};
  if (!st.complete) out["complete"] = false;
  return out;
}

inline std::string part_label(Subset s, const std::optional<std::vector<std::string>>& labels) {
  if (!labels) return s.to_string();
  std::string out = "{";
  bool first = true;
  for (unsigned e : s.elements()) {
    if (!first) out += ',';
    out += (*labels)[e - 1];
    first = false;
  }
  return out + "}";
}

inline std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Graphviz rendering: one node per generic point with an order attribute,
/// one edge per covering inclusion.
inline std::string to_dot(const GenericGraph& g, const std::optional<std::vector<std::string>>& labels = std::nullopt) {
  std::ostringstream out;
  out << "digraph generic {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    out << "  v" << v << " [label=\"" << dot_escape(part_label(g.vertices[v], labels)) << "\", order=" << g.orders[v]
        << "];\n";
  }
  for (const auto& [a, b] : g.edges) out << "  v" << a << " -> v" << b << ";\n";
  out << "}\n";
  return out.str();
}

inline json to_json(const GenericGraph& g) {
  json vertices = json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    vertices.push_back({{"set", g.vertices[v].elements()}, {"order", g.orders[v]}});
  }
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"vertices", vertices}, {"edges", edges}};
}

}  // namespace connectif::io
