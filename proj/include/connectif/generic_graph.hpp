#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "connectif/structure.hpp"

namespace connectif {

/// Directed graph of the irreducible connected parts ("generic points") of a
/// finite structure, with an edge a -> b whenever a strictly contains b and
/// no other generic point lies strictly between them.
struct GenericGraph {
  using Edge = std::pair<std::size_t, std::size_t>;

  std::vector<Subset> vertices;  // ascending by mask
  std::vector<Edge> edges;       // (from, to) vertex indices, sorted
  std::vector<unsigned> orders;  // per vertex

  std::vector<std::size_t> out_neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (const auto& [a, b] : edges)
      if (a == v) out.push_back(b);
    return out;
  }

  std::vector<std::size_t> in_degrees() const {
    std::vector<std::size_t> deg(vertices.size(), 0);
    for (const auto& e : edges) ++deg[e.second];
    return deg;
  }

  std::size_t index_of(Subset s) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), s);
    return (it != vertices.end() && *it == s) ? static_cast<std::size_t>(it - vertices.begin())
                                              : vertices.size();
  }
};

inline GenericGraph generic_graph(const ConnectivityStructure& s) {
  GenericGraph g;
  g.vertices = irreducibles(s);
  const std::size_t count = g.vertices.size();
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < a; ++b) {  // a subset has a smaller mask
      const Subset big = g.vertices[a];
      const Subset small = g.vertices[b];
      if (!big.strictly_contains(small)) continue;
      bool covering = true;
      for (std::size_t c = b + 1; c < a && covering; ++c) {
        const Subset mid = g.vertices[c];
        covering = !(big.strictly_contains(mid) && mid.strictly_contains(small));
      }
      if (covering) g.edges.emplace_back(a, b);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());

  // Edges only point towards smaller masks, so one ascending pass suffices.
  g.orders.assign(count, 0);
  for (std::size_t v = 0; v < count; ++v) {
    unsigned best = 0;
    bool has_out = false;
    for (const auto& [a, b] : g.edges) {
      if (a != v) continue;
      has_out = true;
      best = std::max(best, g.orders[b]);
    }
    g.orders[v] = has_out ? best + 1 : 0;
  }
  return g;
}

/// Largest order of a generic point; 0 for discrete spaces.
inline unsigned space_order(const ConnectivityStructure& s) {
  const GenericGraph g = generic_graph(s);
  return g.orders.empty() ? 0 : *std::max_element(g.orders.begin(), g.orders.end());
}

}  // namespace connectif
