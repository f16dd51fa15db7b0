#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "connectif/generic_graph.hpp"
#include "connectif/structure.hpp"

namespace connectif {

/// Rooted tree describing an iterated Brunnian space. A node without
/// children is a point; every other node needs at least two children.
struct BrunnianTree {
  std::vector<BrunnianTree> children;

  static BrunnianTree leaf() { return {}; }
  static BrunnianTree node(std::vector<BrunnianTree> kids) { return BrunnianTree{std::move(kids)}; }

  bool is_leaf() const noexcept { return children.empty(); }

  unsigned leaf_count() const {
    if (is_leaf()) return 1;
    unsigned total = 0;
    for (const auto& c : children) total += c.leaf_count();
    return total;
  }

  unsigned height() const {
    unsigned h = 0;
    for (const auto& c : children) h = std::max(h, c.height() + 1);
    return h;
  }

  /// "." for a point, "(t1,t2,...)" otherwise.
  std::string to_string() const {
    if (is_leaf()) return ".";
    std::string out = "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) out += ',';
      out += children[i].to_string();
    }
    return out + ")";
  }

  friend bool operator==(const BrunnianTree&, const BrunnianTree&) = default;
};

/// Representative of a tree up to reordering of children.
inline BrunnianTree sorted_tree(const BrunnianTree& t) {
  BrunnianTree out;
  for (const auto& c : t.children) out.children.push_back(sorted_tree(c));
  std::sort(out.children.begin(), out.children.end(),
            [](const BrunnianTree& a, const BrunnianTree& b) { return a.to_string() < b.to_string(); });
  return out;
}

namespace detail {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  BrunnianTree parse() {
    BrunnianTree t = tree();
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BrunnianTree tree() {
    skip_space();
    const std::size_t start = pos_;
    if (accept('.')) return BrunnianTree::leaf();
    if (!accept('(')) throw SyntaxError(pos_, "'.' or '('");
    BrunnianTree t;
    t.children.push_back(tree());
    while (accept(',')) t.children.push_back(tree());
    if (!accept(')')) throw SyntaxError(pos_, "',' or ')'");
    if (t.children.size() < 2) {
      throw BadArity("internal node at position " + std::to_string(start) + " has fewer than two children");
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline BrunnianTree parse_tree(std::string_view text) { return detail::TreeParser(text).parse(); }

/// Disjoint union of the spaces, renumbered block by block in list order,
/// with the whole new ground set added as one more connected part.
inline ConnectivityStructure brunnian_union(std::span<const ConnectivityStructure> spaces) {
  if (spaces.empty()) throw EmptyList();
  unsigned total = 0;
  for (const auto& s : spaces) total += s.size();
  const GroundSet ground(total);
  std::vector<Subset> kstar;
  unsigned offset = 0;
  for (const auto& s : spaces) {
    for (Subset k : s.kstar()) kstar.push_back(Subset(k.mask() << offset));
    offset += s.size();
  }
  if (total >= 2) kstar.push_back(full_set(ground));
  std::sort(kstar.begin(), kstar.end());
  kstar.erase(std::unique(kstar.begin(), kstar.end()), kstar.end());
  return ConnectivityStructure::from_closed_unchecked(ground, std::move(kstar));
}

inline ConnectivityStructure brunnian_union(std::initializer_list<ConnectivityStructure> spaces) {
  return brunnian_union(std::span<const ConnectivityStructure>(spaces.begin(), spaces.size()));
}

/// Leaves become one-point spaces; an internal node is the Brunnian union
/// of its children. Leaves are numbered left to right.
inline ConnectivityStructure iterated_brunnian(const BrunnianTree& tree) {
  if (tree.is_leaf()) return discrete(1);
  if (tree.children.size() < 2) throw BadArity("internal node with fewer than two children");
  std::vector<ConnectivityStructure> parts;
  parts.reserve(tree.children.size());
  for (const auto& c : tree.children) parts.push_back(iterated_brunnian(c));
  return brunnian_union(parts);
}

/// The tree witnessing that `s` is iterated Brunnian, i.e. that its generic
/// graph is a rooted tree; children are listed by ascending mask.
inline std::optional<BrunnianTree> is_iterated_brunnian(const ConnectivityStructure& s) {
  const GenericGraph g = generic_graph(s);
  const auto deg = g.in_degrees();
  std::size_t roots = 0;
  std::size_t root = 0;
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] == 0) {
      ++roots;
      root = v;
    } else if (deg[v] > 1) {
      return std::nullopt;
    }
  }
  if (roots != 1) return std::nullopt;

  std::vector<std::vector<std::size_t>> kids(g.vertices.size());
  for (const auto& [a, b] : g.edges) kids[a].push_back(b);
  auto build = [&](auto&& self, std::size_t v) -> BrunnianTree {
    BrunnianTree t;
    for (std::size_t c : kids[v]) t.children.push_back(self(self, c));
    return t;
  };
  return build(build, root);
}

}  // namespace connectif
