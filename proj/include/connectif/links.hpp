#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "connectif/brunnian.hpp"
#include "connectif/generic_graph.hpp"
#include "connectif/structure.hpp"

namespace connectif {

/// Symbolic description of a link built from knots by two constructors:
/// Split places its children on separate sides of walls, Necklace threads
/// them through a collar so that only the whole collection is inseparable.
///
/// Each Point carries the number of the link component it stands for. The
/// parser numbers points left to right; realize() may produce any order.
class LinkExpression {
 public:
  enum class Kind { Point, Split, Necklace };

  static LinkExpression point(unsigned component) { return LinkExpression(Kind::Point, {}, component); }

  static LinkExpression split(std::vector<LinkExpression> children) {
    if (children.empty()) throw BadArity("Split needs at least one child");
    return LinkExpression(Kind::Split, std::move(children), 0);
  }

  static LinkExpression necklace(std::vector<LinkExpression> children) {
    if (children.size() < 2) throw BadArity("Necklace needs at least two children");
    return LinkExpression(Kind::Necklace, std::move(children), 0);
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<LinkExpression>& children() const noexcept { return children_; }
  unsigned component() const noexcept { return component_; }

  /// Component numbers of the points, left to right.
  std::vector<unsigned> leaves() const {
    std::vector<unsigned> out;
    collect(out);
    return out;
  }

  unsigned leaf_count() const {
    if (kind_ == Kind::Point) return 1;
    unsigned total = 0;
    for (const auto& c : children_) total += c.leaf_count();
    return total;
  }

  /// Necklace nesting depth.
  unsigned necklace_height() const {
    unsigned h = 0;
    for (const auto& c : children_) h = std::max(h, c.necklace_height());
    return h + (kind_ == Kind::Necklace ? 1 : 0);
  }

  /// Text in the expression grammar; component numbers are not printed.
  std::string to_string() const {
    if (kind_ == Kind::Point) return ".";
    std::string out = kind_ == Kind::Split ? "S(" : "N(";
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (i) out += ',';
      out += children_[i].to_string();
    }
    return out + ")";
  }

  /// Same expression with its points renumbered 1..n left to right.
  LinkExpression renumbered() const {
    unsigned next = 1;
    return renumber(next);
  }

  friend bool operator==(const LinkExpression&, const LinkExpression&) = default;

 private:
  LinkExpression(Kind kind, std::vector<LinkExpression> children, unsigned component)
      : kind_(kind), children_(std::move(children)), component_(component) {}

  void collect(std::vector<unsigned>& out) const {
    if (kind_ == Kind::Point) {
      out.push_back(component_);
      return;
    }
    for (const auto& c : children_) c.collect(out);
  }

  LinkExpression renumber(unsigned& next) const {
    if (kind_ == Kind::Point) return point(next++);
    std::vector<LinkExpression> kids;
    for (const auto& c : children_) kids.push_back(c.renumber(next));
    return LinkExpression(kind_, std::move(kids), 0);
  }

  Kind kind_;
  std::vector<LinkExpression> children_;
  unsigned component_;
};

namespace detail {

// expr := "." | "S(" expr ("," expr)* ")" | "N(" expr "," expr ("," expr)* ")"
// A bare top-level list "e1, e2, ..." is read as S(e1, e2, ...).
class LinkParser {
 public:
  explicit LinkParser(std::string_view text) : text_(text) {}

  LinkExpression parse() {
    std::vector<LinkExpression> top;
    top.push_back(expr());
    while (accept(',')) top.push_back(expr());
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, top.size() == 1 ? "',' or end of input" : "end of input");
    LinkExpression e = top.size() == 1 ? std::move(top.front()) : LinkExpression::split(std::move(top));
    return e.renumbered();
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

  void expect(char c, const char* expected) {
    if (!accept(c)) throw SyntaxError(pos_, expected);
  }

  LinkExpression expr() {
    skip_space();
    const std::size_t start = pos_;
    if (accept('.')) return LinkExpression::point(0);
    const bool is_split = accept('S');
    const bool is_necklace = !is_split && accept('N');
    if (!is_split && !is_necklace) throw SyntaxError(pos_, "'.', 'S(' or 'N('");
    expect('(', "'('");
    std::vector<LinkExpression> kids;
    kids.push_back(expr());
    while (accept(',')) kids.push_back(expr());
    expect(')', "',' or ')'");
    if (is_split) return LinkExpression::split(std::move(kids));
    if (kids.size() < 2) throw ArityError(start, "Necklace needs at least two children");
    return LinkExpression::necklace(std::move(kids));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline Subset leaf_set(const LinkExpression& e) {
  Subset s;
  for (unsigned c : e.leaves()) s = s | singleton(c);
  return s;
}

inline void necklace_sets(const LinkExpression& e, std::vector<Subset>& out) {
  if (e.kind() == LinkExpression::Kind::Necklace) out.push_back(leaf_set(e));
  for (const auto& c : e.children()) necklace_sets(c, out);
}

}  // namespace detail

inline LinkExpression parse_link_expr(std::string_view text) { return detail::LinkParser(text).parse(); }

/// Connectivity structure of the link: the components under each Necklace
/// form an inseparable sub-link, and nothing else with two or more
/// components does.
inline ConnectivityStructure link_structure(const LinkExpression& expr) {
  const std::vector<unsigned> leaves = expr.leaves();
  const GroundSet ground(static_cast<long long>(leaves.size()));
  std::vector<bool> seen(leaves.size() + 1, false);
  for (unsigned c : leaves) {
    if (c < 1 || c > leaves.size() || seen[c]) {
      throw OutOfDomain("link expression points are not numbered 1..n");
    }
    seen[c] = true;
  }
  std::vector<Subset> sets;
  detail::necklace_sets(expr, sets);
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  // Necklace leaf sets are nested or disjoint, hence already closed.
  return ConnectivityStructure::from_closed_unchecked(ground, std::move(sets));
}

inline unsigned link_order(const LinkExpression& expr) { return space_order(link_structure(expr)); }

/// Why a structure lies outside the Split/Necklace class.
struct NotRealizable {
  enum class Reason { Overlap, Mismatch };
  Reason reason;
  Subset first;   // overlapping generic points (Overlap)
  Subset second;
  std::string message;
};

using Realization = std::variant<LinkExpression, NotRealizable>;

/// An expression whose link structure is `s`, when the generic points of
/// `s` are nested or disjoint (each component iterated Brunnian).
inline Realization realize(const ConnectivityStructure& s) {
  const std::vector<Subset> generic = free_generators(s);
  for (std::size_t i = 0; i < generic.size(); ++i) {
    for (std::size_t j = i + 1; j < generic.size(); ++j) {
      const Subset a = generic[i];
      const Subset b = generic[j];
      if (a.intersects(b) && !a.contains(b) && !b.contains(a)) {
        return NotRealizable{NotRealizable::Reason::Overlap, a, b,
                             "generic points " + a.to_string() + " and " + b.to_string() +
                                 " overlap without nesting"};
      }
    }
  }

  // Laminar: a part's children are its maximal generic sub-parts plus the
  // points they leave uncovered. Children are ordered by least element.
  auto build = [&](auto&& self, Subset part, bool top) -> LinkExpression {
    std::vector<Subset> kids;
    Subset covered;
    for (auto it = generic.rbegin(); it != generic.rend(); ++it) {
      const Subset g = *it;
      if (!part.strictly_contains(g) || covered.contains(g)) continue;
      if (covered.intersects(g)) continue;
      kids.push_back(g);
      covered = covered | g;
    }
    for (unsigned e : (part - covered).elements()) kids.push_back(singleton(e));
    std::sort(kids.begin(), kids.end(), [](Subset x, Subset y) {
      return std::countr_zero(x.mask()) < std::countr_zero(y.mask());
    });
    std::vector<LinkExpression> exprs;
    for (Subset k : kids) {
      exprs.push_back(k.size() == 1 ? LinkExpression::point(k.elements().front()) : self(self, k, false));
    }
    if (top) return exprs.size() == 1 ? std::move(exprs.front()) : LinkExpression::split(std::move(exprs));
    return LinkExpression::necklace(std::move(exprs));
  };

  const Subset whole = full_set(s.ground());
  const bool whole_generic = std::binary_search(generic.begin(), generic.end(), whole);
  LinkExpression expr = whole_generic ? build(build, whole, false) : build(build, whole, true);

  if (link_structure(expr) != s) {
    return NotRealizable{NotRealizable::Reason::Mismatch, Subset(), Subset(),
                         "expression " + expr.to_string() + " does not reproduce the structure"};
  }
  return expr;
}

}  // namespace connectif
