#pragma once

#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "braidlab/braid.hpp"

namespace braidlab {

/// One crossing of a closed-braid diagram. Strands run downward; `column` i
/// means strand positions i and i+1 (1-based) cross. Arc ids refer to the
/// segments of the diagram between consecutive crossings.
struct Crossing {
  int sign = 1;
  int column = 1;
  int height = 0;  // index of the letter in the braid word
  int in_left = 0, in_right = 0, out_left = 0, out_right = 0;
};

/// Oriented diagram of the closure of a braid word.
struct LinkDiagram {
  int strands = 2;
  std::vector<Crossing> crossings;
  int arc_count = 0;
  /// Arcs at positions untouched by any crossing; each is a whole circle.
  std::vector<int> free_loops;
  /// position_arcs[p] lists arcs at position p (0-based) from top to bottom.
  std::vector<std::vector<int>> position_arcs;

  int crossing_count() const noexcept { return static_cast<int>(crossings.size()); }
  int positive_count() const noexcept {
    int k = 0;
    for (const auto& c : crossings) k += c.sign > 0;
    return k;
  }
  int negative_count() const noexcept { return crossing_count() - positive_count(); }
};

inline LinkDiagram braid_closure_diagram(const BraidWord& w) {
  LinkDiagram d;
  d.strands = w.strands();
  const int n = w.strands();
  const auto& letters = w.letters();

  // touches[p] = crossing indices touching position p, in word order.
  std::vector<std::vector<int>> touches(n);
  for (int k = 0; k < static_cast<int>(letters.size()); ++k) {
    const int i = std::abs(letters[k]) - 1;
    touches[i].push_back(k);
    touches[i + 1].push_back(k);
  }
  d.crossings.resize(letters.size());
  for (int k = 0; k < static_cast<int>(letters.size()); ++k) {
    d.crossings[k].sign = letters[k] > 0 ? 1 : -1;
    d.crossings[k].column = std::abs(letters[k]);
    d.crossings[k].height = k;
  }
  d.position_arcs.resize(n);
  int next_arc = 0;
  for (int p = 0; p < n; ++p) {
    const auto& t = touches[p];
    if (t.empty()) {
      d.free_loops.push_back(next_arc);
      d.position_arcs[p].push_back(next_arc++);
      continue;
    }
    // Arc j leaves crossing t[j] and enters t[j+1] (cyclically through the closure).
    for (std::size_t j = 0; j < t.size(); ++j) {
      const int arc = next_arc++;
      d.position_arcs[p].push_back(arc);
      Crossing& from = d.crossings[t[j]];
      Crossing& to = d.crossings[t[(j + 1) % t.size()]];
      const bool from_left = from.column - 1 == p;
      (from_left ? from.out_left : from.out_right) = arc;
      const bool to_left = to.column - 1 == p;
      (to_left ? to.in_left : to.in_right) = arc;
    }
  }
  d.arc_count = next_arc;
  return d;
}

inline long writhe(const LinkDiagram& d) {
  long w = 0;
  for (const auto& c : d.crossings) w += c.sign;
  return w;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Circles of the resolution where crossing k is smoothed vertically
/// (orientation-respecting) if vertical[k] and horizontally otherwise.
/// Returns circle index per arc, circles numbered by first appearance.
inline std::vector<int> resolution_circles(const LinkDiagram& d, const std::vector<bool>& vertical, int* count = nullptr) {
  detail::UnionFind uf(d.arc_count);
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    const auto& c = d.crossings[k];
    if (vertical[k]) {
      uf.unite(c.in_left, c.out_left);
      uf.unite(c.in_right, c.out_right);
    } else {
      uf.unite(c.in_left, c.in_right);
      uf.unite(c.out_left, c.out_right);
    }
  }
  std::vector<int> label(d.arc_count, -1), circle(d.arc_count);
  int next = 0;
  for (int a = 0; a < d.arc_count; ++a) {
    const int r = uf.find(a);
    if (label[r] < 0) label[r] = next++;
    circle[a] = label[r];
  }
  if (count) *count = next;
  return circle;
}

/// Components of the closed link: arcs follow their strand through each crossing.
inline int link_component_count(const LinkDiagram& d) {
  detail::UnionFind uf(d.arc_count);
  for (const auto& c : d.crossings) {
    uf.unite(c.in_left, c.out_right);
    uf.unite(c.in_right, c.out_left);
  }
  int components = 0;
  for (int a = 0; a < d.arc_count; ++a) components += uf.find(a) == a;
  return components;
}

inline int seifert_circle_count(const LinkDiagram& d) {
  int count = 0;
  resolution_circles(d, std::vector<bool>(d.crossings.size(), true), &count);
  return count;
}

struct RasmussenBounds {
  long lo = 0;
  long hi = 0;
};

/// 1 + w - o <= s <= -1 + w + o for any diagram with writhe w and o Seifert circles.
inline RasmussenBounds rasmussen_bounds(const LinkDiagram& d) {
  const long w = writhe(d);
  const long o = seifert_circle_count(d);
  return {1 + w - o, -1 + w + o};
}

/// PD code, one crossing per line: sign followed by four arc labels (1-based),
/// starting at the incoming under-arc and proceeding counterclockwise.
/// In a positive generator the strand from top-right to bottom-left is over.
inline std::string pd_code(const LinkDiagram& d) {
  std::ostringstream out;
  for (const auto& c : d.crossings) {
    std::array<int, 4> arcs = c.sign > 0 ? std::array<int, 4>{c.in_left, c.out_left, c.out_right, c.in_right}
                                         : std::array<int, 4>{c.in_right, c.in_left, c.out_left, c.out_right};
    out << (c.sign > 0 ? "+1" : "-1");
    for (int a : arcs) out << ' ' << a + 1;
    out << '\n';
  }
  return out.str();
}

}  // namespace braidlab
