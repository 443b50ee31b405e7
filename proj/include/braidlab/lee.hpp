#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "braidlab/diagram.hpp"
#include "braidlab/error.hpp"

namespace braidlab {

using VertexMask = std::uint32_t;
using LabelMask = std::uint32_t;  // bit c set: circle c carries X, clear: 1

/// Circles of one resolution: circle index of every arc plus one
/// representative arc per circle.
struct ResolutionVertex {
  VertexMask mask = 0;
  int circle_count = 0;
  std::vector<int> circle_of_arc;
  std::vector<int> representative;
};

/// What happens to the circles along the cube edge v -> v + e_j.
struct CubeEdge {
  bool merge = false;
  int sign = 1;
  int first = 0, second = 0;       // circles at the crossing: in the source (merge) or target (split)
  int joined = 0;                  // merge: target circle; split: source circle
  std::vector<int> source_circle;  // per target circle, its source circle (-1 for the circles above)
};

/// Cube of resolutions of a closed-braid diagram. Bit j of a vertex mask is
/// the smoothing of crossing j: 0 is the oriented smoothing for a positive
/// crossing and the unoriented one for a negative crossing.
class ResolutionCube {
 public:
  explicit ResolutionCube(LinkDiagram d) : diagram_(std::move(d)) {
    if (diagram_.crossing_count() > 31) throw DomainError("resolution cube limited to 31 crossings");
  }

  const LinkDiagram& diagram() const noexcept { return diagram_; }
  int crossing_count() const noexcept { return diagram_.crossing_count(); }

  bool vertical(int k, bool bit) const { return bit == (diagram_.crossings[k].sign < 0); }

  /// Vertex whose resolution is the Seifert (oriented) resolution.
  VertexMask oriented_vertex() const {
    VertexMask v = 0;
    for (int k = 0; k < crossing_count(); ++k)
      if (diagram_.crossings[k].sign < 0) v |= VertexMask{1} << k;
    return v;
  }

  ResolutionVertex vertex(VertexMask mask) const {
    std::vector<bool> vert(crossing_count());
    for (int k = 0; k < crossing_count(); ++k) vert[k] = vertical(k, (mask >> k) & 1u);
    ResolutionVertex rv;
    rv.mask = mask;
    rv.circle_of_arc = resolution_circles(diagram_, vert, &rv.circle_count);
    rv.representative.assign(rv.circle_count, -1);
    for (int a = 0; a < diagram_.arc_count; ++a)
      if (rv.representative[rv.circle_of_arc[a]] < 0) rv.representative[rv.circle_of_arc[a]] = a;
    return rv;
  }

  CubeEdge edge(const ResolutionVertex& from, const ResolutionVertex& to, int j) const {
    const Crossing& c = diagram_.crossings[j];
    auto sides = [&](const ResolutionVertex& rv, bool bit) {
      const int other = vertical(j, bit) ? c.in_right : c.out_left;
      return std::pair{rv.circle_of_arc[c.in_left], rv.circle_of_arc[other]};
    };
    CubeEdge e;
    e.sign = std::popcount(from.mask & ((VertexMask{1} << j) - 1)) % 2 ? -1 : 1;
    const auto [a, b] = sides(from, false);
    e.merge = a != b;
    e.source_circle.assign(to.circle_count, -1);
    for (int t = 0; t < to.circle_count; ++t) e.source_circle[t] = from.circle_of_arc[to.representative[t]];
    if (e.merge) {
      e.first = a;
      e.second = b;
      e.joined = to.circle_of_arc[c.in_left];
      e.source_circle[e.joined] = -1;
    } else {
      const auto [p, q] = sides(to, true);
      e.first = p;
      e.second = q;
      e.joined = a;
      e.source_circle[p] = -1;
      e.source_circle[q] = -1;
    }
    return e;
  }

  /// Lee differential along one edge applied to a basis element:
  /// m(1,1)=1, m(1,X)=m(X,1)=X, m(X,X)=1; D(1)=1X+X1, D(X)=XX+11.
  template <class Emit>
  static void apply(const CubeEdge& e, LabelMask labels, Emit&& emit) {
    LabelMask base = 0;
    for (std::size_t t = 0; t < e.source_circle.size(); ++t)
      if (e.source_circle[t] >= 0 && ((labels >> e.source_circle[t]) & 1u)) base |= LabelMask{1} << t;
    if (e.merge) {
      const LabelMask x = ((labels >> e.first) ^ (labels >> e.second)) & 1u;
      emit(base | (x << e.joined), e.sign);
    } else {
      const LabelMask p = LabelMask{1} << e.first, q = LabelMask{1} << e.second;
      if ((labels >> e.joined) & 1u) {
        emit(base | p | q, e.sign);
        emit(base, e.sign);
      } else {
        emit(base | q, e.sign);
        emit(base | p, e.sign);
      }
    }
  }

 private:
  LinkDiagram diagram_;
};

struct LeeGenerator {
  VertexMask vertex = 0;
  LabelMask labels = 0;
  int h = 0;
  long q = 0;
};

struct LeeOptions {
  int crossing_limit = 16;
  /// Homological window [h_min, h_max]; defaults to the whole cube.
  std::optional<int> h_min, h_max;
  /// Generators with q >= q_ceiling are dropped. Only valid for questions
  /// whose answer lies below the ceiling (d never lowers q).
  std::optional<long> q_ceiling;
};

/// Filtered Lee complex over Q (integer matrix entries) on a window of
/// homological degrees. differential[g] lists (target, coefficient) for every
/// generator g below the top degree of the window.
class LeeComplex {
 public:
  LeeComplex(const LinkDiagram& d, const LeeOptions& opt = {}) : cube_(d) {
    const int c = d.crossing_count();
    if (c > opt.crossing_limit) throw CrossingLimitExceeded(c, opt.crossing_limit);
    n_plus_ = d.positive_count();
    n_minus_ = d.negative_count();
    h_min_ = std::max(opt.h_min.value_or(-n_minus_), -n_minus_);
    h_max_ = std::min(opt.h_max.value_or(n_plus_), n_plus_);
    ceiling_ = opt.q_ceiling;

    for (int h = h_min_; h <= h_max_; ++h) {
      const int weight = h + n_minus_;
      for_each_vertex(c, weight, [&](VertexMask v) { add_vertex(v); });
    }
    differential_.resize(generators_.size());
    for (std::size_t vi = 0; vi < blocks_.size(); ++vi) {
      const Block& blk = blocks_[vi];
      if (std::popcount(blk.vertex.mask) - n_minus_ >= h_max_) continue;
      for (int j = 0; j < c; ++j) {
        if ((blk.vertex.mask >> j) & 1u) continue;
        const VertexMask target = blk.vertex.mask | (VertexMask{1} << j);
        const Block& tb = blocks_[index_.at(target)];
        const CubeEdge e = cube_.edge(blk.vertex, tb.vertex, j);
        for (LabelMask l = 0; l < blk.ids.size(); ++l) {
          const int g = blk.ids[l];
          if (g < 0) continue;
          ResolutionCube::apply(e, l, [&](LabelMask tl, int coeff) {
            const int t = tb.ids[tl];
            if (t >= 0) differential_[g].emplace_back(t, coeff);
          });
        }
      }
    }
  }

  const ResolutionCube& cube() const noexcept { return cube_; }
  const LinkDiagram& diagram() const noexcept { return cube_.diagram(); }
  int h_min() const noexcept { return h_min_; }
  int h_max() const noexcept { return h_max_; }
  int n_plus() const noexcept { return n_plus_; }
  int n_minus() const noexcept { return n_minus_; }
  std::optional<long> q_ceiling() const noexcept { return ceiling_; }

  const std::vector<LeeGenerator>& generators() const noexcept { return generators_; }
  const std::vector<std::pair<int, int>>& differential(int g) const { return differential_[g]; }

  /// Generator id of (vertex, labels), or -1 if outside the window/ceiling.
  int id(VertexMask v, LabelMask l) const {
    auto it = index_.find(v);
    if (it == index_.end()) return -1;
    const auto& ids = blocks_[it->second].ids;
    return l < ids.size() ? ids[l] : -1;
  }

  long q_degree(int circles, LabelMask l, VertexMask v) const {
    return static_cast<long>(circles) - 2L * std::popcount(l) + std::popcount(v) + n_plus_ - 2L * n_minus_;
  }

 private:
  struct Block {
    ResolutionVertex vertex;
    std::vector<int> ids;  // by label mask
  };

  template <class F>
  static void for_each_vertex(int c, int weight, F&& f) {
    if (weight < 0 || weight > c) return;
    if (weight == 0) {
      f(VertexMask{0});
      return;
    }
    // Gosper's hack over c-bit masks of the given weight.
    VertexMask v = (VertexMask{1} << weight) - 1;
    const std::uint64_t limit = std::uint64_t{1} << c;
    while (v < limit) {
      f(v);
      const VertexMask low = v & (~v + 1);
      const VertexMask ripple = v + low;
      if (ripple == 0) break;
      v = (((ripple ^ v) >> 2) / low) | ripple;
    }
  }

  void add_vertex(VertexMask v) {
    Block blk;
    blk.vertex = cube_.vertex(v);
    const int k = blk.vertex.circle_count;
    if (k > 24) throw DomainError("resolution with too many circles for the exact engine");
    blk.ids.assign(std::size_t{1} << k, -1);
    const int h = std::popcount(v) - n_minus_;
    for (LabelMask l = 0; l < blk.ids.size(); ++l) {
      const long q = q_degree(k, l, v);
      if (ceiling_ && q >= *ceiling_) continue;
      blk.ids[l] = static_cast<int>(generators_.size());
      generators_.push_back({v, l, h, q});
    }
    index_.emplace(v, blocks_.size());
    blocks_.push_back(std::move(blk));
  }

  ResolutionCube cube_;
  int n_plus_ = 0, n_minus_ = 0, h_min_ = 0, h_max_ = 0;
  std::optional<long> ceiling_;
  std::vector<LeeGenerator> generators_;
  std::vector<Block> blocks_;
  std::unordered_map<VertexMask, std::size_t> index_;
  std::vector<std::vector<std::pair<int, int>>> differential_;
};

inline LeeComplex build_lee_complex(const LinkDiagram& d, const LeeOptions& opt = {}) { return LeeComplex(d, opt); }

/// Chain supported on a single cube vertex, integer coefficients by label mask.
struct VertexChain {
  VertexMask vertex = 0;
  std::vector<std::pair<LabelMask, long>> terms;
};

/// Lee's canonical cycles s_o and s_obar at the oriented resolution. For a
/// closed braid the Seifert circles are concentric and coherently oriented,
/// so the a/b pattern (a = 1 + X, b = X - 1) alternates with nesting depth.
struct CanonicalCycles {
  VertexChain oriented;
  VertexChain reversed;
};

namespace detail {

inline VertexChain tensor_of_labels(VertexMask v, const std::vector<bool>& use_a) {
  VertexChain z;
  z.vertex = v;
  const int k = static_cast<int>(use_a.size());
  for (LabelMask l = 0; l < (LabelMask{1} << k); ++l) {
    long coeff = 1;
    for (int c = 0; c < k; ++c)
      if (!((l >> c) & 1u) && !use_a[c]) coeff = -coeff;  // the 1-coefficient of b is -1
    z.terms.emplace_back(l, coeff);
  }
  return z;
}

}  // namespace detail

/// Applies the Lee differential to a single-vertex chain directly on the cube.
/// Returns the nonzero terms as (vertex, labels, coefficient).
inline std::vector<std::tuple<VertexMask, LabelMask, long>> lee_boundary(const ResolutionCube& cube,
                                                                         const VertexChain& z) {
  std::map<std::pair<VertexMask, LabelMask>, long> acc;
  const ResolutionVertex from = cube.vertex(z.vertex);
  for (int j = 0; j < cube.crossing_count(); ++j) {
    if ((z.vertex >> j) & 1u) continue;
    const VertexMask target = z.vertex | (VertexMask{1} << j);
    const ResolutionVertex to = cube.vertex(target);
    const CubeEdge e = cube.edge(from, to, j);
    for (const auto& [l, coeff] : z.terms)
      ResolutionCube::apply(e, l, [&](LabelMask tl, int s) { acc[{target, tl}] += coeff * s; });
  }
  std::vector<std::tuple<VertexMask, LabelMask, long>> out;
  for (const auto& [key, coeff] : acc)
    if (coeff != 0) out.emplace_back(key.first, key.second, coeff);
  return out;
}

inline CanonicalCycles canonical_lee_cycles(const LinkDiagram& d) {
  const ResolutionCube cube(d);
  const VertexMask v = cube.oriented_vertex();
  const ResolutionVertex rv = cube.vertex(v);
  std::vector<bool> oriented(rv.circle_count), reversed(rv.circle_count);
  for (int p = 0; p < d.strands; ++p) {
    const int circle = rv.circle_of_arc[d.position_arcs[p].front()];
    oriented[circle] = p % 2 == 0;
    reversed[circle] = p % 2 != 0;
  }
  CanonicalCycles z{detail::tensor_of_labels(v, oriented), detail::tensor_of_labels(v, reversed)};
  if (!lee_boundary(cube, z.oriented).empty() || !lee_boundary(cube, z.reversed).empty())
    throw std::logic_error("canonical Lee chain is not a cycle");
  return z;
}

namespace detail {

struct CoefficientOverflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw CoefficientOverflow{};
  return r;
}
inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline bool is_zero(std::int64_t a) { return a == 0; }
inline bool is_negative(std::int64_t a) { return a < 0; }

inline mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
inline mpz_class gcd_abs(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
inline bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
inline bool is_negative(const mpz_class& a) { return sgn(a) < 0; }

template <class Scalar>
using SparseVector = std::vector<std::pair<int, Scalar>>;  // sorted by row order

// Sparse elimination of the map d: C^{-1} -> C^0 with a few pinned vectors
// carried along. Each pivot (row b, column a) has q(b) minimal within column
// a, so clearing row b elsewhere only adds entries of q >= q(b): the best
// attainable min-q over x + im(d) is unchanged for every pinned x. Any such
// pivot order is therefore valid; sparsest columns go first to limit fill-in.
template <class Scalar>
class FilteredEliminator {
 public:
  explicit FilteredEliminator(std::vector<long> row_q) : row_q_(std::move(row_q)), row_cols_(row_q_.size()) {}

  int add_column(SparseVector<Scalar> col, bool pinned) {
    const int c = static_cast<int>(cols_.size());
    for (const auto& [r, x] : col) row_cols_[r].push_back(c);
    cols_.push_back(std::move(col));
    pinned_.push_back(pinned);
    alive_.push_back(true);
    return c;
  }

  void eliminate() {
    using Entry = std::pair<std::size_t, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (int c = 0; c < static_cast<int>(cols_.size()); ++c)
      if (!pinned_[c] && !cols_[c].empty()) queue.emplace(cols_[c].size(), c);
    while (!queue.empty()) {
      const auto [nnz, a] = queue.top();
      queue.pop();
      if (!alive_[a] || cols_[a].empty()) continue;
      if (nnz != cols_[a].size()) {
        queue.emplace(cols_[a].size(), a);
        continue;
      }
      const int b = choose_pivot_row(cols_[a]);
      const std::vector<int> touched = std::move(row_cols_[b]);
      row_cols_[b].clear();
      alive_[a] = false;
      for (int c : touched) {
        if (c == a || !alive_[c]) continue;
        if (clear_row(c, a, b) && !pinned_[c] && !cols_[c].empty()) queue.emplace(cols_[c].size(), c);
      }
    }
  }

  const SparseVector<Scalar>& column(int c) const { return cols_[c]; }

  /// Minimal q over the entries of column c, or nothing for the zero vector.
  std::optional<long> min_q(int c) const {
    std::optional<long> q;
    for (const auto& [r, x] : cols_[c])
      if (!q || row_q_[r] < *q) q = row_q_[r];
    return q;
  }

 private:
  int choose_pivot_row(const SparseVector<Scalar>& col) const {
    long q = std::numeric_limits<long>::max();
    for (const auto& [r, x] : col) q = std::min(q, row_q_[r]);
    int best = -1;
    std::tuple<bool, std::size_t, int> best_key{};
    for (const auto& [r, x] : col) {
      if (row_q_[r] != q) continue;
      const bool unit = x == Scalar(1) || x == Scalar(-1);
      const std::tuple<bool, std::size_t, int> key{!unit, row_cols_[r].size(), r};
      if (best < 0 || key < best_key) {
        best = r;
        best_key = key;
      }
    }
    return best;
  }

  // Clears row b of column c with pivot column a. Returns false if row b was
  // not present (stale row list entry).
  bool clear_row(int c, int a, int b) {
    SparseVector<Scalar>& v = cols_[c];
    const SparseVector<Scalar>& w = cols_[a];
    auto vb = std::lower_bound(v.begin(), v.end(), b, [](const auto& e, int r) { return e.first < r; });
    if (vb == v.end() || vb->first != b) return false;
    auto wb = std::lower_bound(w.begin(), w.end(), b, [](const auto& e, int r) { return e.first < r; });
    Scalar alpha = wb->second, beta = vb->second;
    const Scalar g = gcd_abs(alpha, beta);
    alpha /= g;
    beta /= g;

    scratch_.clear();
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
      if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
        scratch_.emplace_back(v[i].first, mul(alpha, v[i].second));
        ++i;
      } else if (i == v.size() || w[j].first < v[i].first) {
        scratch_.emplace_back(w[j].first, sub(Scalar(0), mul(beta, w[j].second)));
        row_cols_[w[j].first].push_back(c);
        ++j;
      } else {
        Scalar x = sub(mul(alpha, v[i].second), mul(beta, w[j].second));
        if (!is_zero(x)) scratch_.emplace_back(v[i].first, std::move(x));
        ++i;
        ++j;
      }
    }
    Scalar content(0);
    for (const auto& [r, x] : scratch_) content = gcd_abs(content, x);
    if (!is_zero(content) && content != Scalar(1))
      for (auto& [r, x] : scratch_) x /= content;
    v.swap(scratch_);
    return true;
  }

  std::vector<long> row_q_;
  std::vector<std::vector<int>> row_cols_;  // may hold stale column ids
  std::vector<SparseVector<Scalar>> cols_;
  std::vector<bool> pinned_, alive_;
  SparseVector<Scalar> scratch_;
};

}  // namespace detail

/// Extreme filtration levels of the canonical classes in Lee homology:
/// q_lo = level of [s_o], q_hi = max level of [s_o + s_obar], [s_o - s_obar].
/// The level of [x] is the largest j with [x] in the image of H(F_j C) -> H(C),
/// i.e. the largest min-q over representatives x + d(y).
struct FiltrationDegrees {
  long q_lo = 0;
  long q_hi = 0;
};

class TruncatedBelowAnswer : public std::runtime_error {
 public:
  TruncatedBelowAnswer() : std::runtime_error("filtration level lies above the complex's q ceiling") {}
};

namespace detail {

template <class Scalar>
FiltrationDegrees filtration_degrees_impl(const LeeComplex& c, const CanonicalCycles& z) {
  const int h0 = std::popcount(z.oriented.vertex) - c.n_minus();
  if (h0 < c.h_min() || h0 > c.h_max() || (h0 - 1 < c.h_min() && c.h_min() > -c.n_minus()))
    throw DomainError("complex window must contain homological degrees -1 and 0");
  const auto& gens = c.generators();

  // Rows: degree-0 generators, columns: images of degree -1 generators.
  std::vector<int> row_of(gens.size(), -1);
  std::vector<long> row_q;
  for (int g = 0; g < static_cast<int>(gens.size()); ++g)
    if (gens[g].h == h0) {
      row_of[g] = static_cast<int>(row_q.size());
      row_q.push_back(gens[g].q);
    }

  FilteredEliminator<Scalar> elim(std::move(row_q));
  for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
    if (gens[g].h != h0 - 1) continue;
    SparseVector<Scalar> col;
    for (const auto& [t, coeff] : c.differential(g)) col.emplace_back(row_of[t], Scalar(coeff));
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    elim.add_column(std::move(col), false);
  }

  auto pin = [&](int sign_of_reversed) {
    std::map<int, long> acc;
    auto add = [&](const VertexChain& ch, long s) {
      for (const auto& [l, coeff] : ch.terms) {
        const int id = c.id(ch.vertex, l);
        if (id >= 0) acc[row_of[id]] += s * coeff;
      }
    };
    add(z.oriented, 1);
    if (sign_of_reversed) add(z.reversed, sign_of_reversed);
    SparseVector<Scalar> x;
    for (const auto& [r, coeff] : acc)
      if (coeff) x.emplace_back(r, Scalar(coeff));
    return elim.add_column(std::move(x), true);
  };
  const int x_o = pin(0), x_plus = pin(1), x_minus = pin(-1);
  elim.eliminate();
  auto level = [&](int col) { return elim.min_q(col); };

  auto require = [&](std::optional<long> q) {
    if (!q) {
      if (c.q_ceiling()) throw TruncatedBelowAnswer();
      throw std::logic_error("canonical Lee class vanished in homology");
    }
    return *q;
  };
  FiltrationDegrees out;
  out.q_lo = require(level(x_o));
  out.q_hi = std::max(require(level(x_plus)), require(level(x_minus)));
  return out;
}

}  // namespace detail

inline FiltrationDegrees filtration_degrees(const LeeComplex& c, const CanonicalCycles& z) {
  try {
    return detail::filtration_degrees_impl<std::int64_t>(c, z);
  } catch (const detail::CoefficientOverflow&) {
    return detail::filtration_degrees_impl<mpz_class>(c, z);
  }
}

struct LeeResult {
  long s = 0;
  FiltrationDegrees degrees;
};

/// Rasmussen invariant from the filtered Lee complex, s = (q_lo + q_hi) / 2.
/// Only homological degrees -1 and 0 are built.
inline LeeResult rasmussen_s_exact(const LinkDiagram& d, int crossing_limit = 16) {
  if (d.crossing_count() > crossing_limit) throw CrossingLimitExceeded(d.crossing_count(), crossing_limit);
  const CanonicalCycles z = canonical_lee_cycles(d);
  LeeOptions opt;
  opt.crossing_limit = crossing_limit;
  opt.h_min = -1;
  opt.h_max = 0;
  const FiltrationDegrees deg = filtration_degrees(LeeComplex(d, opt), z);
  if ((deg.q_lo + deg.q_hi) % 2 != 0) throw std::logic_error("Lee filtration levels of odd total parity");
  if (link_component_count(d) == 1 && deg.q_hi - deg.q_lo != 2)
    throw std::logic_error("knot with q_hi - q_lo != 2 in Lee homology");
  return {(deg.q_lo + deg.q_hi) / 2, deg};
}

/// Line-based dump: "gen <id> <h> <q> <vertex> <labels>" then "d <src> <dst> <coeff>".
inline void dump_lee_complex(const LeeComplex& c, std::ostream& out) {
  const auto& gens = c.generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    out << "gen " << g << ' ' << gens[g].h << ' ' << gens[g].q << ' ' << gens[g].vertex << ' ' << gens[g].labels
        << '\n';
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (const auto& [t, coeff] : c.differential(static_cast<int>(g)))
      out << "d " << g << ' ' << t << ' ' << coeff << '\n';
}

}  // namespace braidlab
