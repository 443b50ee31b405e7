#include <gtest/gtest.h>

#include <bit>

#include "braidlab/braid.hpp"
#include "braidlab/diagram.hpp"
#include "braidlab/lee.hpp"
#include "braidlab/random.hpp"
#include "oracles.hpp"

using namespace braidlab;

namespace {

BraidWord W(int n, std::vector<int> letters) { return BraidWord(n, std::move(letters)); }

std::map<int, mpq_class> as_chain(const LeeComplex& c, const VertexChain& z, long sign = 1,
                                  std::map<int, mpq_class> acc = {}) {
  for (const auto& [l, coeff] : z.terms) {
    const int id = c.id(z.vertex, l);
    EXPECT_GE(id, 0);
    if (id >= 0) acc[id] += mpq_class(sign * coeff);
  }
  return acc;
}

std::vector<BraidWord> small_words(std::uint64_t seed, int count, int max_len) {
  Rng rng(seed);
  std::vector<BraidWord> out{W(2, {1, 1, 1}), W(3, {1, -2, 1, -2}), W(2, {1, 1}), W(2, {-1}), W(3, {1, 2})};
  while (static_cast<int>(out.size()) < count) {
    const int n = 2 + static_cast<int>(rng.below(2));
    out.push_back(random_word(rng, n, 1 + rng.below(static_cast<std::uint64_t>(max_len))));
  }
  return out;
}

}  // namespace

TEST(LeeComplex, DifferentialSquaresToZero) {
  for (const BraidWord& w : small_words(31, 25, 6)) {
    const oracle::BruteLee b = oracle::brute_lee(braid_closure_diagram(w));
    for (const auto& [h, m] : b.d) {
      auto next = b.d.find(h + 1);
      if (next == b.d.end() || m.empty() || next->second.empty()) continue;
      const auto& m2 = next->second;
      for (std::size_t i = 0; i < m2.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) {
          mpq_class acc = 0;
          for (std::size_t k = 0; k < m.size(); ++k) acc += m2[i][k] * m[k][j];
          ASSERT_EQ(acc, 0) << format_braid(w) << " h=" << h;
        }
    }
  }
}

TEST(LeeComplex, DifferentialDoesNotLowerQ) {
  for (const BraidWord& w : small_words(32, 25, 7)) {
    const LeeComplex c(braid_closure_diagram(w));
    const auto& g = c.generators();
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
      for (const auto& [t, coeff] : c.differential(i)) {
        EXPECT_GE(g[t].q, g[i].q) << format_braid(w);
        EXPECT_EQ(g[t].h, g[i].h + 1);
        EXPECT_EQ((g[t].q - g[i].q) % 4, 0);
      }
  }
}

TEST(LeeComplex, HomologyHasDimensionTwoToTheComponents) {
  for (const BraidWord& w : small_words(33, 25, 6)) {
    const LinkDiagram d = braid_closure_diagram(w);
    EXPECT_EQ(oracle::homology_dimension(oracle::brute_lee(d)), std::size_t{1} << link_component_count(d))
        << format_braid(w);
  }
}

TEST(LeeComplex, GeneratorCountsAndWindow) {
  const LinkDiagram d = braid_closure_diagram(W(3, {1, -2, 1, -2}));
  const LeeComplex full(d);
  EXPECT_EQ(full.h_min(), -2);
  EXPECT_EQ(full.h_max(), 2);
  LeeOptions opt;
  opt.h_min = -1;
  opt.h_max = 0;
  const LeeComplex window(d, opt);
  for (const auto& g : window.generators()) {
    EXPECT_GE(g.h, -1);
    EXPECT_LE(g.h, 0);
  }
  opt.crossing_limit = 3;
  EXPECT_THROW(LeeComplex(d, opt), CrossingLimitExceeded);
}

TEST(LeeComplex, CanonicalCyclesAreCycles) {
  for (const BraidWord& w : small_words(34, 30, 8)) {
    const LinkDiagram d = braid_closure_diagram(w);
    const CanonicalCycles z = canonical_lee_cycles(d);
    const ResolutionCube cube(d);
    EXPECT_TRUE(lee_boundary(cube, z.oriented).empty());
    EXPECT_TRUE(lee_boundary(cube, z.reversed).empty());
    EXPECT_EQ(std::popcount(z.oriented.vertex), d.negative_count());
  }
}

// Filtration levels computed by the sparse eliminator against dense rank
// computations on the whole complex.
TEST(LeeComplex, FiltrationLevelsMatchDenseOracle) {
  for (const BraidWord& w : small_words(35, 30, 6)) {
    const LinkDiagram d = braid_closure_diagram(w);
    const LeeComplex c(d);
    const CanonicalCycles z = canonical_lee_cycles(d);
    const oracle::BruteLee b = oracle::brute_lee(d);
    const int h0 = 0;
    const auto lo = oracle::brute_level(b, h0, as_chain(c, z.oriented));
    const auto plus = oracle::brute_level(b, h0, as_chain(c, z.reversed, 1, as_chain(c, z.oriented)));
    const auto minus = oracle::brute_level(b, h0, as_chain(c, z.reversed, -1, as_chain(c, z.oriented)));
    ASSERT_TRUE(lo && plus && minus) << format_braid(w);
    const FiltrationDegrees deg = filtration_degrees(c, z);
    EXPECT_EQ(deg.q_lo, *lo) << format_braid(w);
    EXPECT_EQ(deg.q_hi, std::max(*plus, *minus)) << format_braid(w);
  }
}

TEST(LeeComplex, WindowedAndFullComplexAgree) {
  for (const BraidWord& w : small_words(36, 20, 8)) {
    const LinkDiagram d = braid_closure_diagram(w);
    const CanonicalCycles z = canonical_lee_cycles(d);
    const FiltrationDegrees full = filtration_degrees(LeeComplex(d), z);
    const LeeResult r = rasmussen_s_exact(d);
    EXPECT_EQ(r.degrees.q_lo, full.q_lo);
    EXPECT_EQ(r.degrees.q_hi, full.q_hi);
  }
}

TEST(RasmussenExact, KnownValues) {
  auto s = [](const BraidWord& w) { return rasmussen_s_exact(braid_closure_diagram(w)).s; };
  EXPECT_EQ(s(W(2, {1, 1, 1})), 2);
  EXPECT_EQ(s(W(2, {-1, -1, -1})), -2);
  EXPECT_EQ(s(W(3, {1, -2, 1, -2})), 0);
  EXPECT_EQ(s(W(2, {1})), 0);
  EXPECT_EQ(s(W(2, {})), -1);
  EXPECT_EQ(s(W(2, {1, 1})), 1);
  EXPECT_EQ(s(W(2, {-1, -1})), -1);
  EXPECT_EQ(s(W(2, {1, 1, 1, 1, 1})), 4);
  EXPECT_EQ(s(power(W(3, {1, 2}), 4)), 6);
}

TEST(RasmussenExact, LiesWithinDiagramBounds) {
  for (const BraidWord& w : small_words(37, 40, 9)) {
    const LinkDiagram d = braid_closure_diagram(w);
    const long s = rasmussen_s_exact(d).s;
    const auto b = rasmussen_bounds(d);
    EXPECT_LE(b.lo, s);
    EXPECT_LE(s, b.hi);
    if (link_component_count(d) == 1) {
      EXPECT_EQ(rasmussen_s_exact(braid_closure_diagram(mirror(w))).s, -s);
    }
  }
}
