#pragma once

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "braidlab/braid.hpp"

namespace braidlab {

/// A positive braid in which every pair of strands crosses at most once,
/// stored as the permutation it induces: perm[j] is the exit position of the
/// strand entering at position j (0-based).
using Permutation = std::vector<int>;

namespace garside {

inline Permutation identity(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// The half twist, Garside element of B_n.
inline Permutation half_twist(int n) {
  Permutation p(n);
  for (int j = 0; j < n; ++j) p[j] = n - 1 - j;
  return p;
}

inline Permutation generator(int n, int i) {
  Permutation p = identity(n);
  std::swap(p[i - 1], p[i]);
  return p;
}

/// Product a*b of simple braids as permutations (a acts first).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = b[a[j]];
  return r;
}

inline Permutation invert(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) r[p[j]] = static_cast<int>(j);
  return r;
}

/// Conjugation by the half twist: sigma_i -> sigma_{n-i}.
inline Permutation flip(const Permutation& p) {
  const int n = static_cast<int>(p.size());
  Permutation r(n);
  for (int j = 0; j < n; ++j) r[j] = n - 1 - p[n - 1 - j];
  return r;
}

// sigma_i (1-based) is a left divisor: strands entering at i-1, i cross.
inline bool starts_with(const Permutation& p, int i) { return p[i - 1] > p[i]; }

// sigma_i is a right divisor: strands leaving at i-1, i have crossed.
inline bool ends_with(const Permutation& p, int i) {
  const Permutation inv = invert(p);
  return inv[i - 1] > inv[i];
}

inline bool is_identity(const Permutation& p) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] != static_cast<int>(j)) return false;
  return true;
}

inline bool is_half_twist(const Permutation& p) { return p == half_twist(static_cast<int>(p.size())); }

/// Moves generators from the front of b to the back of a until the pair is
/// left-weighted. Returns true if anything changed.
inline bool make_left_weighted(Permutation& a, Permutation& b) {
  const int n = static_cast<int>(a.size());
  bool changed = false;
  for (;;) {
    const Permutation a_inv = invert(a);
    int moved = 0;
    for (int i = 1; i < n && !moved; ++i) {
      const bool in_start = b[i - 1] > b[i];
      const bool in_finish = a_inv[i - 1] > a_inv[i];
      if (in_start && !in_finish) moved = i;
    }
    if (!moved) return changed;
    const Permutation s = generator(n, moved);
    a = compose(a, s);
    b = compose(s, b);
    changed = true;
  }
}

}  // namespace garside

/// Left normal form: Delta^infimum * factors[0] * ... * factors[k-1], Delta the
/// half twist, factors simple, neither Delta nor trivial, pairwise left-weighted.
struct NormalForm {
  int strands = 2;
  long infimum = 0;
  std::vector<Permutation> factors;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline NormalForm garside_normal_form(const BraidWord& w) {
  using namespace garside;
  const int n = w.strands();
  const auto& letters = w.letters();

  // sigma_i^-1 = Delta^-1 * (Delta sigma_i^-1); pushing each Delta^-1 to the
  // front conjugates every factor to its left by Delta.
  std::vector<int> later_negatives(letters.size() + 1, 0);
  for (std::size_t t = letters.size(); t-- > 0;)
    later_negatives[t] = later_negatives[t + 1] + (letters[t] < 0 ? 1 : 0);

  NormalForm nf;
  nf.strands = n;
  nf.infimum = -later_negatives[0];
  const Permutation delta = half_twist(n);
  std::vector<Permutation> factors;
  factors.reserve(letters.size());
  for (std::size_t t = 0; t < letters.size(); ++t) {
    const int e = letters[t];
    const int i = std::abs(e);
    Permutation f = e > 0 ? generator(n, i) : compose(delta, generator(n, i));
    if (later_negatives[t + 1] % 2) f = flip(f);
    factors.push_back(std::move(f));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < factors.size(); ++k)
      changed |= make_left_weighted(factors[k], factors[k + 1]);
  }

  std::size_t lead = 0;
  while (lead < factors.size() && is_half_twist(factors[lead])) ++lead;
  nf.infimum += static_cast<long>(lead);
  std::size_t end = factors.size();
  while (end > lead && is_identity(factors[end - 1])) --end;
  nf.factors.assign(factors.begin() + static_cast<long>(lead), factors.begin() + static_cast<long>(end));
  return nf;
}

inline bool braids_equal(const BraidWord& a, const BraidWord& b) {
  require_same_strands(a, b);
  return garside_normal_form(a) == garside_normal_form(b);
}

/// Equality in B_n / <Delta_n^2>. The central power is read off the exponent
/// sums before a single normal-form comparison.
inline bool equal_mod_center(const BraidWord& a, const BraidWord& b) {
  require_same_strands(a, b);
  const int n = a.strands();
  const long diff = linking_number(a) - linking_number(b);
  const long twist_lk = static_cast<long>(n) * (n - 1);
  if (diff % twist_lk != 0) return false;
  return braids_equal(a, concat(b, power(delta_braid(n), diff / twist_lk)));
}

/// Word spelling of a normal form (Delta powers expanded), mainly for round trips.
inline BraidWord normal_form_word(const NormalForm& nf) {
  const int n = nf.strands;
  auto simple_word = [n](const Permutation& p) {
    // Bubble-sort the exit positions; each swap is one positive generator.
    std::vector<int> letters;
    std::vector<int> at(n);  // at[pos] = exit position of strand currently at pos
    for (int j = 0; j < n; ++j) at[j] = p[j];
    for (bool swapped = true; swapped;) {
      swapped = false;
      for (int i = 0; i + 1 < n; ++i)
        if (at[i] > at[i + 1]) {
          std::swap(at[i], at[i + 1]);
          letters.push_back(i + 1);
          swapped = true;
        }
    }
    return letters;
  };
  const std::vector<int> delta = simple_word(garside::half_twist(n));
  std::vector<int> letters;
  for (long k = 0; k < (nf.infimum < 0 ? -nf.infimum : nf.infimum); ++k)
    for (int e : delta) letters.push_back(nf.infimum < 0 ? -e : e);
  if (nf.infimum < 0) std::reverse(letters.begin(), letters.end());
  for (const auto& f : nf.factors)
    for (int e : simple_word(f)) letters.push_back(e);
  return BraidWord(n, std::move(letters));
}

}  // namespace braidlab
