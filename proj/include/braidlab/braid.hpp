#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidlab/error.hpp"

namespace braidlab {

/// A word in the standard generators of B_n. Letter e stands for
/// sigma_{|e|} when e > 0 and for its inverse when e < 0.
class BraidWord {
 public:
  BraidWord() = default;

  explicit BraidWord(int strands, std::vector<int> letters = {})
      : strands_(strands), letters_(std::move(letters)) {
    if (strands_ < 2) throw DomainError("braid needs at least 2 strands, got " + std::to_string(strands_));
    for (int e : letters_) check_letter(e);
  }

  int strands() const noexcept { return strands_; }
  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  void push_back(int e) {
    check_letter(e);
    letters_.push_back(e);
  }

  /// Word equality (letter by letter), not equality in the group.
  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  void check_letter(int e) const {
    if (e == 0) throw DomainError("braid letter 0 is not a generator");
    if (std::abs(e) > strands_ - 1)
      throw DomainError("letter " + std::to_string(e) + " out of range for B_" + std::to_string(strands_));
  }

  int strands_ = 2;
  std::vector<int> letters_;
};

inline BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt) {
  std::vector<int> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed braid letter '" + token + "'");
    }
    if (used != token.size()) throw DomainError("malformed braid letter '" + token + "'");
    if (e == 0) throw DomainError("braid letter 0 is not a generator");
    letters.push_back(e);
  }
  int n = 0;
  if (strands) {
    n = *strands;
  } else {
    int top = 0;
    for (int e : letters) top = std::max(top, std::abs(e));
    n = top + 1;
  }
  return BraidWord(n, std::move(letters));
}

inline std::string format_braid(const BraidWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w.letters()[i]);
  }
  return out;
}

inline void require_same_strands(const BraidWord& a, const BraidWord& b) {
  if (a.strands() != b.strands())
    throw DomainError("strand mismatch: B_" + std::to_string(a.strands()) + " vs B_" + std::to_string(b.strands()));
}

inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
  require_same_strands(a, b);
  std::vector<int> letters = a.letters();
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return BraidWord(a.strands(), std::move(letters));
}

inline BraidWord inverse(const BraidWord& w) {
  std::vector<int> letters(w.letters().rbegin(), w.letters().rend());
  for (int& e : letters) e = -e;
  return BraidWord(w.strands(), std::move(letters));
}

/// Negates every letter in place; the closure becomes the mirror link.
inline BraidWord mirror(const BraidWord& w) {
  std::vector<int> letters = w.letters();
  for (int& e : letters) e = -e;
  return BraidWord(w.strands(), std::move(letters));
}

inline BraidWord power(const BraidWord& w, long k) {
  const BraidWord base = k < 0 ? inverse(w) : w;
  std::vector<int> letters;
  letters.reserve(base.length() * static_cast<std::size_t>(k < 0 ? -k : k));
  for (long i = 0; i < (k < 0 ? -k : k); ++i)
    letters.insert(letters.end(), base.letters().begin(), base.letters().end());
  return BraidWord(w.strands(), std::move(letters));
}

/// Exponent sum; the abelianization B_n -> Z.
inline long linking_number(const BraidWord& w) {
  long lk = 0;
  for (int e : w.letters()) lk += e > 0 ? 1 : -1;
  return lk;
}

inline bool is_positive(const BraidWord& w) {
  return std::all_of(w.letters().begin(), w.letters().end(), [](int e) { return e > 0; });
}

inline bool is_negative(const BraidWord& w) {
  return std::all_of(w.letters().begin(), w.letters().end(), [](int e) { return e < 0; });
}

/// True when the word uses only sigma_1, sigma_2^-1, sigma_3, ... or only the
/// opposite parity class. The empty word counts as alternating.
inline bool is_alternating(const BraidWord& w) {
  auto in_class = [&](int parity) {
    return std::all_of(w.letters().begin(), w.letters().end(),
                       [parity](int e) { return (e > 0) == (std::abs(e) % 2 == parity); });
  };
  return in_class(1) || in_class(0);
}

/// The full twist (sigma_1 ... sigma_{n-1})^n generating the center of B_n.
inline BraidWord delta_braid(int n) {
  if (n < 2) throw DomainError("full twist needs n >= 2");
  std::vector<int> letters;
  for (int r = 0; r < n; ++r)
    for (int i = 1; i < n; ++i) letters.push_back(i);
  return BraidWord(n, std::move(letters));
}

/// a = sigma_1...sigma_{n-1} (order n mod center) and b = a * sigma_1 (order n-1).
inline std::pair<BraidWord, BraidWord> torsion_generators(int n) {
  if (n < 2) throw DomainError("torsion generators need n >= 2");
  std::vector<int> a;
  for (int i = 1; i < n; ++i) a.push_back(i);
  std::vector<int> b = a;
  b.push_back(1);
  return {BraidWord(n, std::move(a)), BraidWord(n, std::move(b))};
}

/// Permutation induced on strand positions (0-based): perm[j] is where the
/// strand entering at position j leaves the braid.
struct ClosurePermutation {
  std::vector<int> perm;
  std::vector<std::vector<int>> cycles;
};

inline ClosurePermutation closure_permutation(const BraidWord& w) {
  const int n = w.strands();
  std::vector<int> at(n);  // at[pos] = strand currently at pos
  std::iota(at.begin(), at.end(), 0);
  for (int e : w.letters()) {
    const int i = std::abs(e) - 1;
    std::swap(at[i], at[i + 1]);
  }
  ClosurePermutation out;
  out.perm.assign(n, 0);
  for (int pos = 0; pos < n; ++pos) out.perm[at[pos]] = pos;
  std::vector<bool> seen(n, false);
  for (int j = 0; j < n; ++j) {
    if (seen[j]) continue;
    std::vector<int> cycle;
    for (int k = j; !seen[k]; k = out.perm[k]) {
      seen[k] = true;
      cycle.push_back(k);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

inline int closure_component_count(const BraidWord& w) {
  return static_cast<int>(closure_permutation(w).cycles.size());
}

inline bool closes_to_knot(const BraidWord& w) { return closure_component_count(w) == 1; }

/// Columns 1..n-1 not used by any letter; each one splits the closure.
inline std::vector<int> unused_columns(const BraidWord& w) {
  std::vector<bool> used(w.strands(), false);
  for (int e : w.letters()) used[std::abs(e)] = true;
  std::vector<int> out;
  for (int i = 1; i < w.strands(); ++i)
    if (!used[i]) out.push_back(i);
  return out;
}

/// The closure of w rewritten as a split union of smaller braid closures.
/// `unknots` counts pieces that reduced to a single unknotted strand.
struct ClosureDecomposition {
  std::vector<BraidWord> pieces;
  int unknots = 0;

  int piece_count() const noexcept { return static_cast<int>(pieces.size()) + unknots; }
};

namespace detail {

// Free reduction including the cyclic ends (conjugation keeps the closure).
inline std::vector<int> cyclically_reduce(const std::vector<int>& letters) {
  std::vector<int> stack;
  for (int e : letters) {
    if (!stack.empty() && stack.back() == -e)
      stack.pop_back();
    else
      stack.push_back(e);
  }
  std::size_t lo = 0, hi = stack.size();
  while (hi - lo >= 2 && stack[lo] == -stack[hi - 1]) {
    ++lo;
    --hi;
  }
  return {stack.begin() + static_cast<long>(lo), stack.begin() + static_cast<long>(hi)};
}

// Drops the single occurrence of sigma_{n-1}^{+-1}, if any (Markov destabilization).
inline bool destabilize_top(int& n, std::vector<int>& letters) {
  const auto top = std::count_if(letters.begin(), letters.end(), [n](int e) { return std::abs(e) == n - 1; });
  if (top != 1) return false;
  auto it = std::find_if(letters.begin(), letters.end(), [n](int e) { return std::abs(e) == n - 1; });
  std::rotate(letters.begin(), it + 1, letters.end());
  letters.pop_back();
  --n;
  return true;
}

inline void decompose(int n, std::vector<int> letters, ClosureDecomposition& out) {
  for (;;) {
    letters = cyclically_reduce(letters);
    if (n == 1) {
      ++out.unknots;
      return;
    }
    std::vector<bool> used(n, false);
    for (int e : letters) used[std::abs(e)] = true;
    int gap = 0;
    for (int i = 1; i < n && !gap; ++i)
      if (!used[i]) gap = i;
    if (gap) {
      std::vector<int> left, right;
      for (int e : letters) {
        if (std::abs(e) < gap)
          left.push_back(e);
        else
          right.push_back(e > 0 ? e - gap : e + gap);
      }
      decompose(gap, std::move(left), out);
      decompose(n - gap, std::move(right), out);
      return;
    }
    if (destabilize_top(n, letters)) continue;
    // Conjugation by the half twist maps sigma_i to sigma_{n-i}.
    for (int& e : letters) e = e > 0 ? n - e : -(n + e);
    if (destabilize_top(n, letters)) continue;
    for (int& e : letters) e = e > 0 ? n - e : -(n + e);
    break;
  }
  out.pieces.emplace_back(n, std::move(letters));
}

}  // namespace detail

/// Closure-preserving simplification: cyclic free reduction, Markov
/// destabilization at either end, and splitting at unused columns.
inline ClosureDecomposition decompose_closure(const BraidWord& w) {
  ClosureDecomposition out;
  detail::decompose(w.strands(), w.letters(), out);
  return out;
}

}  // namespace braidlab
