#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "braidlab/braid.hpp"
#include "braidlab/diagram.hpp"
#include "braidlab/lee.hpp"
#include "braidlab/seifert.hpp"

namespace braidlab {

enum class SMethod { positive, alternating, split, exact, bounds_only };

inline std::string_view to_string(SMethod m) {
  switch (m) {
    case SMethod::positive: return "positive";
    case SMethod::alternating: return "alternating";
    case SMethod::split: return "split";
    case SMethod::exact: return "exact";
    case SMethod::bounds_only: return "bounds-only";
  }
  return "?";
}

struct SResult {
  long value = 0;
  SMethod method = SMethod::exact;
  /// Diagram bounds 1+w-o <= s <= -1+w+o; the only information when bounds_only.
  RasmussenBounds bounds;
};

struct SOptions {
  int crossing_limit = 16;
  /// Also run the exact engine when a closed formula applies (and compare).
  bool cross_check_exact = false;
};

class MethodDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rasmussen invariant of the closure of w. Dispatch order after closure
/// simplification: positive braid formula 1 + lk - n, alternating knot
/// (s = sigma), split union (sum - (pieces - 1)), exact Lee engine. When
/// several routes apply they are all evaluated and must agree.
inline SResult rasmussen_s(const BraidWord& w, const SOptions& opt = {}) {
  SResult out;
  out.bounds = rasmussen_bounds(braid_closure_diagram(w));

  auto check = [](bool have, long a, long b, SMethod m1, SMethod m2) {
    if (have && a != b)
      throw MethodDisagreement("s disagrees between " + std::string(to_string(m1)) + " (" + std::to_string(a) +
                               ") and " + std::string(to_string(m2)) + " (" + std::to_string(b) + ")");
  };

  bool have = false;
  if (is_positive(w)) {
    out.value = 1 + linking_number(w) - w.strands();
    out.method = SMethod::positive;
    have = true;
  }
  if (is_alternating(w) && closes_to_knot(w)) {
    const long sigma = link_signature(w);
    check(have, out.value, sigma, out.method, SMethod::alternating);
    if (!have) {
      out.value = sigma;
      out.method = SMethod::alternating;
      have = true;
    }
  }

  const ClosureDecomposition dec = decompose_closure(w);
  const bool reduced = dec.unknots != 0 || dec.pieces.size() != 1 || dec.pieces.front() != w;
  if (reduced && (!have || opt.cross_check_exact)) {
    long total = 0;
    SMethod piece_method = SMethod::split;
    for (const BraidWord& p : dec.pieces) {
      const SResult r = rasmussen_s(p, opt);
      if (r.method == SMethod::bounds_only) piece_method = SMethod::bounds_only;
      total += r.value;
    }
    total -= dec.piece_count() - 1;
    if (piece_method == SMethod::bounds_only) {
      if (!have) {
        out.method = SMethod::bounds_only;
        return out;
      }
    } else {
      check(have, out.value, total, out.method, SMethod::split);
      if (!have) {
        out.value = total;
        out.method = SMethod::split;
        have = true;
      }
    }
  }

  if (!have || opt.cross_check_exact) {
    const LinkDiagram d = braid_closure_diagram(w);
    if (d.crossing_count() <= opt.crossing_limit) {
      const long exact = rasmussen_s_exact(d, opt.crossing_limit).s;
      check(have, out.value, exact, out.method, SMethod::exact);
      if (!have) {
        out.value = exact;
        out.method = SMethod::exact;
        have = true;
      }
    }
  }
  if (!have) out.method = SMethod::bounds_only;
  return out;
}

}  // namespace braidlab
