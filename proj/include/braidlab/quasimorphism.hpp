#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "braidlab/braid.hpp"
#include "braidlab/error.hpp"
#include "braidlab/garside.hpp"
#include "braidlab/random.hpp"
#include "braidlab/rasmussen.hpp"
#include "braidlab/seifert.hpp"

namespace braidlab {

using Rational = mpq_class;

enum class InvariantKind { linking_number, signature, rasmussen, shifted_rasmussen };

/// Integer-valued braid invariant read off the closure. An empty optional
/// means the value could not be computed (e.g. beyond the Lee crossing limit).
struct BraidInvariant {
  InvariantKind kind;
  std::string name;
  std::function<std::optional<long>(const BraidWord&)> evaluate;

  /// Proven bound on |phi(ab) - phi(a) - phi(b)| on B_n.
  long defect_bound(int n) const {
    switch (kind) {
      case InvariantKind::linking_number: return 0;
      case InvariantKind::signature: return n;
      case InvariantKind::rasmussen: return n + 1;
      // s - lk + n - 1: defect of s plus the constant shift.
      case InvariantKind::shifted_rasmussen: return 2L * n;
    }
    return 0;
  }
};

inline BraidInvariant lk_invariant() {
  return {InvariantKind::linking_number, "lk", [](const BraidWord& w) -> std::optional<long> { return linking_number(w); }};
}

inline BraidInvariant signature_invariant() {
  return {InvariantKind::signature, "sigma", [](const BraidWord& w) -> std::optional<long> { return link_signature(w); }};
}

inline BraidInvariant rasmussen_invariant(SOptions opt = {}) {
  return {InvariantKind::rasmussen, "s", [opt](const BraidWord& w) -> std::optional<long> {
            const SResult r = rasmussen_s(w, opt);
            if (r.method == SMethod::bounds_only) return std::nullopt;
            return r.value;
          }};
}

/// s - lk + n - 1, which vanishes on positive braids.
inline BraidInvariant shifted_rasmussen_invariant(SOptions opt = {}) {
  return {InvariantKind::shifted_rasmussen, "s-lk+n-1", [opt](const BraidWord& w) -> std::optional<long> {
            const SResult r = rasmussen_s(w, opt);
            if (r.method == SMethod::bounds_only) return std::nullopt;
            return r.value - linking_number(w) + w.strands() - 1;
          }};
}

inline std::string rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw DomainError("malformed rational '" + text + "'");
  if (sgn(q.get_den()) == 0) throw DomainError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

/// Canonical key of the group element (left normal form).
inline std::string normal_form_key(const BraidWord& w) {
  const NormalForm nf = garside_normal_form(w);
  std::string key = std::to_string(nf.strands) + ":" + std::to_string(nf.infimum);
  for (const auto& f : nf.factors) {
    key += '|';
    for (int x : f) key += static_cast<char>('a' + x);
  }
  return key;
}

namespace detail {

/// Evaluates inv on every word, in parallel, each distinct group element once.
inline std::vector<std::optional<long>> evaluate_all(const BraidInvariant& inv, const std::vector<BraidWord>& words,
                                                     unsigned threads = 0) {
  std::map<std::string, std::size_t> slot_of;
  std::vector<std::size_t> slot(words.size());
  std::vector<const BraidWord*> unique;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto [it, fresh] = slot_of.emplace(normal_form_key(words[i]), unique.size());
    if (fresh) unique.push_back(&words[i]);
    slot[i] = it->second;
  }
  std::vector<std::optional<long>> values(unique.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, unique.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < unique.size();) values[i] = inv.evaluate(*unique[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<std::optional<long>> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) out[i] = values[slot[i]];
  return out;
}

}  // namespace detail

struct DefectSample {
  BraidWord alpha, beta;
  long value_alpha = 0, value_beta = 0, value_product = 0;
  long defect() const { return value_product - value_alpha - value_beta; }
};

struct DefectReport {
  std::string invariant;
  int strands = 0;
  std::uint64_t seed = 0;
  std::size_t requested = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t distinct_pairs = 0;
  long max_observed = 0;
  long bound = 0;
  std::optional<DefectSample> witness;  // a pair attaining max_observed
  std::vector<DefectSample> violations;
  std::vector<DefectSample> samples;
};

struct DefectOptions {
  int strands = 2;
  std::size_t samples = 100;
  std::size_t max_length = 6;
  std::uint64_t seed = 0;
  bool positive_only = false;
  /// Redraw pairs whose normal forms were already sampled. Small groups have
  /// few short elements (B_2 has 13 of length <= 6), so this is opt-in.
  bool distinct = false;
  bool keep_samples = false;
  unsigned threads = 0;
};

/// Samples |phi(ab) - phi(a) - phi(b)| over seeded random pairs. Lengths are
/// uniform in [0, max_length], letters i.i.d. uniform.
inline DefectReport defect_sample(const BraidInvariant& inv, const DefectOptions& opt) {
  if (opt.strands < 2) throw DomainError("defect sampling needs n >= 2");
  DefectReport rep;
  rep.invariant = inv.name;
  rep.strands = opt.strands;
  rep.seed = opt.seed;
  rep.requested = opt.samples;
  rep.bound = inv.defect_bound(opt.strands);

  Rng rng(opt.seed);
  std::vector<BraidWord> words;
  std::map<std::pair<std::string, std::string>, int> seen;
  const std::size_t max_attempts = 100 * opt.samples + 1000;
  for (std::size_t attempts = 0; words.size() < 3 * opt.samples && attempts < max_attempts; ++attempts) {
    auto draw = [&] {
      const auto len = static_cast<std::size_t>(rng.between(0, static_cast<long>(opt.max_length)));
      return random_word(rng, opt.strands, len, opt.positive_only);
    };
    BraidWord a = draw(), b = draw();
    auto [it, fresh] = seen.emplace(std::pair{normal_form_key(a), normal_form_key(b)}, 0);
    if (opt.distinct && !fresh) continue;
    words.push_back(concat(a, b));
    words.push_back(std::move(a));
    words.push_back(std::move(b));
  }
  rep.distinct_pairs = seen.size();
  const auto values = detail::evaluate_all(inv, words, opt.threads);
  for (std::size_t i = 0; i + 2 < words.size(); i += 3) {
    if (!values[i] || !values[i + 1] || !values[i + 2]) {
      ++rep.skipped;
      continue;
    }
    DefectSample s{words[i + 1], words[i + 2], *values[i + 1], *values[i + 2], *values[i]};
    ++rep.evaluated;
    const long d = std::labs(s.defect());
    if (!rep.witness || d > rep.max_observed) {
      rep.max_observed = d;
      rep.witness = s;
    }
    if (d > rep.bound) rep.violations.push_back(s);
    if (opt.keep_samples) rep.samples.push_back(std::move(s));
  }
  return rep;
}

/// Empirical defect: a lower estimate of the true defect, never an upper bound.
inline Rational empirical_defect(const DefectReport& rep) { return Rational(rep.max_observed); }

struct HomogenizationEstimate {
  std::string invariant;
  BraidWord braid;
  /// (k, phi(g^k)/k); stops early at the first k that could not be evaluated.
  std::vector<std::pair<long, Rational>> samples;
  bool truncated = false;
  std::optional<Rational> closed_form;
  std::string closed_form_reason;
};

/// Limit of sigma(Delta_n^l)/l for the full twist Delta_n (torus links T(n, nl)).
inline Rational full_twist_signature_slope(int n) {
  Rational r = n % 2 ? Rational(n * n - 1, 2) : Rational(n * n, 2);
  r.canonicalize();
  return r;
}

inline HomogenizationEstimate homogenize(const BraidInvariant& inv, const BraidWord& g, long k_max) {
  if (k_max < 1) throw DomainError("homogenize needs k_max >= 1");
  HomogenizationEstimate est;
  est.invariant = inv.name;
  est.braid = g;
  for (long k = 1; k <= k_max; ++k) {
    std::optional<long> v;
    try {
      v = inv.evaluate(power(g, k));
    } catch (const CrossingLimitExceeded&) {
      v.reset();
    }
    if (!v) {
      est.truncated = true;
      break;
    }
    Rational r(*v, k);
    r.canonicalize();
    est.samples.emplace_back(k, r);
  }

  const int n = g.strands();
  const bool is_twist = braids_equal(g, delta_braid(n));
  switch (inv.kind) {
    case InvariantKind::linking_number:
      est.closed_form = Rational(linking_number(g));
      est.closed_form_reason = "homomorphism";
      break;
    case InvariantKind::rasmussen:
      if (is_positive(g) || is_twist) {
        // s(g^k) = 1 + k lk(g) - n on positive braids.
        est.closed_form = Rational(linking_number(g));
        est.closed_form_reason = is_twist ? "full twist: n(n-1)" : "positive braid: lk";
      }
      break;
    case InvariantKind::shifted_rasmussen:
      if (is_positive(g)) {
        est.closed_form = Rational(0);
        est.closed_form_reason = "positive braid";
      }
      break;
    case InvariantKind::signature:
      if (is_twist) {
        est.closed_form = full_twist_signature_slope(n);
        est.closed_form_reason = n % 2 ? "full twist, n odd: (n^2-1)/2" : "full twist, n even: n^2/2";
      }
      break;
  }
  return est;
}

/// 2n(n-1) sigma~ - (n^2-1) s~, for odd n.
inline Rational phi_odd(int n, const Rational& sigma_tilde, const Rational& s_tilde) {
  if (n % 2 == 0) throw DomainError("phi_odd needs odd n, got " + std::to_string(n));
  Rational r = Rational(2L * n * (n - 1)) * sigma_tilde - Rational(static_cast<long>(n) * n - 1) * s_tilde;
  r.canonicalize();
  return r;
}

/// 2n(n-1) sigma~ - n^2 s~, for even n.
inline Rational phi_even(int n, const Rational& sigma_tilde, const Rational& s_tilde) {
  if (n % 2 != 0) throw DomainError("phi_even needs even n, got " + std::to_string(n));
  Rational r = Rational(2L * n * (n - 1)) * sigma_tilde - Rational(static_cast<long>(n) * n) * s_tilde;
  r.canonicalize();
  return r;
}

/// phi_odd or phi_even according to the parity of n.
inline Rational phi_center_free(int n, const Rational& sigma_tilde, const Rational& s_tilde) {
  return n % 2 ? phi_odd(n, sigma_tilde, s_tilde) : phi_even(n, sigma_tilde, s_tilde);
}

struct StableLengthBounds {
  Rational c_lower;
  Rational t_lower;
  Rational defect_used;
};

/// c(g) >= |phi(g)| / 2D and t(g) >= |phi(g)| / D for a homogeneous
/// quasi-morphism phi of defect D.
inline StableLengthBounds stable_length_bounds(const Rational& phi_value, const Rational& defect) {
  if (sgn(defect) <= 0) throw DomainError("defect must be positive");
  StableLengthBounds b;
  b.defect_used = defect;
  b.t_lower = abs(phi_value) / defect;
  b.c_lower = b.t_lower / 2;
  b.t_lower.canonicalize();
  b.c_lower.canonicalize();
  return b;
}

struct Prop1Sample {
  BraidWord word;
  long lk = 0;
  long quotient_lk = 0;  // lk(w^{n(n-1)} * Delta_n^{-lk(w)})
};

struct Prop1Report {
  int strands = 0;
  bool a_power_is_twist = false;  // a^n = Delta_n
  bool b_power_is_twist = false;  // b^{n-1} = Delta_n
  std::vector<Prop1Sample> samples;
  bool all_in_commutator_subgroup = true;
};

inline Prop1Report prop1_verify(int n, std::size_t samples = 50, std::uint64_t seed = 0, std::size_t max_length = 8) {
  if (n < 2) throw DomainError("prop1_verify needs n >= 2");
  Prop1Report rep;
  rep.strands = n;
  const BraidWord twist = delta_braid(n);
  const auto [a, b] = torsion_generators(n);
  rep.a_power_is_twist = braids_equal(power(a, n), twist);
  rep.b_power_is_twist = braids_equal(power(b, n - 1), twist);
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto len = static_cast<std::size_t>(rng.between(1, static_cast<long>(max_length)));
    BraidWord w = random_word(rng, n, len);
    const long lk = linking_number(w);
    const BraidWord quotient = concat(power(w, static_cast<long>(n) * (n - 1)), power(twist, -lk));
    Prop1Sample s{std::move(w), lk, linking_number(quotient)};
    rep.all_in_commutator_subgroup &= s.quotient_lk == 0;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

struct ComponentCount {
  int m = 0;
  int components = 0;
  long lk = 0;
};

struct ExampleReport {
  /// beta alpha beta^-1 = alpha^-1 for alpha = s1 s4^-1, beta = s2 s3 s4 s1 s2 s3 s1^-1 s2^-1 in B_5.
  bool conjugation_identity = false;
  /// alpha^{2l} = alpha^l beta^-1 alpha^-l beta, per l = 1..3.
  std::vector<std::pair<int, bool>> commutator_identity;
  /// Closures of (s1 s3 s5^-2)^m in B_6.
  std::vector<ComponentCount> components;
  std::string component_note;
};

inline BraidWord b5_alpha() { return BraidWord(5, {1, -4}); }
inline BraidWord b5_beta() { return BraidWord(5, {2, 3, 4, 1, 2, 3, -1, -2}); }
inline BraidWord b6_example() { return BraidWord(6, {1, 3, -5, -5}); }

inline ExampleReport example_checks() {
  ExampleReport rep;
  const BraidWord alpha = b5_alpha(), beta = b5_beta();
  rep.conjugation_identity = braids_equal(concat(concat(beta, alpha), inverse(beta)), inverse(alpha));
  for (int l = 1; l <= 3; ++l) {
    const BraidWord lhs = power(alpha, 2 * l);
    const BraidWord rhs = concat(concat(power(alpha, l), inverse(beta)), concat(power(alpha, -l), beta));
    rep.commutator_identity.emplace_back(l, braids_equal(lhs, rhs));
  }
  for (int m = 1; m <= 4; ++m) {
    const BraidWord w = power(b6_example(), m);
    rep.components.push_back({m, closure_component_count(w), linking_number(w)});
  }
  rep.component_note =
      "cycle count of the induced permutation: 4 components for odd m (two knots and a 2-component "
      "(2,-2m) torus link), 6 for even m; grouped by torus sublink there are 3 pieces";
  return rep;
}

}  // namespace braidlab
