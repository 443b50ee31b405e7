// Acceptance runner: one PASS/FAIL line per criterion.
//   braidlab_acceptance [--criterion N]   (N = 1..12, default: all)

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "braidlab/braidlab.hpp"

using namespace braidlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F fn) {
  std::vector<T> out(count);
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) out[i] = fn(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

// All words over the given letters with length 1..max_len.
void enumerate_words(int n, std::size_t max_len, const std::vector<int>& alphabet,
                     const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    if (!cur.empty()) visit(cur);
    if (cur.size() == max_len) return;
    for (int e : alphabet) {
      cur.push_back(e);
      rec();
      cur.pop_back();
    }
  };
  (void)n;
  rec();
}

std::vector<int> min_rotation(const std::vector<int>& l) {
  std::vector<int> best = l, r = l;
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    best = std::min(best, r);
  }
  return best;
}

// Conjugacy-by-rotation key of the closure: least normal form over cyclic rotations.
std::string closure_key(const BraidWord& w) {
  std::vector<int> r = w.letters();
  std::string best = normal_form_key(w);
  for (std::size_t i = 1; i < r.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    best = std::min(best, normal_form_key(BraidWord(w.strands(), r)));
  }
  return best;
}

long exact_s(const BraidWord& w) { return rasmussen_s_exact(braid_closure_diagram(w)).s; }

struct Evaluated {
  BraidWord word;
  long s = 0;
};

std::string show(const BraidWord& w) { return "B" + std::to_string(w.strands()) + "[" + format_braid(w) + "]"; }

// ---- criterion 1 ----

std::vector<BraidWord> positive_braids() {
  std::vector<BraidWord> out;
  for (int n = 2; n <= 4; ++n) {
    std::vector<int> alphabet;
    for (int i = 1; i < n; ++i) alphabet.push_back(i);
    std::set<std::string> seen{normal_form_key(BraidWord(n))};
    out.emplace_back(n);
    enumerate_words(n, 8, alphabet, [&](const std::vector<int>& l) {
      BraidWord w(n, l);
      if (seen.insert(normal_form_key(w)).second) out.push_back(std::move(w));
    });
  }
  return out;
}

std::vector<Evaluated> evaluate_exact(const std::vector<BraidWord>& words) {
  return parallel_map<Evaluated>(words.size(), [&](std::size_t i) { return Evaluated{words[i], exact_s(words[i])}; });
}

Outcome criterion1(std::vector<Evaluated>* keep = nullptr) {
  const auto words = positive_braids();
  const auto ev = evaluate_exact(words);
  Outcome o;
  std::size_t bad = 0;
  std::string first;
  for (const auto& e : ev) {
    const long expect = 1 + linking_number(e.word) - e.word.strands();
    if (e.s != expect) {
      if (!bad++) first = show(e.word) + " s=" + std::to_string(e.s) + " expected " + std::to_string(expect);
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(ev.size()) + " positive braids (distinct normal forms), " + std::to_string(bad) +
             " mismatches" + (bad ? "; first " + first : "");
  if (keep) *keep = ev;
  return o;
}

// ---- criterion 2 ----

std::vector<BraidWord> alternating_knot_words() {
  std::vector<BraidWord> out;
  for (int n = 3; n <= 4; ++n) {
    std::set<std::vector<int>> rotations;
    for (int cls = 0; cls < 2; ++cls) {
      std::vector<int> alphabet;
      for (int i = 1; i < n; ++i) alphabet.push_back((i % 2 == 1) == (cls == 0) ? i : -i);
      enumerate_words(n, 10, alphabet, [&](const std::vector<int>& l) {
        const BraidWord w(n, l);
        if (closes_to_knot(w)) rotations.insert(min_rotation(l));
      });
    }
    std::vector<BraidWord> cand;
    for (const auto& l : rotations) cand.emplace_back(n, l);
    const auto keys = parallel_map<std::string>(cand.size(), [&](std::size_t i) { return closure_key(cand[i]); });
    std::set<std::string> seen;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (seen.insert(keys[i]).second) out.push_back(cand[i]);
  }
  return out;
}

Outcome criterion2(std::vector<Evaluated>* keep = nullptr) {
  const auto words = alternating_knot_words();
  const auto ev = evaluate_exact(words);
  std::size_t bad = 0;
  std::string first;
  for (const auto& e : ev) {
    const long sigma = link_signature(e.word);
    if (e.s != sigma && !bad++) first = show(e.word) + " s=" + std::to_string(e.s) + " sigma=" + std::to_string(sigma);
  }
  if (keep) *keep = ev;
  return {bad == 0, std::to_string(ev.size()) + " alternating knot closures, " + std::to_string(bad) + " with s != sigma" +
                        (bad ? "; first " + first : "")};
}

// ---- criterion 3 ----

std::vector<BraidWord> random_knot_words() {
  Rng rng(20240503);
  std::vector<BraidWord> out;
  while (out.size() < 100) {
    const int n = 3 + static_cast<int>(rng.below(2));
    const BraidWord w = random_word(rng, n, static_cast<std::size_t>(rng.between(3, 12)));
    if (closes_to_knot(w)) out.push_back(w);
  }
  return out;
}

Outcome criterion3(std::vector<Evaluated>* keep = nullptr) {
  const auto words = random_knot_words();
  std::vector<BraidWord> both = words;
  for (const auto& w : words) both.push_back(mirror(w));
  const auto ev = evaluate_exact(both);
  std::size_t bad_s = 0, bad_sigma = 0;
  std::string first;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (ev[i].s != -ev[i + words.size()].s && !bad_s++) first = show(words[i]);
    if (link_signature(words[i]) != -link_signature(both[i + words.size()])) ++bad_sigma;
  }
  if (keep) *keep = ev;
  return {bad_s == 0 && bad_sigma == 0, std::to_string(words.size()) + " random knot words (with mirrors): " +
                                            std::to_string(bad_s) + " s failures, " + std::to_string(bad_sigma) +
                                            " sigma failures" + (bad_s ? "; first " + first : "")};
}

// ---- criterion 4 ----

Outcome criterion4() {
  std::vector<Evaluated> a, b, c;
  criterion1(&a);
  criterion2(&b);
  criterion3(&c);
  std::size_t total = 0, bad = 0;
  std::string first;
  for (const auto* set : {&a, &b, &c})
    for (const auto& e : *set) {
      ++total;
      const auto bd = rasmussen_bounds(braid_closure_diagram(e.word));
      if ((e.s < bd.lo || e.s > bd.hi) && !bad++) first = show(e.word);
    }
  return {bad == 0, std::to_string(total) + " diagrams, " + std::to_string(bad) + " outside 1+w-o <= s <= -1+w+o" +
                        (bad ? "; first " + first : "")};
}

// ---- criterion 5 ----

Outcome criterion5() {
  Outcome o;
  std::ostringstream d;
  bool nonzero_s = false;
  for (int n = 2; n <= 4; ++n) {
    DefectOptions opt;
    opt.strands = n;
    opt.samples = 500;
    opt.max_length = 6;
    opt.seed = 1000 + static_cast<std::uint64_t>(n);
    opt.keep_samples = true;
    const auto rs = defect_sample(rasmussen_invariant(), opt);
    const auto rsig = defect_sample(signature_invariant(), opt);
    std::size_t pairing_bad = 0;
    for (const auto& s : rs.samples) {
      if (s.defect() != 0) nonzero_s = true;
      if (std::labs(s.defect() + 1) > n) ++pairing_bad;
    }
    const bool ok = rs.evaluated >= 500 && rsig.evaluated >= 500 && rs.violations.empty() && rsig.violations.empty() &&
                    pairing_bad == 0;
    o.pass &= ok;
    d << "B" << n << ": s max " << rs.max_observed << "/" << rs.bound << " (" << rs.violations.size()
      << " viol, " << rs.evaluated << " pairs), sigma max " << rsig.max_observed << "/" << rsig.bound << " ("
      << rsig.violations.size() << " viol), pairing form viol " << pairing_bad << "; ";
    if (rs.witness && rs.witness->defect() != 0)
      d << "witness " << show(rs.witness->alpha) << " * " << show(rs.witness->beta) << " defect "
        << rs.witness->defect() << "; ";
  }
  o.pass &= nonzero_s;
  d << (nonzero_s ? "nonzero s-defect exhibited" : "no nonzero s-defect found");
  o.detail = d.str();
  return o;
}

// ---- criterion 6 ----

Outcome criterion6() {
  Outcome o;
  std::ostringstream d;
  for (int l = 1; l <= 10; ++l) {
    const long sig = link_signature(power(delta_braid(2), l));
    if (sig != 2 * l - 1) {
      o.pass = false;
      d << "sigma(D2^" << l << ")=" << sig << " ";
    }
  }
  d << "n=2 exact for l<=10: " << (o.pass ? "yes" : "no") << "; ";
  for (int n = 3; n <= 4; ++n) {
    const double target = full_twist_signature_slope(n).get_d();
    auto dev = [&](int l) {
      const long sig = link_signature(power(delta_braid(n), l));
      d << "sigma(D" << n << "^" << l << ")=" << sig << " ";
      return std::fabs(static_cast<double>(sig) / l - target) / target;
    };
    const double d4 = dev(4), d8 = dev(8);
    const bool ok = d8 <= 0.15 && d8 < d4;
    o.pass &= ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%d target %.1f rel.dev l=4 %.4f l=8 %.4f %s; ", n, target, d4, d8,
                  ok ? "ok" : (d8 <= 0.15 ? "not strictly smaller at l=8" : "outside 15%"));
    d << buf;
  }
  o.detail = d.str();
  return o;
}

// ---- criterion 7 ----

Outcome criterion7() {
  Outcome o;
  std::size_t checked = 0;
  std::ostringstream d;
  for (int n = 2; n <= 5; ++n)
    for (int l = 1; l <= 10; ++l) {
      const SResult r = rasmussen_s(power(delta_braid(n), l));
      const long expect = 1 + static_cast<long>(l) * n * (n - 1) - n;
      ++checked;
      if (r.method != SMethod::positive || r.value != expect) {
        o.pass = false;
        d << "n=" << n << " l=" << l << " s=" << r.value << " via " << to_string(r.method) << "; ";
      }
    }
  for (int n = 2; n <= 5; ++n) {
    const auto h = homogenize(rasmussen_invariant(), delta_braid(n), 1);
    if (!h.closed_form || *h.closed_form != Rational(n * (n - 1))) o.pass = false;
  }
  d << checked << " full-twist powers, homogenized s = n(n-1) for n<=5";
  o.detail = d.str();
  return o;
}

// ---- criterion 8 ----

Outcome criterion8() {
  const Rational odd = phi_odd(3, full_twist_signature_slope(3), Rational(6));
  const Rational even = phi_even(4, full_twist_signature_slope(4), Rational(12));
  const Rational odd_lit = phi_odd(3, 4, 6), even_lit = phi_even(4, 8, 12);
  return {odd == 0 && even == 0 && odd_lit == 0 && even_lit == 0,
          "phi_odd(3,4,6)=" + rational_string(odd_lit) + " phi_even(4,8,12)=" + rational_string(even_lit) +
              " (inputs from closed forms: " + rational_string(odd) + ", " + rational_string(even) + ")"};
}

// ---- criterion 9 ----

Outcome criterion9() {
  Outcome o;
  std::ostringstream d;
  for (int n = 2; n <= 7; ++n) {
    const auto r = prop1_verify(n, 50, 77 + static_cast<std::uint64_t>(n));
    const bool ok = r.a_power_is_twist && r.b_power_is_twist && r.all_in_commutator_subgroup && r.samples.size() == 50;
    o.pass &= ok;
    d << "n=" << n << (ok ? " ok" : " FAILED") << "; ";
  }
  d << "a^n = b^(n-1) = full twist, 50 samples each";
  o.detail = d.str();
  return o;
}

// ---- criterion 10 ----

Outcome criterion10() {
  const auto r = example_checks();
  Outcome o;
  std::ostringstream d;
  o.pass = r.conjugation_identity;
  d << "conjugation " << (r.conjugation_identity ? "holds" : "fails") << "; commutator";
  for (const auto& [l, ok] : r.commutator_identity) {
    o.pass &= ok;
    d << " l=" << l << (ok ? " ok" : " fails");
  }
  d << "; components";
  for (const auto& c : r.components) {
    o.pass &= c.components == (c.m % 2 ? 4 : 6) && c.lk == 0;
    d << " m=" << c.m << ":" << c.components << " (lk " << c.lk << ")";
  }
  o.detail = d.str();
  return o;
}

// ---- criteria 11, 12 ----

TorusFlowConfig flow_config() {
  TorusFlowConfig c;
  c.epsilon = 0.1;
  return c;
}

Outcome criterion11() {
  const TorusFlowConfig cfg = flow_config();
  std::vector<SeriesRow> rows;
  for (long T : {5L, 13L, 34L}) rows.push_back(series_row(orbit_closure_knot(cfg, T), 100000));
  Outcome o;
  std::ostringstream d;
  char buf[200];
  bool ratio_inc = true, ratio_range = true, o_dec = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double ratio = static_cast<double>(r.s) / static_cast<double>(*r.sigma);
    std::snprintf(buf, sizeof buf, "T=%ld T(%d,%ld) s=%ld sigma=%ld s/sigma=%.4f o/T^2=%.4f; ", r.T, r.p, r.q, r.s,
                  *r.sigma, ratio, r.per_area(r.o));
    d << buf;
    if (!(ratio > 1.0 && ratio <= 2.0)) ratio_range = false;
    if (i > 0) {
      const auto& p = rows[i - 1];
      if (!(ratio > static_cast<double>(p.s) / static_cast<double>(*p.sigma))) ratio_inc = false;
      if (!(r.per_area(r.o) < p.per_area(p.o))) o_dec = false;
    }
  }
  const auto& last = rows.back();
  const double w2s = *last.w_over_2sigma();
  const double s_area = last.per_area(last.s);
  const bool w_ok = w2s >= 0.85 && w2s <= 1.15;
  const bool s_ok = std::fabs(s_area - cfg.omega) <= 0.15 * cfg.omega;
  std::snprintf(buf, sizeof buf,
                "s/sigma increasing %s, in (1,2] %s, o/T^2 decreasing %s, w/(2 sigma)=%.4f %s, s/T^2=%.4f vs "
                "omega=%.4f %s",
                ratio_inc ? "yes" : "no", ratio_range ? "yes" : "no", o_dec ? "yes" : "no", w2s, w_ok ? "ok" : "out",
                s_area, cfg.omega, s_ok ? "ok" : "out");
  d << buf;
  o.pass = ratio_inc && ratio_range && o_dec && w_ok && s_ok;
  o.detail = d.str();
  return o;
}

Outcome criterion12() {
  const auto series = asymptotic_series(flow_config(), 34);
  Outcome o;
  std::ostringstream d;
  std::size_t checked = 0;
  for (const auto& r : series.rows) {
    if (r.p < 3 || std::labs(r.q) < 3) continue;
    ++checked;
    const bool ok = r.sigma && r.s != *r.sigma;
    o.pass &= ok;
    d << "T(" << r.p << "," << r.q << ") s=" << r.s << " sigma=" << (r.sigma ? std::to_string(*r.sigma) : "?")
      << (ok ? "" : " EQUAL") << "; ";
  }
  o.pass &= checked > 0;
  d << checked << " rows with p,q >= 3";
  o.detail = d.str();
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list{
      {"positive-braid formula", [] { return criterion1(); }},
      {"alternating s = sigma", [] { return criterion2(); }},
      {"mirror antisymmetry", [] { return criterion3(); }},
      {"diagram bound sandwich", criterion4},
      {"defect bounds", criterion5},
      {"full-twist signature asymptotics", criterion6},
      {"full-twist Rasmussen", criterion7},
      {"phi vanishes on the center", criterion8},
      {"torsion generators and lk quotient", criterion9},
      {"explicit B5/B6 examples", criterion10},
      {"flow asymptotics", criterion11},
      {"non-alternating certificate", criterion12},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"braidlab acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria()[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria()[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass &= o.pass;
  }
  return all_pass ? 0 : 1;
}
