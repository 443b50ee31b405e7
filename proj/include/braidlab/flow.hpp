#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "braidlab/braid.hpp"
#include "braidlab/diagram.hpp"
#include "braidlab/error.hpp"
#include "braidlab/seifert.hpp"

namespace braidlab {

/// Linear flow of the constant field (1, omega) on the unit torus R^2/Z^2.
struct TorusFlowConfig {
  double omega = 0.6180339887498949;
  double x0 = 0.0, y0 = 0.0;
  double epsilon = 0.05;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("epsilon must lie in (0, 1/2)");
    if (!std::isfinite(omega)) throw DomainError("omega must be finite");
    if (!(x0 >= 0.0 && x0 < 1.0 && y0 >= 0.0 && y0 < 1.0)) throw DomainError("start point must lie in [0,1)^2");
  }
};

inline double frac(double x) {
  const double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

/// Distance between two points of the circle R/Z.
inline double circle_distance(double a, double b) {
  const double d = frac(a - b);
  return std::min(d, 1.0 - d);
}

inline std::pair<double, double> orbit_endpoint(const TorusFlowConfig& cfg, double T) {
  if (T < 0) throw DomainError("time must be nonnegative");
  return {frac(cfg.x0 + T), frac(cfg.y0 + cfg.omega * T)};
}

/// Torus distance from the start to the endpoint at time T.
inline double chord_displacement(const TorusFlowConfig& cfg, double T) {
  const auto [x, y] = orbit_endpoint(cfg, T);
  return std::hypot(circle_distance(x, cfg.x0), circle_distance(y, cfg.y0));
}

/// Integer times T <= T_max whose orbit endpoint is within epsilon of the start.
inline std::vector<long> return_times(const TorusFlowConfig& cfg, double T_max) {
  cfg.validate();
  if (!(T_max > 0)) throw DomainError("T_max must be positive");
  std::vector<long> out;
  for (long T = 1; T <= static_cast<long>(std::floor(T_max)); ++T)
    if (chord_displacement(cfg, static_cast<double>(T)) < cfg.epsilon) out.push_back(T);
  return out;
}

inline BraidWord torus_braid(int p, long q) {
  if (p < 2) throw DomainError("torus braid needs p >= 2");
  std::vector<int> cycle(p - 1);
  std::iota(cycle.begin(), cycle.end(), 1);
  return power(BraidWord(p, std::move(cycle)), q);
}

/// Closure of the orbit piece [0, T] by a short chord: the torus knot T(p, q).
struct OrbitKnot {
  long T = 0;
  int p = 0;
  long q = 0;
  double chord_displacement = 0.0;
  BraidWord braid;
};

inline OrbitKnot orbit_closure_knot(const TorusFlowConfig& cfg, long T) {
  cfg.validate();
  OrbitKnot k;
  k.T = T;
  k.chord_displacement = chord_displacement(cfg, static_cast<double>(T));
  if (!(k.chord_displacement < cfg.epsilon))
    throw DomainError("chord at T=" + std::to_string(T) + " is not shorter than epsilon; knot type ambiguous");
  if (T < 2 || T > 1000000) throw DomainError("return time out of range for a braid representative");
  k.p = static_cast<int>(T);
  k.q = std::lround(cfg.omega * static_cast<double>(T));
  if (std::gcd(static_cast<long>(k.p), std::labs(k.q)) != 1)
    throw DomainError("windings (" + std::to_string(k.p) + "," + std::to_string(k.q) + ") are not coprime");
  k.braid = torus_braid(k.p, std::labs(k.q));
  if (k.q < 0) k.braid = mirror(k.braid);
  return k;
}

struct SeriesRow {
  long T = 0;
  int p = 0;
  long q = 0;
  long w = 0;
  long o = 0;
  long s = 0;
  std::optional<long> sigma;  // empty when the Seifert matrix exceeds the rank cap

  double per_area(long v) const { return static_cast<double>(v) / (static_cast<double>(T) * static_cast<double>(T)); }
  std::optional<double> s_over_sigma() const {
    if (!sigma || *sigma == 0) return std::nullopt;
    return static_cast<double>(s) / static_cast<double>(*sigma);
  }
  std::optional<double> w_over_2sigma() const {
    if (!sigma || *sigma == 0) return std::nullopt;
    return static_cast<double>(w) / (2.0 * static_cast<double>(*sigma));
  }
};

struct AsymptoticSeries {
  TorusFlowConfig config;
  double T_max = 0;
  std::vector<SeriesRow> rows;
  std::vector<std::string> warnings;
};

struct SeriesOptions {
  /// Largest Seifert matrix rank (c - n + 1) for which sigma is computed.
  long signature_rank_cap = 2000;
  unsigned threads = 0;
};

/// Invariants of T(p, |q|) from the positive braid (mirrored for q < 0):
/// w = q(p-1), o = p, s = (p-1)(q-1), sigma exactly from the Seifert matrix.
inline SeriesRow series_row(const OrbitKnot& k, long rank_cap) {
  SeriesRow r;
  r.T = k.T;
  r.p = k.p;
  r.q = k.q;
  const LinkDiagram d = braid_closure_diagram(k.braid);
  r.w = writhe(d);
  r.o = seifert_circle_count(d);
  const long s_positive = 1 + std::labs(linking_number(k.braid)) - k.p;
  r.s = k.q < 0 ? -s_positive : s_positive;
  const long rank = k.braid.length() - k.p + 1;
  if (rank <= rank_cap) r.sigma = link_signature(k.braid);
  return r;
}

inline AsymptoticSeries asymptotic_series(const TorusFlowConfig& cfg, double T_max, const SeriesOptions& opt = {}) {
  cfg.validate();
  AsymptoticSeries out;
  out.config = cfg;
  out.T_max = T_max;
  std::vector<OrbitKnot> knots;
  for (long T : return_times(cfg, T_max)) {
    try {
      knots.push_back(orbit_closure_knot(cfg, T));
    } catch (const DomainError& e) {
      out.warnings.push_back("T=" + std::to_string(T) + " skipped: " + e.what());
    }
  }
  if (knots.empty()) throw DomainError("no usable return time up to T_max");

  out.rows.resize(knots.size());
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(knots.size()));
  // Largest rows first so the long signature does not start last.
  std::vector<std::size_t> order(knots.size());
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < order.size();)
          out.rows[order[i]] = series_row(knots[order[i]], opt.signature_rank_cap);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& r : out.rows)
    if (!r.sigma) out.warnings.push_back("T=" + std::to_string(r.T) + ": signature above rank cap, left blank");
  return out;
}

/// Fixed 10-digit decimal, as used for all flow ratio columns.
inline std::string fixed10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

inline void write_series_csv(const AsymptoticSeries& series, std::ostream& out) {
  out << "T,p,q,w,o,sigma,s,w_over_T2,o_over_T2,sigma_over_T2,s_over_T2,s_over_sigma,w_over_2sigma\n";
  for (const auto& r : series.rows) {
    auto opt = [](const std::optional<double>& v) { return v ? fixed10(*v) : std::string(); };
    out << r.T << ',' << r.p << ',' << r.q << ',' << r.w << ',' << r.o << ','
        << (r.sigma ? std::to_string(*r.sigma) : std::string()) << ',' << r.s << ',' << fixed10(r.per_area(r.w)) << ','
        << fixed10(r.per_area(r.o)) << ',' << (r.sigma ? fixed10(r.per_area(*r.sigma)) : std::string()) << ','
        << fixed10(r.per_area(r.s)) << ',' << opt(r.s_over_sigma()) << ',' << opt(r.w_over_2sigma()) << '\n';
  }
}

}  // namespace braidlab
