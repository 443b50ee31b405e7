#pragma once

#include <json.hpp>

#include "braidlab/braid.hpp"
#include "braidlab/flow.hpp"
#include "braidlab/garside.hpp"
#include "braidlab/quasimorphism.hpp"
#include "braidlab/rasmussen.hpp"
#include "braidlab/seifert.hpp"

namespace braidlab::json_io {

using Json = nlohmann::ordered_json;

inline Json rational(const Rational& q) { return rational_string(q); }

inline Json braid(const BraidWord& w) { return Json{{"strands", w.strands()}, {"word", format_braid(w)}}; }

/// Permutations in 1-based one-line notation.
inline Json normal_form(const NormalForm& nf) {
  Json factors = Json::array();
  for (const auto& f : nf.factors) {
    Json p = Json::array();
    for (int x : f) p.push_back(x + 1);
    factors.push_back(std::move(p));
  }
  return Json{{"strands", nf.strands}, {"infimum", nf.infimum}, {"factors", std::move(factors)}};
}

inline Json matrix(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json s_result(const SResult& r) {
  Json j;
  if (r.method != SMethod::bounds_only) j["value"] = r.value;
  j["method"] = std::string(to_string(r.method));
  j["bounds"] = {{"lo", r.bounds.lo}, {"hi", r.bounds.hi}};
  return j;
}

inline Json defect_sample_json(const DefectSample& s) {
  return Json{{"alpha", format_braid(s.alpha)},
              {"beta", format_braid(s.beta)},
              {"phi_alpha", s.value_alpha},
              {"phi_beta", s.value_beta},
              {"phi_product", s.value_product},
              {"defect", s.defect()}};
}

inline Json defect_report(const DefectReport& r) {
  Json j{{"invariant", r.invariant},
         {"n", r.strands},
         {"samples_requested", r.requested},
         {"samples_evaluated", r.evaluated},
         {"samples_skipped", r.skipped},
         {"distinct_pairs", r.distinct_pairs},
         {"max_observed", r.max_observed},
         {"bound", r.bound}};
  j["witness"] = r.witness ? defect_sample_json(*r.witness) : Json(nullptr);
  Json v = Json::array();
  for (const auto& s : r.violations) v.push_back(defect_sample_json(s));
  j["violations"] = std::move(v);
  return j;
}

inline Json homogenization(const HomogenizationEstimate& h) {
  Json samples = Json::array();
  for (const auto& [k, v] : h.samples) samples.push_back(Json{{"k", k}, {"value", rational(v)}});
  Json j{{"invariant", h.invariant}, {"braid", braid(h.braid)}, {"samples", std::move(samples)}, {"truncated", h.truncated}};
  if (h.closed_form) {
    j["closed_form"] = rational(*h.closed_form);
    j["closed_form_reason"] = h.closed_form_reason;
  } else {
    j["closed_form"] = nullptr;
  }
  return j;
}

inline Json stable_bounds(const StableLengthBounds& b) {
  return Json{{"c_lower", rational(b.c_lower)}, {"t_lower", rational(b.t_lower)}, {"defect_used", rational(b.defect_used)}};
}

inline Json prop1(const Prop1Report& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back(Json{{"w", format_braid(s.word)}, {"lk", s.lk}, {"quotient_lk", s.quotient_lk}});
  return Json{{"n", r.strands},
              {"a_power_is_twist", r.a_power_is_twist},
              {"b_power_is_twist", r.b_power_is_twist},
              {"all_in_commutator_subgroup", r.all_in_commutator_subgroup},
              {"samples", std::move(samples)}};
}

inline Json examples(const ExampleReport& r) {
  Json comm = Json::array();
  for (const auto& [l, ok] : r.commutator_identity) comm.push_back(Json{{"l", l}, {"holds", ok}});
  Json comps = Json::array();
  for (const auto& c : r.components) comps.push_back(Json{{"m", c.m}, {"components", c.components}, {"lk", c.lk}});
  return Json{{"conjugation_identity", r.conjugation_identity},
              {"commutator_identity", std::move(comm)},
              {"components", std::move(comps)},
              {"component_note", r.component_note}};
}

inline Json optional_decimal(const std::optional<double>& v) { return v ? Json(fixed10(*v)) : Json(nullptr); }

inline Json series(const AsymptoticSeries& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json j{{"T", fixed10(static_cast<double>(r.T))}, {"p", r.p}, {"q", r.q}, {"w", r.w}, {"o", r.o}, {"s", r.s}};
    j["sigma"] = r.sigma ? Json(*r.sigma) : Json(nullptr);
    j["w_over_T2"] = fixed10(r.per_area(r.w));
    j["o_over_T2"] = fixed10(r.per_area(r.o));
    j["sigma_over_T2"] = r.sigma ? Json(fixed10(r.per_area(*r.sigma))) : Json(nullptr);
    j["s_over_T2"] = fixed10(r.per_area(r.s));
    j["s_over_sigma"] = optional_decimal(r.s_over_sigma());
    j["w_over_2sigma"] = optional_decimal(r.w_over_2sigma());
    rows.push_back(std::move(j));
  }
  return Json{{"rows", std::move(rows)}};
}

inline Json orbit_knot(const OrbitKnot& k) {
  return Json{{"T", fixed10(static_cast<double>(k.T))},
              {"p", k.p},
              {"q", k.q},
              {"chord_displacement", fixed10(k.chord_displacement)},
              {"braid", braid(k.braid)}};
}

}  // namespace braidlab::json_io
