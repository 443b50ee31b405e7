// braidlab command-line front end. Every command prints one JSON envelope
// (or CSV with --csv where supported). Exit codes: 0 ok, 1 domain error,
// 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "braidlab/braidlab.hpp"
#include "braidlab/json_io.hpp"

namespace {

using braidlab::json_io::Json;
namespace bl = braidlab;

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::uint64_t seed = 0;
  Json results = nullptr;
  Json warnings = Json::array();
  std::optional<std::string> csv;  // replaces the envelope when set
};

Json envelope(const Report& r) {
  return Json{{"command", r.command},
              {"version", bl::kVersion},
              {"schema", bl::kReportSchema},
              {"inputs", r.inputs},
              {"seed", r.seed},
              {"results", r.results},
              {"warnings", r.warnings}};
}

struct BraidArg {
  std::string text;
  std::optional<int> strands;
  bl::BraidWord parse() const { return bl::parse_braid(text, strands); }
};

void add_braid_opts(CLI::App* sub, BraidArg& arg, const std::string& flag = "--braid") {
  sub->add_option(flag, arg.text, "braid word: whitespace-separated signed generator indices")->required();
  sub->add_option("--strands,-n", arg.strands, "strand count (default 1 + max |letter|)");
}

Json echo_braid(const bl::BraidWord& w) { return bl::json_io::braid(w); }

bl::BraidInvariant invariant_by_name(const std::string& name, int crossing_limit) {
  bl::SOptions so;
  so.crossing_limit = crossing_limit;
  if (name == "lk") return bl::lk_invariant();
  if (name == "sigma") return bl::signature_invariant();
  if (name == "s") return bl::rasmussen_invariant(so);
  if (name == "shifted") return bl::shifted_rasmussen_invariant(so);
  throw bl::DomainError("unknown invariant '" + name + "' (lk, sigma, s, shifted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"braidlab: braid group and knot invariant toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bl::kVersion);

  Report rep;
  std::function<void()> action;
  auto bind = [&](CLI::App* sub, std::string name, std::function<void()> fn) {
    sub->require_subcommand(0, 0);
    sub->callback([&, name = std::move(name), fn = std::move(fn)] {
      rep.command = name;
      action = fn;
    });
  };

  // ---- braid ----
  auto* braid = app.add_subcommand("braid", "braid group algebra");
  braid->require_subcommand(1);

  BraidArg b_norm;
  auto* normalize = braid->add_subcommand("normalize", "Garside left normal form");
  add_braid_opts(normalize, b_norm);
  bind(normalize, "braid normalize", [&] {
    const auto w = b_norm.parse();
    rep.inputs["braid"] = echo_braid(w);
    const auto nf = bl::garside_normal_form(w);
    rep.results = bl::json_io::normal_form(nf);
    rep.results["word"] = bl::format_braid(bl::normal_form_word(nf));
  });

  std::string eq_a, eq_b;
  std::optional<int> eq_n;
  auto* eq = braid->add_subcommand("eq", "equality in B_n and modulo the center");
  eq->add_option("--a", eq_a, "first braid word")->required();
  eq->add_option("--b", eq_b, "second braid word")->required();
  eq->add_option("--strands,-n", eq_n, "strand count");
  bind(eq, "braid eq", [&] {
    int n = eq_n.value_or(0);
    if (!eq_n) n = std::max(bl::parse_braid(eq_a).strands(), bl::parse_braid(eq_b).strands());
    const auto a = bl::parse_braid(eq_a, n), b = bl::parse_braid(eq_b, n);
    rep.inputs["a"] = echo_braid(a);
    rep.inputs["b"] = echo_braid(b);
    rep.results = {{"equal", bl::braids_equal(a, b)}, {"equal_mod_center", bl::equal_mod_center(a, b)}};
  });

  BraidArg b_lk;
  auto* lk = braid->add_subcommand("lk", "linking number (exponent sum)");
  add_braid_opts(lk, b_lk);
  bind(lk, "braid lk", [&] {
    const auto w = b_lk.parse();
    rep.inputs["braid"] = echo_braid(w);
    rep.results = {{"lk", bl::linking_number(w)}};
  });

  BraidArg b_alt;
  auto* alt = braid->add_subcommand("alt", "alternating-word test");
  add_braid_opts(alt, b_alt);
  bind(alt, "braid alt", [&] {
    const auto w = b_alt.parse();
    rep.inputs["braid"] = echo_braid(w);
    rep.results = {{"alternating", bl::is_alternating(w)}, {"positive", bl::is_positive(w)}};
  });

  BraidArg b_comp;
  auto* comps = braid->add_subcommand("components", "components of the closure");
  add_braid_opts(comps, b_comp);
  bind(comps, "braid components", [&] {
    const auto w = b_comp.parse();
    rep.inputs["braid"] = echo_braid(w);
    const auto cp = bl::closure_permutation(w);
    Json perm = Json::array(), cycles = Json::array();
    for (int x : cp.perm) perm.push_back(x + 1);
    for (const auto& c : cp.cycles) {
      Json cyc = Json::array();
      for (int x : c) cyc.push_back(x + 1);
      cycles.push_back(std::move(cyc));
    }
    rep.results = {{"components", cp.cycles.size()}, {"permutation", perm}, {"cycles", cycles}};
  });

  // ---- invariant ----
  auto* inv = app.add_subcommand("invariant", "link invariants of the closure");
  inv->require_subcommand(1);
  int crossing_limit = 16;
  bool cross_check = false;

  BraidArg i_s;
  auto* s_cmd = inv->add_subcommand("s", "Rasmussen invariant");
  add_braid_opts(s_cmd, i_s);
  s_cmd->add_option("--crossing-limit", crossing_limit, "exact Lee engine limit")->capture_default_str();
  s_cmd->add_flag("--cross-check", cross_check, "also run the exact engine when a formula applies");
  bind(s_cmd, "invariant s", [&] {
    const auto w = i_s.parse();
    rep.inputs["braid"] = echo_braid(w);
    rep.inputs["crossing_limit"] = crossing_limit;
    rep.inputs["cross_check"] = cross_check;
    const auto r = bl::rasmussen_s(w, {crossing_limit, cross_check});
    rep.results = bl::json_io::s_result(r);
    if (r.method == bl::SMethod::bounds_only)
      rep.warnings.push_back("no exact method within the crossing limit; only bounds reported");
  });

  BraidArg i_sig;
  auto* sig = inv->add_subcommand("sigma", "signature (positive trefoil = +2)");
  add_braid_opts(sig, i_sig);
  bind(sig, "invariant sigma", [&] {
    const auto w = i_sig.parse();
    rep.inputs["braid"] = echo_braid(w);
    rep.results = {{"value", bl::link_signature(w)}};
  });

  BraidArg i_bounds;
  auto* bounds = inv->add_subcommand("bounds", "writhe / Seifert circle bounds on s");
  add_braid_opts(bounds, i_bounds);
  bind(bounds, "invariant bounds", [&] {
    const auto w = i_bounds.parse();
    rep.inputs["braid"] = echo_braid(w);
    const auto d = bl::braid_closure_diagram(w);
    const auto b = bl::rasmussen_bounds(d);
    rep.results = {{"writhe", bl::writhe(d)}, {"seifert_circles", bl::seifert_circle_count(d)}, {"lo", b.lo}, {"hi", b.hi}};
  });

  BraidArg i_mat;
  auto* mat = inv->add_subcommand("seifert-matrix", "Seifert matrix in the column-loop basis");
  add_braid_opts(mat, i_mat);
  bind(mat, "invariant seifert-matrix", [&] {
    const auto w = i_mat.parse();
    rep.inputs["braid"] = echo_braid(w);
    const auto v = bl::seifert_matrix(w);
    rep.results = {{"rank", v.rank()}, {"entries", bl::json_io::matrix(v.entries)}};
  });

  BraidArg i_pd;
  auto* pd = inv->add_subcommand("pd", "PD code of the closure diagram");
  add_braid_opts(pd, i_pd);
  bind(pd, "invariant pd", [&] {
    const auto w = i_pd.parse();
    rep.inputs["braid"] = echo_braid(w);
    Json lines = Json::array();
    std::istringstream in(bl::pd_code(bl::braid_closure_diagram(w)));
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    rep.results = {{"pd", lines}};
  });

  BraidArg i_dump;
  auto* dump = inv->add_subcommand("lee-dump", "dump the Lee complex as text (gen/d lines)");
  add_braid_opts(dump, i_dump);
  dump->add_option("--crossing-limit", crossing_limit, "exact Lee engine limit")->capture_default_str();
  bind(dump, "invariant lee-dump", [&] {
    const auto w = i_dump.parse();
    bl::LeeOptions opt;
    opt.crossing_limit = crossing_limit;
    std::ostringstream out;
    bl::dump_lee_complex(bl::build_lee_complex(bl::braid_closure_diagram(w), opt), out);
    rep.csv = out.str();
  });

  // ---- qm ----
  auto* qm = app.add_subcommand("qm", "quasi-morphism laboratory");
  qm->require_subcommand(1);
  bool csv = false;

  std::string d_inv = "s";
  int d_n = 3;
  std::size_t d_samples = 500, d_maxlen = 6;
  std::uint64_t seed = 0;
  bool d_positive = false, d_distinct = false;
  auto* defect = qm->add_subcommand("defect", "sample |phi(ab) - phi(a) - phi(b)|");
  defect->add_option("--invariant", d_inv, "lk, sigma, s or shifted (s - lk + n - 1)")->capture_default_str();
  defect->add_option("--strands,-n", d_n, "braid group B_n")->capture_default_str();
  defect->add_option("--samples", d_samples, "number of pairs")->capture_default_str();
  defect->add_option("--max-len", d_maxlen, "maximal word length")->capture_default_str();
  defect->add_option("--seed", seed, "random seed")->capture_default_str();
  defect->add_option("--crossing-limit", crossing_limit, "exact Lee engine limit")->capture_default_str();
  defect->add_flag("--positive", d_positive, "sample positive words only");
  defect->add_flag("--distinct", d_distinct, "redraw pairs already sampled (by normal form)");
  bind(defect, "qm defect", [&] {
    rep.seed = seed;
    rep.inputs = {{"invariant", d_inv},       {"n", d_n},         {"samples", d_samples}, {"max_len", d_maxlen},
                  {"positive", d_positive}, {"distinct", d_distinct}, {"crossing_limit", crossing_limit}};
    bl::DefectOptions opt;
    opt.strands = d_n;
    opt.samples = d_samples;
    opt.max_length = d_maxlen;
    opt.seed = seed;
    opt.positive_only = d_positive;
    opt.distinct = d_distinct;
    const auto r = bl::defect_sample(invariant_by_name(d_inv, crossing_limit), opt);
    rep.results = bl::json_io::defect_report(r);
    if (r.skipped) rep.warnings.push_back(std::to_string(r.skipped) + " pairs skipped (not computable)");
    if (r.evaluated < r.requested) rep.warnings.push_back("fewer pairs evaluated than requested");
  });

  std::string h_inv = "s";
  BraidArg h_braid;
  long h_kmax = 10;
  auto* homog = qm->add_subcommand("homogenize", "phi(g^k)/k for k = 1..kmax");
  homog->add_option("--invariant", h_inv, "lk, sigma, s or shifted")->capture_default_str();
  add_braid_opts(homog, h_braid);
  homog->add_option("--kmax", h_kmax, "largest power")->capture_default_str();
  homog->add_option("--crossing-limit", crossing_limit, "exact Lee engine limit")->capture_default_str();
  homog->add_flag("--csv", csv, "emit k,value CSV");
  bind(homog, "qm homogenize", [&] {
    const auto w = h_braid.parse();
    rep.inputs = {{"invariant", h_inv}, {"braid", echo_braid(w)}, {"kmax", h_kmax}};
    const auto est = bl::homogenize(invariant_by_name(h_inv, crossing_limit), w, h_kmax);
    rep.results = bl::json_io::homogenization(est);
    if (est.truncated) rep.warnings.push_back("sequence truncated at the first uncomputable power");
    if (!est.closed_form) rep.warnings.push_back("no closed form applies; the samples are not a certified limit");
    if (csv) {
      std::ostringstream out;
      out << "k,value,decimal\n";
      for (const auto& [k, v] : est.samples) out << k << ',' << bl::rational_string(v) << ',' << bl::fixed10(v.get_d()) << '\n';
      rep.csv = out.str();
    }
  });

  int p_n = 3;
  std::string p_sigma, p_s, p_form;
  auto* phi = qm->add_subcommand("phi", "phi_odd / phi_even combination");
  phi->add_option("--strands,-n", p_n, "n (parity selects the combination)")->required();
  phi->add_option("--sigma-tilde", p_sigma, "homogenized signature, rational p/q")->required();
  phi->add_option("--s-tilde", p_s, "homogenized s, rational p/q")->required();
  phi->add_option("--form", p_form, "odd or even (default: parity of n)")->check(CLI::IsMember({"odd", "even"}));
  bind(phi, "qm phi", [&] {
    if (p_form.empty()) p_form = p_n % 2 ? "odd" : "even";
    rep.inputs = {{"n", p_n}, {"sigma_tilde", p_sigma}, {"s_tilde", p_s}, {"form", p_form}};
    const auto sigma = bl::parse_rational(p_sigma), s = bl::parse_rational(p_s);
    const auto v = p_form == "odd" ? bl::phi_odd(p_n, sigma, s) : bl::phi_even(p_n, sigma, s);
    rep.results = {{"combination", "phi_" + p_form}, {"value", bl::json_io::rational(v)}};
  });

  std::string sb_phi, sb_defect;
  auto* sbounds = qm->add_subcommand("bounds", "stable commutator / torsion length lower bounds");
  sbounds->add_option("--phi", sb_phi, "homogeneous quasi-morphism value, rational")->required();
  sbounds->add_option("--defect", sb_defect, "defect D > 0, rational")->required();
  bind(sbounds, "qm bounds", [&] {
    rep.inputs = {{"phi", sb_phi}, {"defect", sb_defect}};
    rep.results = bl::json_io::stable_bounds(bl::stable_length_bounds(bl::parse_rational(sb_phi), bl::parse_rational(sb_defect)));
    rep.warnings.push_back("bounds are conditional on the supplied defect");
  });

  int pr_n = 4;
  std::size_t pr_samples = 50;
  auto* prop1 = qm->add_subcommand("prop1", "torsion generators and w^{n(n-1)} in the commutator subgroup");
  prop1->add_option("--strands,-n", pr_n, "n")->capture_default_str();
  prop1->add_option("--samples", pr_samples, "random words")->capture_default_str();
  prop1->add_option("--seed", seed, "random seed")->capture_default_str();
  bind(prop1, "qm prop1", [&] {
    rep.seed = seed;
    rep.inputs = {{"n", pr_n}, {"samples", pr_samples}};
    rep.results = bl::json_io::prop1(bl::prop1_verify(pr_n, pr_samples, seed));
  });

  auto* examples = qm->add_subcommand("examples", "B_5 conjugation, commutators, B_6 component counts");
  bind(examples, "qm examples", [&] {
    const auto r = bl::example_checks();
    rep.results = bl::json_io::examples(r);
    rep.warnings.push_back(r.component_note);
  });

  // ---- flow ----
  auto* flow = app.add_subcommand("flow", "linear flow on the torus");
  flow->require_subcommand(1);
  bl::TorusFlowConfig cfg;
  std::vector<double> x0{0.0, 0.0};
  double tmax = 40;
  long knot_T = 13;
  auto add_flow_opts = [&](CLI::App* sub) {
    sub->add_option("--omega", cfg.omega, "slope of the field (1, omega)")->capture_default_str();
    sub->add_option("--x0", x0, "start point x y in [0,1)^2")->expected(2);
    sub->add_option("--epsilon", cfg.epsilon, "return proximity, 0 < eps < 1/2")->capture_default_str();
  };
  auto flow_inputs = [&] {
    cfg.x0 = x0[0];
    cfg.y0 = x0[1];
    return Json{{"omega", bl::fixed10(cfg.omega)}, {"x0", {bl::fixed10(cfg.x0), bl::fixed10(cfg.y0)}},
                {"epsilon", bl::fixed10(cfg.epsilon)}};
  };

  auto* series = flow->add_subcommand("series", "asymptotic series over return times");
  add_flow_opts(series);
  series->add_option("--tmax", tmax, "largest time")->capture_default_str();
  series->add_flag("--csv", csv, "emit CSV");
  bind(series, "flow series", [&] {
    rep.inputs = flow_inputs();
    rep.inputs["tmax"] = bl::fixed10(tmax);
    const auto s = bl::asymptotic_series(cfg, tmax);
    rep.results = bl::json_io::series(s);
    for (const auto& w : s.warnings) rep.warnings.push_back(w);
    if (csv) {
      std::ostringstream out;
      bl::write_series_csv(s, out);
      rep.csv = out.str();
    }
  });

  auto* knot = flow->add_subcommand("knot", "torus knot closing the orbit at a return time");
  add_flow_opts(knot);
  knot->add_option("--T", knot_T, "return time")->required();
  bind(knot, "flow knot", [&] {
    rep.inputs = flow_inputs();
    rep.inputs["T"] = knot_T;
    rep.results = bl::json_io::orbit_knot(bl::orbit_closure_knot(cfg, knot_T));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int code = 0;
  try {
    action();
  } catch (const bl::DomainError& e) {
    if (rep.inputs.empty()) rep.inputs["argv"] = std::vector<std::string>(argv + 1, argv + argc);
    rep.results = {{"error", e.what()}};
    code = 1;
  } catch (const std::exception& e) {
    rep.results = {{"error", std::string("internal: ") + e.what()}};
    code = 1;
  }
  if (rep.csv && code == 0)
    std::cout << *rep.csv;
  else
    std::cout << envelope(rep).dump(2) << '\n';
  return code;
}
