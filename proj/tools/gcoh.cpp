// gcoh: command line front end.
//
//   gcoh <command> [scenario] [options]
//
// Exit status: 0 ok, 1 parse or usage error, 2 FAILS, 3 UNSTABILIZED,
// 4 refusal (fiber coverage not certified).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gcoh/coarsen.hpp"
#include "gcoh/homres.hpp"
#include "gcoh/localcoh.hpp"
#include "gcoh/monoidx.hpp"
#include "gcoh/scenario.hpp"
#include "report.hpp"

namespace {

using namespace gcoh;
using report::Json;
using report::Tsv;

enum Exit { Ok = 0, ParseError = 1, Fails = 2, Unstabilized = 3, Refused = 4 };

struct Options {
  std::string command;
  std::string scenario_path;
  int i = 0;
  std::string ideal, psi, gwindow, hwindow;
  int ncap = 0, raycap = 0;
  bool assume_covered = false;
  int k = 10;
  unsigned seed = 20240601;
  std::string json_path, tsv_path, out_prefix;
};

struct Result {
  Json json;
  Tsv tsv;
  int status = Ok;
};

Scenario load(const Options& o) {
  if (o.scenario_path.empty()) throw std::invalid_argument(o.command + " needs a scenario file");
  std::ifstream f(o.scenario_path);
  if (!f) throw std::invalid_argument("cannot read " + o.scenario_path);
  std::stringstream ss;
  ss << f.rdbuf();
  Scenario s = parse_scenario(ss.str());
  if (!o.ideal.empty()) s.ideal = parse_ideal_text(o.ideal, *s.ring);
  if (!o.psi.empty()) {
    const auto m = parse_matrix_text(o.psi);
    PsiSpec p = s.psi.value_or(PsiSpec{DegreeGroup(m.size(), {}), {}, std::nullopt});
    p.matrix = m;
    if (!s.psi) p.target = DegreeGroup(m.size(), {});
    s.psi = p;
    const auto e = s.epimorphism();
    if (!e.verify_surjective()) throw ScenarioError(false, {{1, 1, "--psi is not surjective"}});
  }
  if (!o.gwindow.empty()) s.gwindow = parse_window_text(o.gwindow, s.ring->group().free_rank());
  if (!o.hwindow.empty()) {
    if (!s.psi) throw ScenarioError(false, {{1, 1, "--hwindow needs psi"}});
    s.hwindow = parse_window_text(o.hwindow, s.psi->target.free_rank());
  }
  if (o.ncap) s.caps.n_cap = o.ncap;
  if (o.raycap) s.caps.ray_cap = o.raycap;
  return s;
}

const MonomialIdeal& need_ideal(const Scenario& s) {
  if (!s.ideal) throw std::invalid_argument("scenario has no ideal (add an ideal block or --ideal)");
  return *s.ideal;
}

Json scenario_json(const Scenario& s) {
  const auto& R = *s.ring;
  Json j;
  j["group"] = R.group().describe();
  j["variables"] = R.names();
  j["variable_degrees"] = report::degree_list(R.variable_degrees());
  if (s.ideal) {
    Json g = Json::array();
    for (const auto& m : s.ideal->generators()) g.push_back(to_string(m, R.names()));
    j["ideal"] = g;
  }
  const auto M = s.source_module();
  j["module_generators"] = report::degree_list(M.generator_degrees());
  j["module_relations"] = M.relations().size();
  if (s.psi) {
    j["psi_target"] = s.psi->target.describe();
    j["psi_matrix"] = s.psi->matrix;
  }
  j["n_cap"] = s.caps.n_cap;
  j["ray_cap"] = s.caps.ray_cap;
  return j;
}

int colimit_status(const ColimitResult& r) { return r.stabilized ? Ok : Unstabilized; }

Result table_result(const HilbertTable& t, const std::string& what) {
  Result r;
  r.json["table"] = report::table_json(t);
  r.tsv = report::table_tsv(t, what);
  return r;
}

Result colimit_result(const ColimitResult& c, const std::string& what) {
  Result r;
  r.json["result"] = report::colimit_json(c);
  r.tsv = report::table_tsv(c.table, what);
  r.tsv.notes = {"route " + c.route, c.stabilized ? "stabilized at stage " + std::to_string(c.stable_stage)
                                                  : "UNSTABILIZED by the stage cap"};
  r.status = colimit_status(c);
  return r;
}

Result run_lc(const Scenario& s, int i) {
  const auto& a = need_ideal(s);
  const auto M = s.source_module();
  const auto w = s.source_window();
  const auto cech = local_cohomology_cech(i, a, M, w, s.caps);
  const auto ext = local_cohomology_ext(i, a, M, w, s.caps.n_cap);
  Result r;
  r.json["index"] = i;
  r.json["cech"] = report::colimit_json(cech);
  r.json["ext"] = report::colimit_json(ext);
  std::vector<std::string> disagree;
  r.tsv.header = {"degree", "cech", "ext"};
  for (const auto& g : w) {
    r.tsv.rows.push_back({to_string(g), std::to_string(cech.table.at(g)), std::to_string(ext.table.at(g))});
    if (cech.table.at(g) != ext.table.at(g)) disagree.push_back(to_string(g));
  }
  r.json["routes_agree"] = disagree.empty();
  r.json["disagreements"] = disagree;
  r.tsv.notes = {"H^" + std::to_string(i) + " by " + cech.route + " (stage " + std::to_string(cech.stable_stage) +
                 ") and " + ext.route + " (stage " + std::to_string(ext.stable_stage) + ")"};
  if (!cech.stabilized || !ext.stabilized) r.status = Unstabilized;
  else if (!disagree.empty()) r.status = Fails;
  return r;
}

Result run_coarsen(const Scenario& s, bool assume) {
  const auto M = s.source_module();
  const auto psi = s.epimorphism();
  const auto coarse = coarsen_ring(*s.ring, psi, s.psi->certificate);
  const auto Mc = coarsen_module(M, psi, coarse);
  const auto gw = s.source_window();
  const auto hw = s.target_window();
  CoverageEvidence ev{&M, coarse, assume};
  CoverageKind kind{};
  const auto pushed = coarsen_table(M.hilbert(gw), psi, hw, ev, &kind);
  const auto direct = Mc.hilbert(hw);
  Result r;
  r.json["coverage"] = to_string(kind);
  r.json["coarse_variable_degrees"] = report::degree_list(coarse->variable_degrees());
  Json rows = Json::array();
  std::vector<std::string> witnesses;
  r.tsv.header = {"h", "fiber_sum", "coarse_dim"};
  for (const auto& h : hw) {
    rows.push_back(Json{{"h", to_string(h)}, {"fiber_sum", pushed.at(h)}, {"coarse_dim", direct.at(h)}});
    r.tsv.rows.push_back({to_string(h), std::to_string(pushed.at(h)), std::to_string(direct.at(h))});
    if (pushed.at(h) != direct.at(h)) witnesses.push_back(to_string(h));
  }
  r.json["rows"] = rows;
  r.json["witnesses"] = witnesses;
  r.json["verdict"] = witnesses.empty() ? "COMMUTES_ON_WINDOW" : "FAILS";
  r.tsv.notes = {"coverage " + to_string(kind), std::string("verdict ") + (witnesses.empty() ? "COMMUTES_ON_WINDOW" : "FAILS")};
  r.status = witnesses.empty() ? Ok : Fails;
  return r;
}

Result run_check_commute(const Scenario& s, int i, bool assume) {
  const auto M = s.source_module();
  const auto psi = s.epimorphism();
  const auto coarse = coarsen_ring(*s.ring, psi, s.psi->certificate);
  const auto rep = check_commutation(i, need_ideal(s), M, psi, coarse, s.target_window(), s.source_window(), s.caps, assume);
  Result r;
  r.json["index"] = i;
  r.json["verdict"] = to_string(rep.verdict);
  r.json["coverage"] = to_string(rep.coverage);
  r.json["kernel_finite"] = psi.kernel_is_finite();
  Json routes;
  for (const auto& [k, v] : rep.routes) routes[k] = Json{{"route", v}, {"stable_stage", rep.stable_stages.at(k)}};
  r.json["routes"] = routes;
  r.json["unstabilized"] = rep.unstabilized;
  Json rows = Json::array();
  r.tsv.header = {"h", "fine_cech", "fine_ext", "coarse_cech", "coarse_ext", "agree"};
  for (const auto& row : rep.rows) {
    rows.push_back(Json{{"h", to_string(row.h)},
                        {"fiber", report::degree_list(row.fiber)},
                        {"fine_cech", row.fine_cech},
                        {"fine_ext", row.fine_ext},
                        {"coarse_cech", row.coarse_cech},
                        {"coarse_ext", row.coarse_ext},
                        {"agree", row.agree}});
    r.tsv.rows.push_back({to_string(row.h), std::to_string(row.fine_cech), std::to_string(row.fine_ext),
                          std::to_string(row.coarse_cech), std::to_string(row.coarse_ext), row.agree ? "yes" : "NO"});
  }
  r.json["rows"] = rows;
  r.json["witnesses"] = report::degree_list(rep.witnesses);
  r.json["scope"] = "dimension equality on the listed window only";
  r.tsv.notes = {"H^" + std::to_string(i) + " verdict " + to_string(rep.verdict) + " (coverage " +
                 to_string(rep.coverage) + ")"};
  r.status = rep.verdict == Verdict::CommutesOnWindow ? Ok : rep.verdict == Verdict::Fails ? Fails : Unstabilized;
  return r;
}

Result run_four_term(const Scenario& s) {
  const auto rep = check_four_term_sequence(need_ideal(s), s.source_module(), s.source_window(), s.caps);
  Result r;
  r.json["holds"] = rep.holds;
  r.json["stabilized"] = rep.stabilized;
  r.json["stage"] = rep.stage;
  Json rows = Json::array();
  r.tsv.header = {"degree", "gamma", "M", "rank(M->D0)", "D0", "H1", "exact"};
  for (const auto& row : rep.rows) {
    rows.push_back(Json{{"degree", to_string(row.degree)},
                        {"gamma", row.gamma},
                        {"module", row.module},
                        {"map_rank", row.map_rank},
                        {"D0", row.transform},
                        {"H1", row.cohomology},
                        {"exact", row.exact}});
    r.tsv.rows.push_back({to_string(row.degree), std::to_string(row.gamma), std::to_string(row.module),
                          std::to_string(row.map_rank), std::to_string(row.transform), std::to_string(row.cohomology),
                          row.exact ? "yes" : "NO"});
  }
  r.json["four_term"] = rows;
  Json higher = Json::array();
  for (const auto& h : rep.higher)
    higher.push_back(Json{{"i", h.index}, {"degree", to_string(h.degree)}, {"D_i", h.transform}, {"H_i_plus_1", h.cohomology}});
  r.json["higher"] = higher;
  r.json["failures"] = rep.failures;
  r.json["unstabilized"] = rep.unstabilized;
  r.tsv.notes = {std::string("sequence ") + (rep.holds ? "exact on window" : rep.stabilized ? "FAILS" : "UNSTABILIZED")};
  for (const auto& f : rep.failures) r.tsv.notes.push_back(f);
  r.status = !rep.stabilized ? Unstabilized : rep.holds ? Ok : Fails;
  return r;
}

Rational random_rational(std::mt19937& rng, int num_hi, int den_hi) {
  std::uniform_int_distribution<int> num(1, num_hi), den(1, den_hi);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Result run_counterexample(int K, unsigned seed) {
  using namespace gcoh::monoid;
  if (K < 1) throw std::invalid_argument("--k must be at least 1");
  Result r;
  bool ok = true;
  Json levels = Json::array();
  r.tsv.header = {"K", "support", "count", "well_defined"};
  for (int k = 1; k <= K; ++k) {
    const auto f = build_witness_hom(k);
    const auto cert = certify(f, {Rational(1, 3 * k), Rational(1, k), Rational(2)});
    const auto count = graded_component_count(f);
    Json support = Json::array();
    std::string cells;
    for (const auto& g : cert.support) {
      support.push_back(g.get_str());
      cells += (cells.empty() ? "" : ",") + g.get_str();
    }
    Json probes = Json::array();
    for (const auto& [lvl, beta] : cert.probes)
      probes.push_back(Json{{"k", lvl}, {"e", beta.get_str()}, {"image", to_string(projection(lvl).apply(Element::basis(beta)))}});
    const bool good = count == static_cast<std::size_t>(k) && cert.well_defined && cert.distinct_degrees;
    ok = ok && good;
    levels.push_back(Json{{"K", k},
                          {"support", support},
                          {"component_count", count},
                          {"probes", probes},
                          {"locally_finite", cert.well_defined},
                          {"certified", good}});
    r.tsv.rows.push_back({std::to_string(k), "{" + cells + "}", std::to_string(count), cert.well_defined ? "yes" : "NO"});
  }
  r.json["witness_family"] = levels;

  std::mt19937 rng(seed);
  Json idem = Json::array();
  for (int t = 0; t < 5; ++t) {
    const auto alpha = random_rational(rng, 9, 9);
    const auto w = idempotency_witness(alpha);
    ok = ok && w.verified();
    idem.push_back(Json{{"alpha", alpha.get_str()}, {"factor", to_string(w.factor)}, {"verified", w.verified()}});
  }
  r.json["idempotency"] = idem;

  Json nfg = Json::array();
  std::uniform_int_distribution<int> size(1, 4);
  for (int t = 0; t < 5; ++t) {
    std::vector<Element> S;
    const int n = size(rng);
    for (int j = 0; j < n; ++j) {
      Element e = Element::basis(random_rational(rng, 7, 8));
      if (rng() % 2) e = e + Element::basis(random_rational(rng, 7, 3), 2);
      S.push_back(e);
    }
    const auto w = non_finite_generation_witness(S);
    ok = ok && w.verified();
    Json set = Json::array();
    for (const auto& e : S) set.push_back(to_string(e));
    nfg.push_back(Json{{"S", set}, {"bound", w.bound.get_str()}, {"witness", to_string(w.witness)}, {"verified", w.verified()}});
  }
  r.json["non_finite_generation"] = nfg;
  r.json["infinite_family"] = {
      {"certified", false},
      {"statement", "for some Q-graded module N, graded Hom(m, N) -> Hom(m, N) is a monomorphism but not an epimorphism"},
      {"status", "published theorem from the literature, not certified here; only the truncations f_K above are checked, "
                 "and they are not claimed to be the literature's witness"}};
  r.tsv.notes = {"finite truncations f_K certified for K = 1.." + std::to_string(K),
                 "the statement for the full family is a published theorem, not certified here"};
  r.status = ok ? Ok : Fails;
  return r;
}

Result dispatch(const Options& o) {
  if (o.command == "counterexample") return run_counterexample(o.k, o.seed);
  const Scenario s = load(o);
  Result r;
  if (o.command == "hilbert") {
    r = table_result(s.source_module().hilbert(s.source_window()), "dim");
  } else if (o.command == "hom") {
    r = table_result(graded_hom_table(s.source_module(), s.target_module(), s.source_window()), "dim_hom");
  } else if (o.command == "ext") {
    r = table_result(graded_ext(o.i, s.ring, need_ideal(s), s.source_module(), s.source_window()),
                     "dim_ext" + std::to_string(o.i));
  } else if (o.command == "gamma") {
    const auto t = torsion_submodule(need_ideal(s), s.source_module(), s.source_window(), s.caps.n_cap);
    r = table_result(t.table, "dim_gamma");
    r.json["stabilized"] = t.stabilized;
    r.json["stable_stage"] = t.stable_stage;
    r.status = t.stabilized ? Ok : Unstabilized;
  } else if (o.command == "cech") {
    r = colimit_result(local_cohomology_cech(o.i, need_ideal(s), s.source_module(), s.source_window(), s.caps),
                       "dim_H" + std::to_string(o.i));
  } else if (o.command == "lc") {
    r = run_lc(s, o.i);
  } else if (o.command == "dtransform") {
    r = colimit_result(ideal_transform(o.i, need_ideal(s), s.source_module(), s.source_window(), s.caps.n_cap),
                       "dim_D" + std::to_string(o.i));
  } else if (o.command == "coarsen") {
    r = run_coarsen(s, o.assume_covered);
  } else if (o.command == "check-commute") {
    r = run_check_commute(s, o.i, o.assume_covered);
  } else if (o.command == "check-prop70") {
    r = run_four_term(s);
  } else {
    throw std::invalid_argument("unknown command " + o.command);
  }
  Json merged{{"scenario", scenario_json(s)}, {"window", report::window_json(s.source_window())}};
  merged.update(r.json);
  r.json = std::move(merged);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded local cohomology and coarsening workbench"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"hilbert", "Hilbert table of the module on gwindow"},
      {"hom", "dimensions of graded Hom(module, target_module) on gwindow"},
      {"ext", "Ext^i(R/a, module) on gwindow"},
      {"gamma", "a-torsion submodule"},
      {"cech", "H^i from the Cech complex"},
      {"lc", "H^i by the Cech and Ext routes, compared"},
      {"dtransform", "ideal transform D^i"},
      {"coarsen", "fiber sums of the Hilbert table against the coarsened module"},
      {"check-commute", "H^i over G coarsened against H^i over H"},
      {"check-prop70", "0 -> Gamma -> M -> D^0 -> H^1 -> 0 and D^i = H^(i+1)"},
      {"counterexample", "monoid algebra witness family"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    if (name != "counterexample") sub->add_option("scenario", o.scenario_path, "scenario file")->required();
    sub->add_option("--i", o.i, "cohomological index")->check(CLI::NonNegativeNumber);
    sub->add_option("--ideal", o.ideal, "monomial generators, e.g. \"x,y^2\"");
    sub->add_option("--psi", o.psi, "matrix of psi, rows separated by ';'");
    sub->add_option("--gwindow", o.gwindow, "source window lo:hi");
    sub->add_option("--hwindow", o.hwindow, "target window lo:hi");
    sub->add_option("--ncap", o.ncap, "stage cap for direct limits")->check(CLI::Range(2, 64));
    sub->add_option("--raycap", o.raycap, "ray cap for localizations")->check(CLI::Range(1, 64));
    sub->add_flag("--assume-support-covered", o.assume_covered, "accept fiber sums that cannot be certified");
    sub->add_option("--k", o.k, "largest truncation K")->check(CLI::Range(1, 1000));
    sub->add_option("--seed", o.seed, "seed for randomized certificates");
    sub->add_option("--json", o.json_path, "write the JSON report here");
    sub->add_option("--tsv", o.tsv_path, "write the TSV table here");
    sub->add_option("--out", o.out_prefix, "write PREFIX.json and PREFIX.tsv");
    sub->callback([&o, name = name] { o.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : ParseError;
  }

  Result r;
  try {
    r = dispatch(o);
  } catch (const ScenarioError& e) {
    std::cerr << (e.syntax() ? "syntax error" : "invalid scenario") << "\n" << e.what() << "\n";
    return ParseError;
  } catch (const CoverageRefused& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return Refused;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseError;
  }

  static const char* names[] = {"ok", "parse_error", "FAILS", "UNSTABILIZED", "refused"};
  Json out{{"command", o.command}, {"generated_at", report::timestamp()}};
  out.update(r.json);
  out["exit_status"] = names[r.status];
  const std::string json_text = out.dump(2) + "\n";
  const std::string tsv_text = r.tsv.str();
  try {
    if (!o.out_prefix.empty()) {
      report::write_file(o.out_prefix + ".json", json_text);
      report::write_file(o.out_prefix + ".tsv", tsv_text);
    }
    if (!o.json_path.empty()) report::write_file(o.json_path, json_text);
    if (!o.tsv_path.empty()) report::write_file(o.tsv_path, tsv_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseError;
  }
  std::cout << tsv_text;
  return r.status;
}
