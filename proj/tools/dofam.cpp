// Command-line front end: derive causal graphs, check axioms, run separations and suites.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dofam/axioms.hpp"
#include "dofam/axioms_io.hpp"
#include "dofam/derive.hpp"
#include "dofam/derive_io.hpp"
#include "dofam/errors.hpp"
#include "dofam/graph_io.hpp"
#include "dofam/scm.hpp"
#include "dofam/scm_io.hpp"
#include "dofam/separation.hpp"
#include "dofam/suites.hpp"
#include "dofam/table_io.hpp"

using namespace dofam;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 7;
};

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw InputError("cannot write " + g.output);
  out << text;
}

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

NodeSet labels_to_set(const Bdmg& g, const std::string& s) {
  NodeSet out;
  for (const auto& l : split_labels(s)) out.insert(g.index(l));
  return out;
}

InterventionalFamily load_family(const std::string& path) { return family_from_json(read_json_file(path)); }

// ---- derive ----

struct DeriveArgs {
  std::string family;
  std::string mode = "iterative";
  std::string arc_rule = "standard";
  std::string arc_policy = "every_i";
  bool pip_adjust = false;
  bool transitivity = false;
};

int run_derive(const Globals& glob, const DeriveArgs& a) {
  const InterventionalFamily fam = load_family(a.family);
  const CausalDerivation d = derive(fam, derive_mode_from_string(a.mode));
  const ArcRule rule = arc_rule_from_string(a.arc_rule);
  const ArcPolicy policy = arc_policy_from_string(a.arc_policy);
  const bool variant = rule != ArcRule::standard || policy != ArcPolicy::every_i;
  const Bdmg g = variant ? derive_variants(fam, d, rule, policy) : d.g;

  if (glob.format == "dot") {
    std::string text = graph_to_dot(g, "G");
    for (NodeId i = 0; i < fam.size(); ++i) text += graph_to_dot(d.g_i[i], "G_" + fam.name(i));
    emit(glob, text);
    return kOk;
  }
  if (glob.format == "text") {
    std::ostringstream out;
    out << "rounds: " << d.rounds << "\n";
    for (const auto& [from, to] : g.arrows()) out << g.name(from) << " -> " << g.name(to) << "\n";
    for (const auto& [x, y] : g.arcs()) out << g.name(x) << " <-> " << g.name(y) << "\n";
    emit(glob, out.str());
    return kOk;
  }
  nlohmann::json j = derivation_to_json(fam, d);
  if (variant) {
    j["variant"] = {{"arc_rule", to_string(rule)}, {"arc_policy", to_string(policy)}, {"G", graph_to_json(g)}};
  }
  if (a.pip_adjust) j["pip_adjust"] = pip_adjustment_to_json(fam, pip_adjust(fam, d));
  if (a.transitivity) j["transitivity"] = transitivity_to_json(fam, check_transitivity(fam));
  emit(glob, dump_json(j));
  return kOk;
}

// ---- check ----

struct CheckArgs {
  std::string family;
  std::string distribution;
  std::string axioms = "A1";
  std::string graph;
  std::string other;
};

int run_check(const Globals& glob, const CheckArgs& a) {
  const InterventionalFamily fam = load_family(a.family);
  std::optional<JointTable> p;
  if (!a.distribution.empty()) p = table_from_json(read_json_file(a.distribution));
  auto need_p = [&](const std::string& axiom) -> const JointTable& {
    if (!p) throw CLI::ValidationError("--axioms", axiom + " needs a distribution argument");
    return *p;
  };

  nlohmann::json reports = nlohmann::json::array();
  bool all_hold = true;
  for (const auto& axiom : split_labels(a.axioms)) {
    nlohmann::json r;
    if (axiom == "A1" || axiom == "transitivity") {
      const TransitivityReport t = check_transitivity(fam);
      r = transitivity_to_json(fam, t);
      r["axiom"] = "A1";
      r["holds"] = t.axiom_holds;
    } else if (axiom == "A2") {
      r = axiom_report_to_json(check_observable(fam, need_p(axiom)));
    } else if (axiom == "A3") {
      r = axiom_report_to_json(check_strongly_observable(fam, need_p(axiom)));
    } else if (axiom == "A4") {
      r = axiom_report_to_json(check_quantifiable(fam, need_p(axiom)));
    } else if (axiom == "A5") {
      r = axiom_report_to_json(check_bivariate_quantifiable(fam, need_p(axiom)));
    } else if (axiom == "A5-all-pairs") {
      r = axiom_report_to_json(check_bivariate_quantifiable(fam, need_p(axiom), PairScope::all_pairs));
    } else if (axiom == "compatible") {
      r = axiom_report_to_json(check_compatible(fam, need_p(axiom)));
    } else if (axiom == "cause-conditionals") {
      r = axiom_report_to_json(check_cause_conditionals(fam, need_p(axiom)));
    } else if (axiom == "edge-cause") {
      if (a.graph.empty()) throw CLI::ValidationError("--axioms", "edge-cause needs --graph");
      r = axiom_report_to_json(check_edge_cause(fam, graph_from_json(read_json_file(a.graph))));
    } else if (axiom == "congruent") {
      if (a.other.empty()) throw CLI::ValidationError("--axioms", "congruent needs --other");
      r = axiom_report_to_json(check_congruent(fam, load_family(a.other)));
    } else if (axiom == "reconstruct") {
      const Reconstruction rec = reconstruct_p(fam, derive(fam), p);
      r = reconstruction_to_json(rec);
      r["axiom"] = "reconstruct";
      r["holds"] = rec.matches_reference.value_or(true);
    } else {
      throw CLI::ValidationError("--axioms", "unknown axiom " + axiom);
    }
    all_hold = all_hold && r.at("holds").get<bool>();
    reports.push_back(r);
  }

  if (glob.format == "text") {
    std::ostringstream out;
    for (const auto& r : reports) {
      out << r.at("axiom").get<std::string>() << ": " << (r.at("holds").get<bool>() ? "holds" : "fails") << "\n";
    }
    emit(glob, out.str());
  } else {
    emit(glob, dump_json({{"reports", reports}, {"all_hold", all_hold}}));
  }
  return all_hold ? kOk : kFailed;
}

// ---- separate ----

struct SeparateArgs {
  std::string graph;
  std::string criterion = "sigma";
  std::string a, b, c;
};

int run_separate(const Globals& glob, const SeparateArgs& s) {
  const Bdmg g = graph_from_json(read_json_file(s.graph));
  const Criterion crit = criterion_from_string(s.criterion);
  const NodeSet a = labels_to_set(g, s.a), b = labels_to_set(g, s.b), c = labels_to_set(g, s.c);
  const bool sep = separated(g, a, b, c, crit);
  std::optional<Path> path;
  if (!sep) {
    for (NodeId x : a) {
      for (NodeId y : b) {
        if (!path) path = find_connecting_path(g, x, y, c, crit);
      }
    }
  }
  if (glob.format == "text") {
    std::string text = sep ? "separated\n" : "connected\n";
    if (path) text += format_path(g, *path) + "\n";
    emit(glob, text);
  } else {
    nlohmann::json j = {{"criterion", to_string(crit)}, {"separated", sep}};
    if (path) j["path"] = format_path(g, *path);
    emit(glob, dump_json(j));
  }
  return kOk;
}

// ---- acyclify ----

int run_acyclify(const Globals& glob, const std::string& path) {
  const Bdmg g = acyclify(graph_from_json(read_json_file(path)));
  emit(glob, glob.format == "dot" ? graph_to_dot(g) : dump_json(graph_to_json(g)));
  return kOk;
}

// ---- scm ----

struct ScmArgs {
  std::string scm;
  bool joint = false;
  bool family = false;
  bool validate_only = false;
  std::vector<std::string> overrides;
  std::string intervene;
  std::string dist;
};

int run_scm(const Globals& glob, const ScmArgs& s) {
  const Scm scm = scm_from_json(read_json_file(s.scm));
  const ValidationReport report = validate(scm);
  if (s.validate_only || !report.valid()) {
    emit(glob, dump_json(validation_to_json(report)));
    if (!report.valid()) std::cerr << "invalid SCM: " << report.summary() << "\n";
    return report.valid() ? kOk : kUsage;
  }
  const int modes = int(s.joint) + int(s.family) + int(!s.intervene.empty());
  if (modes != 1) throw CLI::ValidationError("scm", "choose exactly one of --joint, --family, --intervene");
  if (s.joint) {
    emit(glob, dump_json(table_to_json(joint(scm))));
  } else if (s.family) {
    std::map<NodeId, std::vector<Rational>> overrides;
    for (const auto& o : s.overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--override", "expected node=dist, got " + o);
      overrides[scm.graph().index(o.substr(0, eq))] = parse_distribution(o.substr(eq + 1));
    }
    emit(glob, dump_json(family_to_json(standard_family(scm, overrides))));
  } else {
    if (s.dist.empty()) throw CLI::ValidationError("--dist", "--intervene needs --dist");
    const NodeId i = scm.graph().index(s.intervene);
    emit(glob, dump_json(scm_to_json(intervene_standard(scm, i, parse_distribution(s.dist)))));
  }
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite;
  std::size_t budget = 0;
  std::optional<std::uint64_t> replay;
};

int run_verify(const Globals& glob, const VerifyArgs& v) {
  if (v.replay) {
    const CaseOutcome o = run_suite_case(v.suite, *v.replay);
    nlohmann::json j = {{"suite", v.suite}, {"case_seed", *v.replay}, {"asserted", o.asserted}, {"notes", o.notes}};
    if (o.failure) j["failure"] = *o.failure;
    emit(glob, dump_json(j));
    return o.failure ? kFailed : kOk;
  }
  const SuiteResult r = run_suite(v.suite, glob.seed, v.budget);
  if (glob.format == "text") {
    std::ostringstream out;
    out << r.name << ": " << (r.ok() ? "PASS" : "FAIL") << " cases=" << r.cases << " asserted=" << r.asserted
        << " failures=" << r.failures.size() << "\n";
    for (const auto& f : r.failures) out << "  seed " << f.case_seed << ": " << f.message << "\n";
    emit(glob, out.str());
  } else {
    emit(glob, dump_json(suite_result_to_json(r)));
  }
  std::cerr << r.name << " finished in " << r.wall_seconds << " s\n";
  return r.ok() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal graphs from interventional families"};
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--format", glob.format, "Output format")
      ->check(CLI::IsMember({"json", "dot", "text"}))
      ->capture_default_str();
  app.add_option("--output", glob.output, "Write output to a file instead of stdout");
  app.add_option("--seed", glob.seed, "Seed for randomized suites")->capture_default_str();

  DeriveArgs da;
  auto* derive_cmd = app.add_subcommand("derive", "Derive S, G_i and G from a family");
  derive_cmd->add_option("family", da.family, "Family JSON")->required();
  derive_cmd->add_option("--mode", da.mode)->check(CLI::IsMember({"iterative", "ancestral_shortcut"}));
  derive_cmd->add_option("--arc-rule", da.arc_rule)->check(CLI::IsMember({"standard", "every_c"}));
  derive_cmd->add_option("--arc-policy", da.arc_policy)->check(CLI::IsMember({"every_i", "some_i"}));
  derive_cmd->add_flag("--pip-adjust", da.pip_adjust, "Re-examine arrows joined by inducing paths");
  derive_cmd->add_flag("--transitivity", da.transitivity, "Include the transitivity report");

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Check axioms of a family against a distribution");
  check_cmd->add_option("family", ca.family, "Family JSON")->required();
  check_cmd->add_option("distribution", ca.distribution, "Underlying distribution JSON");
  check_cmd->add_option("--axioms", ca.axioms,
                        "Comma list: A1,A2,A3,A4,A5,A5-all-pairs,compatible,cause-conditionals,edge-cause,"
                        "congruent,reconstruct");
  check_cmd->add_option("--graph", ca.graph, "Reference graph for edge-cause");
  check_cmd->add_option("--other", ca.other, "Second family for congruence");

  SeparateArgs sa;
  auto* sep_cmd = app.add_subcommand("separate", "Decide a separation statement");
  sep_cmd->add_option("graph", sa.graph, "Graph JSON")->required();
  sep_cmd->add_option("--criterion", sa.criterion)->check(CLI::IsMember({"sigma", "m", "d"}));
  sep_cmd->add_option("-a,--set-a", sa.a, "Comma list of labels")->required();
  sep_cmd->add_option("-b,--set-b", sa.b, "Comma list of labels")->required();
  sep_cmd->add_option("-c,--given", sa.c, "Comma list of labels");

  std::string acyclify_path;
  auto* acy_cmd = app.add_subcommand("acyclify", "Acyclify a graph");
  acy_cmd->add_option("graph", acyclify_path, "Graph JSON")->required();

  ScmArgs sc;
  auto* scm_cmd = app.add_subcommand("scm", "Evaluate an SCM");
  scm_cmd->add_option("scm", sc.scm, "SCM JSON")->required();
  scm_cmd->add_flag("--joint", sc.joint, "Observational joint");
  scm_cmd->add_flag("--family", sc.family, "Standard-intervention family");
  scm_cmd->add_flag("--validate", sc.validate_only, "Only print the validation report");
  scm_cmd->add_option("--override", sc.overrides, "node=dist replacement law for the family");
  scm_cmd->add_option("--intervene", sc.intervene, "Node to intervene on");
  scm_cmd->add_option("--dist", sc.dist, "Replacement law, e.g. 1/2,1/2");

  VerifyArgs va;
  std::uint64_t replay_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a randomized suite");
  verify_cmd->add_option("--suite", va.suite)->required()->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--budget", va.budget, "Number of cases; 0 for the default");
  auto* replay_opt = verify_cmd->add_option("--replay", replay_seed, "Replay one case seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*derive_cmd) return run_derive(glob, da);
    if (*check_cmd) return run_check(glob, ca);
    if (*sep_cmd) return run_separate(glob, sa);
    if (*acy_cmd) return run_acyclify(glob, acyclify_path);
    if (*scm_cmd) return run_scm(glob, sc);
    if (*verify_cmd) {
      if (*replay_opt) va.replay = replay_seed;
      return run_verify(glob, va);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Incompatible& e) {
    std::cerr << "property failure: " << e.what() << "\n";
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
