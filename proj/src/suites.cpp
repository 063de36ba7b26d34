#include "dofam/suites.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "dofam/axioms.hpp"
#include "dofam/ci_properties.hpp"
#include "dofam/derive.hpp"
#include "dofam/errors.hpp"
#include "dofam/generators.hpp"
#include "dofam/graph_io.hpp"
#include "dofam/scm.hpp"
#include "dofam/separation.hpp"

namespace dofam {

namespace {

using CaseFn = std::function<CaseOutcome(std::uint64_t)>;

std::string describe(const Bdmg& g) { return graph_to_json(g).dump(); }

std::string describe_sets(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c) {
  return node_set_to_json(g, a).dump() + " vs " + node_set_to_json(g, b).dump() + " given " +
         node_set_to_json(g, c).dump();
}

CheckScope scope_for(std::size_t n) { return n <= 5 ? CheckScope::full : CheckScope::singletons; }

CiOracle source_oracle(const InterventionalFamily& fam, NodeId i) {
  return [&fam, i](NodeSet a, NodeSet b, NodeSet c) { return fam.independent(i, a, b, c); };
}

// Random graph for the separation suites: up to 6 nodes, cycles and arcs allowed.
Bdmg separation_graph(std::uint64_t case_seed) {
  Rng rng(case_seed);
  const std::size_t n = rng.between(1, 6);
  const double arrows = 0.1 + 0.1 * static_cast<double>(rng.below(4));
  const double arcs = 0.1 * static_cast<double>(rng.below(4));
  return random_bdmg(mix_seed(case_seed, 1), n, arrows, arcs, GraphClass::any);
}

// Random SCM with up to max_nodes nodes on a graph of the given class. Graphs whose
// noise components would be too large are redrawn deterministically.
Scm scm_for_case(std::uint64_t case_seed, GraphClass cls, std::size_t min_nodes, std::size_t max_nodes) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = mix_seed(case_seed, 100 + attempt);
    Rng rng(s);
    const std::size_t n = rng.between(min_nodes, max_nodes);
    const double arrows = 0.3 + 0.1 * static_cast<double>(rng.below(4));
    const double arcs = cls == GraphClass::dag ? 0.0 : 0.1 * static_cast<double>(rng.below(4));
    const Bdmg g = random_bdmg(mix_seed(s, 1), n, arrows, arcs, cls);
    try {
      return random_scm(mix_seed(s, 2), g, 3);
    } catch (const PreconditionViolation&) {
      if (attempt > 64) throw;
    }
  }
}

Bdmg oracle_graph(std::uint64_t case_seed, GraphClass cls, std::size_t max_nodes, std::size_t min_nodes = 2) {
  Rng rng(case_seed);
  const std::size_t n = rng.between(min_nodes, max_nodes);
  const double arrows = 0.2 + 0.1 * static_cast<double>(rng.below(4));
  const double arcs = 0.1 * static_cast<double>(rng.below(4));
  return random_bdmg(mix_seed(case_seed, 1), n, arrows, arcs, cls);
}

bool sources_are_compositional_graphoids(const InterventionalFamily& fam) {
  for (NodeId i = 0; i < fam.size(); ++i) {
    if (!has_intersection_and_composition(source_oracle(fam, i), fam.size(), scope_for(fam.size()))) return false;
  }
  return true;
}

bool p_is_compositional_graphoid(const JointTable& p) {
  return has_intersection_and_composition(table_oracle(p), p.var_count(), scope_for(p.var_count()));
}

std::string first_violation(const Bdmg& g, const MarkovReport& r) {
  const auto& v = r.violations.front();
  return describe_sets(g, v.a, v.b, v.c) + " (" + v.reason + ")";
}

// Sigma-separation through acyclification agrees with the path definition.
CaseOutcome sep_equiv_case(std::uint64_t case_seed) {
  CaseOutcome out;
  out.asserted = true;
  const Bdmg g = separation_graph(case_seed);
  SigmaSeparator sep(g);
  for (NodeId a = 0; a < g.size() && !out.failure; ++a) {
    for (NodeId b = a + 1; b < g.size() && !out.failure; ++b) {
      const NodeSet A = NodeSet::single(a), B = NodeSet::single(b);
      for_each_subset(g.nodes() - A - B, [&](NodeSet c) {
        if (out.failure) return;
        if (sep(A, B, c) != sigma_separated_by_paths(g, A, B, c)) {
          out.failure = "mismatch on " + describe(g) + ": " + describe_sets(g, A, B, c);
        }
      });
    }
  }
  return out;
}

CaseOutcome pip_insep_case(std::uint64_t case_seed) {
  CaseOutcome out;
  out.asserted = true;
  const Bdmg g = separation_graph(case_seed);
  for (const auto& [a, b] : inseparable_pairs(g)) {
    if (find_pips(g, a, b).empty()) {
      out.failure = "inseparable pair (" + g.name(a) + "," + g.name(b) + ") without PIP in " + describe(g);
      break;
    }
  }
  return out;
}

CaseOutcome scm_markov_case(std::uint64_t case_seed) {
  CaseOutcome out;
  out.asserted = true;
  const Scm scm = scm_for_case(case_seed, GraphClass::admg, 1, 5);
  const Bdmg& g = scm.graph();
  const CheckScope scope = scope_for(g.size());
  const JointTable p = joint(scm);
  if (auto r = markov_check(p, g, MarkovKind::global, scope); !r.holds()) {
    out.failure = "joint not Markov to " + describe(g) + ": " + first_violation(g, r);
    return out;
  }
  const auto tables = standard_family_tables(scm);
  for (NodeId i = 0; i < g.size(); ++i) {
    const Bdmg gi = g.intervened(i);
    if (auto r = markov_check(tables[i], gi, MarkovKind::global, scope); !r.holds()) {
      out.failure = "do(" + g.name(i) + ") not Markov to " + describe(gi) + ": " + first_violation(gi, r);
      return out;
    }
  }
  return out;
}

// Markov property of each P_do(i) to G_i, and of P to G for observable SCM families.
CaseOutcome intervened_markov_case(std::uint64_t case_seed) {
  CaseOutcome out;
  const bool use_oracle = case_seed % 2 == 0;
  std::optional<Scm> scm;
  std::optional<InterventionalFamily> fam;
  if (use_oracle) {
    fam = oracle_family(oracle_graph(case_seed, GraphClass::any, 5));
    out.tags.push_back("oracle");
  } else {
    scm = scm_for_case(case_seed, GraphClass::admg, 2, 4);
    fam = standard_family(*scm);
    out.tags.push_back("scm");
  }
  if (!check_transitivity(*fam).axiom_holds || !sources_are_compositional_graphoids(*fam)) return out;
  out.asserted = true;
  const CausalDerivation d = derive(*fam);
  for (NodeId i = 0; i < fam->size(); ++i) {
    auto r = markov_check(source_oracle(*fam, i), d.g_i[i], MarkovKind::global, scope_for(fam->size()));
    if (!r.holds()) {
      out.failure = "do(" + fam->name(i) + ") not Markov to G_i " + describe(d.g_i[i]) + ": " +
                    first_violation(d.g_i[i], r);
      return out;
    }
  }
  if (scm) {
    const JointTable p = joint(*scm);
    if (check_observable(*fam, d, p).holds() && p_is_compositional_graphoid(p)) {
      out.tags.push_back("observable");
      auto r = markov_check(p, d.g, MarkovKind::global, scope_for(p.var_count()));
      if (!r.holds()) out.failure = "P not Markov to G " + describe(d.g) + ": " + first_violation(d.g, r);
    }
  }
  return out;
}

// Replacing icause by cause (the ancestral shortcut) changes nothing when G is ancestral.
CaseOutcome exchange_case(std::uint64_t case_seed) {
  CaseOutcome out;
  const bool use_oracle = case_seed % 2 == 0;
  std::optional<InterventionalFamily> fam;
  if (use_oracle) {
    fam = oracle_family(oracle_graph(case_seed, GraphClass::ancestral, 5));
    out.tags.push_back("oracle");
  } else {
    fam = standard_family(scm_for_case(case_seed, GraphClass::ancestral, 2, 4));
    out.tags.push_back("scm");
  }
  if (!check_transitivity(*fam).axiom_holds || !sources_are_compositional_graphoids(*fam)) return out;
  const CausalDerivation d = derive(*fam);
  if (!is_ancestral(d.g)) return out;
  out.asserted = true;
  CausalDerivation shortcut;
  try {
    shortcut = derive(*fam, DeriveMode::ancestral_shortcut);
  } catch (const PreconditionViolation& e) {
    out.failure = std::string("shortcut refused: ") + e.what();
    return out;
  }
  if (!(shortcut.s == d.s) || !(shortcut.g == d.g)) {
    out.failure = "shortcut " + describe(shortcut.g) + " differs from iterative " + describe(d.g);
    return out;
  }
  if (use_oracle) {
    const Bdmg every_c = derive_variants(*fam, d, ArcRule::every_c, ArcPolicy::every_i);
    if (!(every_c == d.g)) out.failure = "every-C rule " + describe(every_c) + " differs from " + describe(d.g);
  }
  return out;
}

// SCM graphs are recovered (up to Markov equivalence when not maximal); oracle
// families recover their ground truth, with divergences logged for non-ancestral truths.
// Both populations start at three nodes: with two, the every-i arc rule holds
// vacuously and joins every non-adjacent pair.
CaseOutcome scm_graph_equality_case(std::uint64_t case_seed) {
  CaseOutcome out;
  if (case_seed % 3 == 2) {
    out.tags.push_back("oracle");
    const Bdmg truth = oracle_graph(case_seed, case_seed % 2 == 0 ? GraphClass::ancestral : GraphClass::any, 5, 3);
    const CausalDerivation d = derive(oracle_family(truth));
    const bool ancestral = is_ancestral(truth);
    const bool maximal = is_maximal(truth);
    if (ancestral) {
      out.asserted = true;
      if (maximal && !(d.g == truth)) {
        out.failure = "oracle derivation " + describe(d.g) + " differs from maximal ancestral truth " + describe(truth);
      } else if (!maximal && !markov_equivalent(d.g, truth, EquivalenceScope::full)) {
        out.failure = "oracle derivation " + describe(d.g) + " not Markov equivalent to " + describe(truth);
      }
    } else if (!(d.g == truth) && !markov_equivalent(d.g, truth, EquivalenceScope::full)) {
      std::size_t pips = 0;
      for (NodeId a = 0; a < truth.size(); ++a)
        for (NodeId b = a + 1; b < truth.size(); ++b) pips += find_pips(truth, a, b).size();
      out.tags.push_back("expected_divergence");
      out.notes.push_back("EXPECTED-DIVERGENCE truth " + describe(truth) + " derived " + describe(d.g) + " (" +
                          std::to_string(pips) + " PIPs in truth)");
    }
    return out;
  }

  out.tags.push_back("scm");
  const Scm scm = scm_for_case(case_seed, case_seed % 2 == 0 ? GraphClass::dag : GraphClass::ancestral, 3, 5);
  const Bdmg& g = scm.graph();
  const InterventionalFamily fam = standard_family(scm);
  const JointTable p = joint(scm);
  if (!check_edge_cause(fam, g).holds()) return out;
  if (!markov_check(p, g, MarkovKind::converse_pairwise).holds()) return out;
  out.asserted = true;
  out.tags.push_back(is_maximal(g) ? "scm_asserted_maximal" : "scm_asserted_non_maximal");
  const CausalDerivation d = derive(fam);
  if (is_maximal(g)) {
    if (!(d.g == g)) out.failure = "derived " + describe(d.g) + " differs from SCM graph " + describe(g);
  } else if (!markov_equivalent(d.g, g, EquivalenceScope::full)) {
    out.failure = "derived " + describe(d.g) + " not Markov equivalent to SCM graph " + describe(g);
  }
  return out;
}

CaseOutcome quantifiable_chain_case(std::uint64_t case_seed) {
  CaseOutcome out;
  const Scm scm = scm_for_case(case_seed, case_seed % 2 == 0 ? GraphClass::dag : GraphClass::ancestral, 2, 4);
  const InterventionalFamily fam = standard_family(scm);
  const JointTable p = joint(scm);
  AxiomReport quant;
  try {
    quant = check_quantifiable(fam, p);
  } catch (const Incompatible&) {
    out.tags.push_back("incompatible");
    return out;
  }
  if (!quant.holds()) return out;
  out.asserted = true;
  out.tags.push_back("quantifiable");
  if (auto r = check_cause_conditionals(fam, p); !r.holds()) {
    out.failure = "quantifiable family fails the cause-conditional identity at i=" + r.witnesses.front().at("i") +
                  " k=" + r.witnesses.front().at("k");
    return out;
  }
  if (!check_bivariate_quantifiable(fam, p).holds()) return out;
  out.tags.push_back("bivariate");
  if (!check_transitivity(fam).axiom_holds || !sources_are_compositional_graphoids(fam)) return out;
  const CausalDerivation d = derive(fam);
  if (!is_ancestral(d.g)) return out;
  out.tags.push_back("strong_observability_asserted");
  if (auto r = check_strongly_observable(fam, d, p); !r.holds()) {
    out.failure = "bivariate-quantifiable family is not strongly observable (" + std::to_string(r.count) +
                  " violations) on " + describe(scm.graph());
  }
  return out;
}

CaseOutcome uniqueness_case(std::uint64_t case_seed) {
  CaseOutcome out;
  const Scm scm = scm_for_case(case_seed, GraphClass::dag, 2, 5);
  const InterventionalFamily fam = standard_family(scm);
  const JointTable p = joint(scm);
  const CausalDerivation d = derive(fam);
  if (!is_dag(d.g)) return out;
  try {
    if (!check_quantifiable(fam, p).holds()) return out;
  } catch (const Incompatible&) {
    return out;
  }
  out.asserted = true;
  try {
    const Reconstruction r = reconstruct_p(fam, d, p);
    if (!*r.matches_reference) out.failure = "reconstruction differs from the joint of " + describe(scm.graph());
  } catch (const PreconditionViolation& e) {
    out.failure = std::string("reconstruction failed: ") + e.what();
  }
  return out;
}

CaseOutcome transitivity_sufficiency_case(std::uint64_t case_seed) {
  CaseOutcome out;
  if (case_seed % 4 == 3) {
    // Ancestor relations are transitive, so separation oracles always pass.
    out.tags.push_back("oracle");
    out.asserted = true;
    const Bdmg g = oracle_graph(case_seed, GraphClass::any, 6);
    if (!check_transitivity(oracle_family(g)).axiom_holds) out.failure = "oracle family not transitive: " + describe(g);
    return out;
  }
  out.tags.push_back("scm");
  const Scm scm = scm_for_case(case_seed, GraphClass::admg, 2, 4);
  const TransitivityReport r = check_transitivity(standard_family(scm));
  if (!r.axiom_holds) out.tags.push_back("not_transitive");
  if (!r.sufficient_conditions_hold()) return out;
  out.asserted = true;
  if (!r.axiom_holds) out.failure = "sufficient conditions hold but transitivity fails on " + describe(scm.graph());
  return out;
}

struct SuiteSpec {
  std::string name;
  std::size_t budget;
  CaseFn fn;
};

const std::vector<SuiteSpec>& registry() {
  static const std::vector<SuiteSpec> suites = {
      {"sep_equiv", 200, sep_equiv_case},
      {"pip_insep", 200, pip_insep_case},
      {"scm_markov", 100, scm_markov_case},
      {"intervened_markov", 100, intervened_markov_case},
      {"exchange", 100, exchange_case},
      {"scm_graph_equality", 150, scm_graph_equality_case},
      {"quantifiable_chain", 100, quantifiable_chain_case},
      {"uniqueness", 100, uniqueness_case},
      {"transitivity_sufficiency", 100, transitivity_sufficiency_case},
  };
  return suites;
}

const SuiteSpec& find_suite(const std::string& name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  throw InputError("unknown suite: " + name);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::size_t default_budget(const std::string& name) { return find_suite(name).budget; }

CaseOutcome run_suite_case(const std::string& name, std::uint64_t case_seed) {
  const SuiteSpec& spec = find_suite(name);
  try {
    return spec.fn(case_seed);
  } catch (const std::exception& e) {
    CaseOutcome out;
    out.asserted = true;
    out.failure = std::string("exception: ") + e.what();
    return out;
  }
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t budget) {
  const SuiteSpec& spec = find_suite(name);
  SuiteResult r;
  r.name = name;
  r.seed = seed;
  r.budget = budget == 0 ? spec.budget : budget;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t c = 0; c < r.budget; ++c) {
    const std::uint64_t case_seed = mix_seed(seed, c);
    CaseOutcome o = run_suite_case(name, case_seed);
    ++r.cases;
    if (o.asserted) ++r.asserted;
    for (const auto& t : o.tags) ++r.counters[t];
    for (auto& note : o.notes) r.notes.push_back(std::move(note));
    if (o.failure) r.failures.push_back({case_seed, *o.failure});
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json suite_result_to_json(const SuiteResult& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) failures.push_back({{"case_seed", f.case_seed}, {"message", f.message}});
  return {{"suite", r.name},
          {"seed", r.seed},
          {"budget", r.budget},
          {"cases", r.cases},
          {"asserted", r.asserted},
          {"filter_pass_rate", r.filter_pass_rate()},
          {"failures", failures},
          {"notes", r.notes},
          {"counters", r.counters},
          {"ok", r.ok()}};
}

}  // namespace dofam
