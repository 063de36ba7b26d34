#include "dofam/derive.hpp"

#include <algorithm>

#include "dofam/ci_properties.hpp"
#include "dofam/errors.hpp"

namespace dofam {

const char* to_string(DeriveMode m) { return m == DeriveMode::iterative ? "iterative" : "ancestral_shortcut"; }
const char* to_string(ArcRule r) { return r == ArcRule::standard ? "standard" : "every_c"; }
const char* to_string(ArcPolicy p) { return p == ArcPolicy::every_i ? "every_i" : "some_i"; }

DeriveMode derive_mode_from_string(const std::string& s) {
  if (s == "iterative") return DeriveMode::iterative;
  if (s == "ancestral_shortcut" || s == "shortcut") return DeriveMode::ancestral_shortcut;
  throw InputError("unknown derive mode: " + s);
}

ArcRule arc_rule_from_string(const std::string& s) {
  if (s == "standard") return ArcRule::standard;
  if (s == "every_c" || s == "every_C") return ArcRule::every_c;
  throw InputError("unknown arc rule: " + s);
}

ArcPolicy arc_policy_from_string(const std::string& s) {
  if (s == "every_i") return ArcPolicy::every_i;
  if (s == "some_i") return ArcPolicy::some_i;
  throw InputError("unknown arc policy: " + s);
}

const char* to_string(PipOutcome o) {
  switch (o) {
    case PipOutcome::removed: return "removed";
    case PipOutcome::kept: return "kept";
    case PipOutcome::unresolved: return "UNRESOLVED";
  }
  return "?";
}

NodeSet CauseRelations::cause_of(NodeSet a) const {
  NodeSet out;
  for (NodeId k : a) out |= cause[k];
  return out - a;
}

CauseRelations cause_relations(const InterventionalFamily& fam) {
  const std::size_t n = fam.size();
  CauseRelations r;
  r.cause.assign(n, {});
  r.eff.assign(n, {});
  r.cc.assign(n, {});
  r.above.assign(n, {});
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId k = 0; k < n; ++k) {
      if (i != k && !fam.independent(i, i, k, NodeSet{})) {
        r.cause[k].insert(i);
        r.eff[i].insert(k);
      }
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    r.cc[i] = (r.cause[i] & r.eff[i]).with(i);
    r.above[i] = r.cause[i] - r.eff[i];
  }
  return r;
}

bool is_transitive(const CauseRelations& rel) {
  const std::size_t n = rel.cause.size();
  for (NodeId k = 0; k < n; ++k) {
    for (NodeId j : rel.cause[k]) {
      if (!(rel.cause[j] - rel.cause[k]).without(k).empty()) return false;
    }
  }
  return true;
}

TransitivityReport check_transitivity(const InterventionalFamily& fam) {
  const std::size_t n = fam.size();
  const CauseRelations rel = cause_relations(fam);
  TransitivityReport rep;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : rel.eff[i]) {
      for (NodeId k : rel.eff[j]) {
        if (k != i && !rel.cause[k].contains(i)) rep.violations.push_back({i, j, k});
      }
    }
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  rep.axiom_holds = rep.violations.empty();

  rep.singleton_transitivity_checked = true;
  for (NodeId i = 0; i < n; ++i) {
    const JointTable* t = fam.source(i).table();
    if (t == nullptr) {
      rep.singleton_transitivity_checked = false;
      rep.unavailable_reason = "source for " + fam.name(i) + " has no table";
      continue;
    }
    if (!check_property(*t, CiProperty::singleton_transitivity).holds()) rep.not_singleton_transitive.push_back(i);
  }
  if (!rep.singleton_transitivity_checked) rep.not_singleton_transitive.clear();

  for (NodeId i = 0; i < n; ++i) {
    for (NodeId k = 0; k < n; ++k) {
      if (k == i || rel.cause[k].contains(i)) continue;
      for (NodeId j : rel.cause[k]) {
        if (j == i) continue;
        if (!fam.independent(i, i, k, NodeSet::single(j))) rep.condition_a_failures.push_back({i, j, k});
        if (fam.independent(i, j, k, NodeSet{})) rep.condition_b_failures.push_back({i, j, k});
      }
    }
  }
  return rep;
}

NodeSet CausalDerivation::icause_of(NodeId i, NodeSet a) const {
  NodeSet out;
  for (NodeId k : a) out |= icause[i][k];
  return out - a;
}

namespace {

Bdmg arrows_graph(const std::vector<std::string>& names, const std::vector<NodeSet>& dcause) {
  Bdmg s(names);
  for (NodeId k = 0; k < dcause.size(); ++k) {
    for (NodeId i : dcause[k]) s.add_arrow(i, k);
  }
  return s;
}

// Arcs of G from the per-intervention graphs. every_i needs at least one witness.
Bdmg aggregate_arcs(const Bdmg& s, const std::vector<Bdmg>& g_i, ArcPolicy policy) {
  Bdmg g = s;
  const std::size_t n = s.size();
  for (NodeId j = 0; j < n; ++j) {
    for (NodeId k = j + 1; k < n; ++k) {
      if (s.arrow_adjacent(j, k)) continue;
      std::size_t witnesses = 0;
      std::size_t with_arc = 0;
      for (NodeId i = 0; i < n; ++i) {
        if (i == j || i == k) continue;
        ++witnesses;
        if (g_i[i].has_arc(j, k)) ++with_arc;
      }
      // Read literally: with no third node the every-i rule holds vacuously.
      const bool arc = policy == ArcPolicy::every_i ? with_arc == witnesses : with_arc > 0;
      if (arc) g.add_arc(j, k);
    }
  }
  return g;
}

}  // namespace

CausalDerivation derive(const InterventionalFamily& fam, DeriveMode mode) {
  const std::size_t n = fam.size();
  CausalDerivation d;
  d.mode = mode;
  d.relations = cause_relations(fam);
  const auto& cause = d.relations.cause;
  d.dcause = cause;
  d.icause.assign(n, cause);
  d.s = Bdmg(fam.roster());

  auto rebuild_intervened = [&] {
    d.s_i.clear();
    for (NodeId i = 0; i < n; ++i) {
      d.s_i.push_back(d.s.intervened(i));
      for (NodeId k = 0; k < n; ++k) d.icause[i][k] = ancestors(d.s_i[i], k);
    }
  };

  if (mode == DeriveMode::iterative) {
    for (;;) {
      ++d.rounds;
      std::vector<NodeSet> next(n);
      for (NodeId k = 0; k < n; ++k) {
        for (NodeId i : d.dcause[k]) {
          if (!fam.independent(i, i, k, d.icause[i][k].without(i))) next[k].insert(i);
        }
      }
      Bdmg s = arrows_graph(fam.roster(), next);
      d.trace.push_back(s);
      const bool changed = !(s == d.s);
      d.s = std::move(s);
      d.dcause = std::move(next);
      rebuild_intervened();
      if (!changed) break;
    }
  } else {
    d.rounds = 1;
    for (NodeId k = 0; k < n; ++k) {
      NodeSet kept;
      for (NodeId i : cause[k]) {
        if (!fam.independent(i, i, k, cause[k].without(i))) kept.insert(i);
      }
      d.dcause[k] = kept;
    }
    d.s = arrows_graph(fam.roster(), d.dcause);
    d.trace.push_back(d.s);
    rebuild_intervened();
  }

  d.g_i.clear();
  for (NodeId i = 0; i < n; ++i) {
    Bdmg gi = d.s_i[i];
    for (NodeId j = 0; j < n; ++j) {
      for (NodeId k = j + 1; k < n; ++k) {
        if (j == i || k == i || d.s.arrow_adjacent(j, k)) continue;
        const NodeSet pair = NodeSet::of({j, k});
        const NodeSet cond = mode == DeriveMode::iterative ? d.icause_of(i, pair) : d.relations.cause_of(pair);
        if (!fam.independent(i, j, k, cond)) gi.add_arc(j, k);
      }
    }
    d.g_i.push_back(std::move(gi));
  }
  d.g = aggregate_arcs(d.s, d.g_i, ArcPolicy::every_i);

  if (mode == DeriveMode::ancestral_shortcut && !is_ancestral(d.g)) {
    throw PreconditionViolation("shortcut derivation produced a graph that is not ancestral");
  }
  return d;
}

Bdmg intervened_graph_every_c(const InterventionalFamily& fam, const CausalDerivation& d, NodeId i) {
  if (!fam.source(i).supports_arbitrary_conditioning()) {
    throw UnsupportedCapability("source for " + fam.name(i) + " cannot answer arbitrary conditioning sets");
  }
  const std::size_t n = fam.size();
  Bdmg gi = d.s_i.at(i);
  for (NodeId j = 0; j < n; ++j) {
    for (NodeId k = j + 1; k < n; ++k) {
      if (j == i || k == i || d.s.arrow_adjacent(j, k)) continue;
      // i may sit in C: conditioning on a fixed X_i is vacuous, and on a randomized
      // one it is what keeps children of i from looking confounded.
      const NodeSet rest = NodeSet::range(n) - NodeSet::of({j, k});
      const bool always_dependent =
          !any_subset(rest, [&](NodeSet c) { return fam.independent(i, j, k, c); });
      if (always_dependent) gi.add_arc(j, k);
    }
  }
  return gi;
}

Bdmg derive_variants(const InterventionalFamily& fam, const CausalDerivation& d, ArcRule rule, ArcPolicy policy) {
  if (rule == ArcRule::standard) return aggregate_arcs(d.s, d.g_i, policy);
  std::vector<Bdmg> g_i;
  for (NodeId i = 0; i < fam.size(); ++i) g_i.push_back(intervened_graph_every_c(fam, d, i));
  return aggregate_arcs(d.s, g_i, policy);
}

Bdmg graph_from_observation(const InterventionalFamily& fam, const CausalDerivation& d, const JointTable& p) {
  const auto names = p.names();
  std::vector<std::string> sorted_names = names, sorted_roster = fam.roster();
  std::sort(sorted_names.begin(), sorted_names.end());
  std::sort(sorted_roster.begin(), sorted_roster.end());
  if (sorted_names != sorted_roster) throw RosterMismatch("observational table is not over the family roster");
  const JointTable q = names == fam.roster() ? p : p.reordered(fam.roster());
  Bdmg g = d.s;
  const std::size_t n = fam.size();
  for (NodeId j = 0; j < n; ++j) {
    for (NodeId k = j + 1; k < n; ++k) {
      if (g.arrow_adjacent(j, k)) continue;
      const NodeSet pair = NodeSet::of({j, k});
      if (!q.independent(NodeSet::single(j), NodeSet::single(k), d.relations.cause_of(pair))) g.add_arc(j, k);
    }
  }
  return g;
}

Bdmg graph_from_observation(const InterventionalFamily& fam, const JointTable& p) {
  return graph_from_observation(fam, derive(fam), p);
}

PipAdjustment pip_adjust(const InterventionalFamily& fam, const CausalDerivation& d) {
  PipAdjustment out;
  out.dcause = d.dcause;
  const auto& cause = d.relations.cause;

  for (const auto& [i, k] : d.s.arrows()) {
    // The inducing paths live in G_i: S_i carries no arcs.
    std::vector<Path> pips = find_pips(d.g_i[i], i, k);
    if (pips.empty()) continue;
    PipEntry e;
    e.from = i;
    e.to = k;
    e.pips = pips;
    if (pips.size() > 1) {
      e.outcome = PipOutcome::unresolved;
      out.unresolved.emplace_back(i, k);
    } else {
      const auto& nodes = pips.front().nodes;
      for (std::size_t r = 1; r + 1 < nodes.size(); ++r) {
        const NodeId j = nodes[r];
        e.tested.push_back(j);
        if (fam.independent(j, i, k, cause[k].without(i))) e.separating.push_back(j);
      }
      if (!e.separating.empty()) {
        e.outcome = PipOutcome::removed;
        out.dcause[k].erase(i);
      } else {
        e.outcome = PipOutcome::kept;
      }
    }
    out.entries.push_back(std::move(e));
  }

  // Arcs joined by several inducing paths cannot be explained by single interventions.
  for (const auto& [j, k] : d.g.arcs()) {
    std::vector<Path> pips = find_pips(d.g, j, k);
    if (pips.size() < 2) continue;
    PipEntry e;
    e.from = j;
    e.to = k;
    e.arc = true;
    e.pips = std::move(pips);
    e.outcome = PipOutcome::unresolved;
    out.unresolved.emplace_back(j, k);
    out.entries.push_back(std::move(e));
  }

  out.s = arrows_graph(fam.roster(), out.dcause);
  return out;
}

}  // namespace dofam
