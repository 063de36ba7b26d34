#include "dofam/axioms.hpp"

#include <algorithm>

#include "dofam/ci_properties.hpp"
#include "dofam/errors.hpp"

namespace dofam {

void AxiomReport::add(Witness w) {
  ++count;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

namespace {

std::string format_set(const InterventionalFamily& fam, NodeSet s) {
  std::string out = "{";
  bool first = true;
  for (NodeId v : s) {
    if (!first) out += ",";
    out += fam.name(v);
    first = false;
  }
  return out + "}";
}

std::string format_values(const InterventionalFamily& fam, NodeSet s, const Assignment& x) {
  std::string out;
  for (NodeId v : s) {
    if (!out.empty()) out += ",";
    out += fam.name(v) + "=" + std::to_string(x[v]);
  }
  return out;
}

const char* verdict(bool indep) { return indep ? "indep" : "dep"; }

// p with variables in roster order; cardinalities must agree with the family's tables.
JointTable aligned(const InterventionalFamily& fam, const JointTable& p) {
  auto names = p.names();
  auto roster = fam.roster();
  std::vector<std::string> a = names, b = roster;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw RosterMismatch("distribution variables do not match the family roster");
  JointTable q = names == roster ? p : p.reordered(roster);
  for (NodeId i = 0; i < fam.size(); ++i) {
    if (const JointTable* t = fam.source(i).table(); t != nullptr && t->variables() != q.variables()) {
      throw RosterMismatch("cardinalities of the distribution differ from the intervention on " + fam.name(i));
    }
  }
  return q;
}

void require_tables(const InterventionalFamily& fam) {
  if (!fam.table_backed()) throw UnsupportedCapability("this check needs a table-backed family");
}

// Compares q(x_target | x_qc) with p(x_target | x_pc) over q-positive contexts.
// Returns the first mismatch in odometer order.
// Every mismatching cell, in canonical order.
std::vector<Witness> compare_conditionals(const InterventionalFamily& fam, const JointTable& q, const JointTable& p,
                                            NodeSet target, NodeSet qc, NodeSet pc) {
  const MarginalWeights qj = q.marginal_weights(target | qc);
  const MarginalWeights qx = q.marginal_weights(qc);
  const MarginalWeights pj = p.marginal_weights(target | pc);
  const MarginalWeights px = p.marginal_weights(pc);
  std::vector<Witness> found;
  for_each_assignment(q.variables(), target | qc, [&](const Assignment& x) {
    if (sgn(qx.at(x)) == 0) return;
    Rational lhs(qj.at(x), qx.at(x));
    lhs.canonicalize();
    Witness w{{"context", format_values(fam, qc, x)}, {"value", format_values(fam, target, x)},
              {"lhs", format_rational(lhs)}};
    if (sgn(px.at(x)) == 0) {
      w["rhs"] = "undefined";
      found.push_back(std::move(w));
      return;
    }
    Rational rhs(pj.at(x), px.at(x));
    rhs.canonicalize();
    if (lhs != rhs) {
      w["rhs"] = format_rational(rhs);
      found.push_back(std::move(w));
    }
  });
  return found;
}

void throw_if_incompatible(const InterventionalFamily& fam, const JointTable& p) {
  const AxiomReport c = check_compatible(fam, p);
  if (!c.holds()) {
    const auto& w = c.witnesses.front();
    throw Incompatible("family is not compatible with the distribution (i=" + w.at("i") + ", k=" + w.at("k") + ")");
  }
}

AxiomReport observable_impl(const InterventionalFamily& fam, const CausalDerivation& d, const JointTable& p0,
                            bool strong) {
  require_tables(fam);
  const JointTable p = aligned(fam, p0);
  const std::size_t n = fam.size();
  const auto& rel = d.relations;
  AxiomReport rep;
  rep.axiom = strong ? "A3" : "A2";

  // Clause a. The weak form only looks at separable pairs of G.
  std::vector<NodePair> pairs;
  if (strong) {
    for (NodeId j = 0; j < n; ++j)
      for (NodeId k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
  } else {
    const auto insep = inseparable_pairs(d.g);
    for (NodeId j = 0; j < n; ++j) {
      for (NodeId k = j + 1; k < n; ++k) {
        if (d.g.adjacent(j, k)) continue;
        if (std::find(insep.begin(), insep.end(), NodePair{j, k}) != insep.end()) continue;
        pairs.emplace_back(j, k);
      }
    }
  }
  for (const auto& [j, k] : pairs) {
    const NodeSet pair = NodeSet::of({j, k});
    const NodeSet pc = rel.cause_of(pair);
    const bool p_indep = p.independent(NodeSet::single(j), NodeSet::single(k), pc);
    for (NodeId i = 0; i < n; ++i) {
      if (i == j || i == k) continue;
      const NodeSet ic = d.icause_of(i, pair);
      const bool do_indep = fam.independent(i, j, k, ic);
      const bool violated = strong ? (p_indep && !do_indep) : (do_indep && !p_indep);
      if (violated) {
        rep.add({{"clause", "a"},
                 {"i", fam.name(i)},
                 {"j", fam.name(j)},
                 {"k", fam.name(k)},
                 {"lhs", verdict(strong ? p_indep : do_indep)},
                 {"rhs", verdict(strong ? do_indep : p_indep)},
                 {"given_do", format_set(fam, ic)},
                 {"given_p", format_set(fam, pc)}});
      }
    }
  }

  // Clause b.
  for (NodeId k = 0; k < n; ++k) {
    for (NodeId i : rel.cause[k]) {
      const NodeSet pair = NodeSet::of({i, k});
      const NodeSet ic = d.icause_of(i, pair);
      const NodeSet pc = rel.cause_of(pair);
      const bool do_indep = fam.independent(i, i, k, ic);
      const bool p_indep = p.independent(NodeSet::single(i), NodeSet::single(k), pc);
      const bool violated = strong ? (p_indep && !do_indep) : (do_indep && !p_indep);
      if (violated) {
        rep.add({{"clause", "b"},
                 {"i", fam.name(i)},
                 {"k", fam.name(k)},
                 {"lhs", verdict(strong ? p_indep : do_indep)},
                 {"rhs", verdict(strong ? do_indep : p_indep)},
                 {"given_do", format_set(fam, ic)},
                 {"given_p", format_set(fam, pc)}});
      }
    }
  }
  return rep;
}

}  // namespace

AxiomReport check_observable(const InterventionalFamily& fam, const CausalDerivation& d, const JointTable& p) {
  return observable_impl(fam, d, p, false);
}

AxiomReport check_observable(const InterventionalFamily& fam, const JointTable& p) {
  return check_observable(fam, derive(fam), p);
}

AxiomReport check_strongly_observable(const InterventionalFamily& fam, const CausalDerivation& d,
                                      const JointTable& p) {
  return observable_impl(fam, d, p, true);
}

AxiomReport check_strongly_observable(const InterventionalFamily& fam, const JointTable& p) {
  return check_strongly_observable(fam, derive(fam), p);
}

AxiomReport check_compatible(const InterventionalFamily& fam, const JointTable& p0) {
  require_tables(fam);
  const JointTable p = aligned(fam, p0);
  const CauseRelations rel = cause_relations(fam);
  AxiomReport rep;
  rep.axiom = "compatible";
  for (NodeId i = 0; i < fam.size(); ++i) {
    for (NodeId k = 0; k < fam.size(); ++k) {
      if (i == k) continue;
      const NodeSet keep = rel.cause[k].with(k);
      const MarginalWeights wq = fam.table(i).marginal_weights(keep);
      const MarginalWeights wp = p.marginal_weights(keep);
      std::optional<Witness> found;
      for_each_assignment(p.variables(), keep, [&](const Assignment& x) {
        if (found) return;
        const bool in_q = sgn(wq.at(x)) != 0;
        const bool in_p = sgn(wp.at(x)) != 0;
        if (in_q != in_p) {
          found = Witness{{"i", fam.name(i)},
                          {"k", fam.name(k)},
                          {"cell", format_values(fam, keep, x)},
                          {"do_positive", in_q ? "true" : "false"},
                          {"p_positive", in_p ? "true" : "false"}};
        }
      });
      if (found) rep.add(std::move(*found));
    }
  }
  return rep;
}

AxiomReport check_quantifiable(const InterventionalFamily& fam, const JointTable& p0) {
  require_tables(fam);
  const JointTable p = aligned(fam, p0);
  throw_if_incompatible(fam, p);
  const CauseRelations rel = cause_relations(fam);
  AxiomReport rep;
  rep.axiom = "A4";
  for (NodeId i = 0; i < fam.size(); ++i) {
    for (NodeId k = 0; k < fam.size(); ++k) {
      if (i == k) continue;
      const NodeSet rest = rel.cause[k].without(i);
      const NodeSet pc = rel.cause[k].contains(i) ? rest.with(i) : rest;
      auto ws = compare_conditionals(fam, fam.table(i), p, NodeSet::single(k), rest.with(i), pc);
      for (auto& w : ws) {
        w["i"] = fam.name(i);
        w["k"] = fam.name(k);
        rep.add(std::move(w));
      }
    }
  }
  return rep;
}

AxiomReport check_cause_conditionals(const InterventionalFamily& fam, const JointTable& p0) {
  require_tables(fam);
  const JointTable p = aligned(fam, p0);
  const CauseRelations rel = cause_relations(fam);
  AxiomReport rep;
  rep.axiom = "cause-conditionals";
  for (NodeId i = 0; i < fam.size(); ++i) {
    for (NodeId k = 0; k < fam.size(); ++k) {
      if (i == k) continue;
      auto ws = compare_conditionals(fam, fam.table(i), p, NodeSet::single(k), rel.cause[k], rel.cause[k]);
      for (auto& w : ws) {
        w["i"] = fam.name(i);
        w["k"] = fam.name(k);
        rep.add(std::move(w));
      }
    }
  }
  return rep;
}

AxiomReport check_bivariate_quantifiable(const InterventionalFamily& fam, const JointTable& p0, PairScope scope) {
  require_tables(fam);
  const JointTable p = aligned(fam, p0);
  throw_if_incompatible(fam, p);
  const CauseRelations rel = cause_relations(fam);
  const std::size_t n = fam.size();
  AxiomReport rep;
  rep.axiom = scope == PairScope::all_pairs ? "A5-all-pairs" : "A5";
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      for (NodeId k = j + 1; k < n; ++k) {
        if (i == j || i == k) continue;
        if (scope == PairScope::causally_unrelated && (rel.cause[k].contains(j) || rel.cause[j].contains(k))) continue;
        const NodeSet pair = NodeSet::of({j, k});
        const NodeSet all_causes = rel.cause_of(pair);
        const NodeSet rest = all_causes.without(i);
        const NodeSet pc = all_causes.contains(i) ? rest.with(i) : rest;
        auto ws = compare_conditionals(fam, fam.table(i), p, pair, rest.with(i), pc);
        for (auto& w : ws) {
          w["i"] = fam.name(i);
          w["j"] = fam.name(j);
          w["k"] = fam.name(k);
          rep.add(std::move(w));
        }
      }
    }
  }
  return rep;
}

AxiomReport check_edge_cause(const InterventionalFamily& fam, const Bdmg& g) {
  const CausalDerivation d = derive(fam);
  AxiomReport rep;
  rep.axiom = "edge-cause";
  for (const auto& [a, b] : g.arrows()) {
    const NodeId i = fam.index(g.name(a));
    const NodeId j = fam.index(g.name(b));
    const NodeSet given = d.icause[i][j].without(i);
    const bool marginal = fam.independent(i, i, j, NodeSet{});
    const bool conditional = fam.independent(i, i, j, given);
    if (marginal || conditional) {
      rep.add({{"i", fam.name(i)},
               {"j", fam.name(j)},
               {"marginal", verdict(marginal)},
               {"conditional", verdict(conditional)},
               {"given", format_set(fam, given)}});
    }
  }
  return rep;
}

AxiomReport check_congruent(const InterventionalFamily& a, const InterventionalFamily& b) {
  if (a.roster() != b.roster()) throw RosterMismatch("families have different rosters");
  const CausalDerivation da = derive(a);
  const CausalDerivation db = derive(b);
  const std::size_t n = a.size();
  AxiomReport rep;
  rep.axiom = "congruent";
  for (NodeId k = 0; k < n; ++k) {
    if (da.cause()[k] != db.cause()[k]) {
      rep.add({{"clause", "causes"},
               {"k", a.name(k)},
               {"first", format_set(a, da.cause()[k])},
               {"second", format_set(b, db.cause()[k])}});
    }
  }
  if (rep.count > 0) return rep;

  for (NodeId k = 0; k < n; ++k) {
    for (NodeId i : da.cause()[k]) {
      const NodeSet pair = NodeSet::of({i, k});
      const NodeSet ca = da.icause_of(i, pair);
      const NodeSet cb = db.icause_of(i, pair);
      const bool ia = a.independent(i, i, k, ca);
      const bool ib = b.independent(i, i, k, cb);
      if (ia != ib) {
        rep.add({{"clause", "1"},
                 {"i", a.name(i)},
                 {"k", a.name(k)},
                 {"first", verdict(ia)},
                 {"second", verdict(ib)},
                 {"first_given", format_set(a, ca)},
                 {"second_given", format_set(b, cb)}});
      }
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      for (NodeId k = j + 1; k < n; ++k) {
        if (i == j || i == k) continue;
        const NodeSet pair = NodeSet::of({j, k});
        const NodeSet ca = da.icause_of(i, pair);
        const NodeSet cb = db.icause_of(i, pair);
        const bool ia = a.independent(i, j, k, ca);
        const bool ib = b.independent(i, j, k, cb);
        if (ia != ib) {
          rep.add({{"clause", "2"},
                   {"i", a.name(i)},
                   {"j", a.name(j)},
                   {"k", a.name(k)},
                   {"first", verdict(ia)},
                   {"second", verdict(ib)},
                   {"first_given", format_set(a, ca)},
                   {"second_given", format_set(b, cb)}});
        }
      }
    }
  }
  return rep;
}

Reconstruction reconstruct_p(const InterventionalFamily& fam, const CausalDerivation& d,
                             const std::optional<JointTable>& reference) {
  require_tables(fam);
  if (!is_dag(d.g)) throw PreconditionViolation("reconstruction needs a DAG causal graph");
  const std::size_t n = fam.size();
  if (n < 2) throw PreconditionViolation("reconstruction needs at least two variables");
  const auto& cause = d.cause();

  // Order nodes so that causes come first; the cause relation must be acyclic.
  std::vector<NodeId> order;
  NodeSet placed;
  while (order.size() < n) {
    bool progressed = false;
    for (NodeId k = 0; k < n; ++k) {
      if (!placed.contains(k) && cause[k].subset_of(placed)) {
        order.push_back(k);
        placed.insert(k);
        progressed = true;
      }
    }
    if (!progressed) throw PreconditionViolation("cause relation is cyclic");
  }

  Reconstruction r;
  r.source_of.assign(n, 0);
  std::vector<MarginalWeights> joint_w, ctx_w;
  joint_w.resize(n);
  ctx_w.resize(n);
  for (NodeId k = 0; k < n; ++k) {
    r.source_of[k] = k == 0 ? 1 : 0;
    const JointTable& q = fam.table(r.source_of[k]);
    joint_w[k] = q.marginal_weights(cause[k].with(k));
    ctx_w[k] = q.marginal_weights(cause[k]);
  }

  const std::vector<Variable>& vars = fam.table(0).variables();
  std::vector<Rational> probs;
  for_each_assignment(vars, NodeSet::range(n), [&](const Assignment& x) {
    Rational prob = 1;
    for (NodeId k : order) {
      if (sgn(ctx_w[k].at(x)) == 0) {
        throw PreconditionViolation("no mass on context " + format_values(fam, cause[k], x) + " for " + fam.name(k) +
                                    " under intervention on " + fam.name(r.source_of[k]));
      }
      prob *= Rational(joint_w[k].at(x), ctx_w[k].at(x));
      if (sgn(prob) == 0) break;
    }
    prob.canonicalize();
    probs.push_back(prob);
  });
  r.p_hat = JointTable(vars, std::move(probs));

  if (reference) {
    const JointTable p = aligned(fam, *reference);
    r.matches_reference = p == r.p_hat;
    if (!*r.matches_reference) {
      if (!check_property(p, CiProperty::composition).holds()) r.failed_hypotheses.push_back("composition");
      if (!check_property(p, CiProperty::intersection).holds()) r.failed_hypotheses.push_back("intersection");
      try {
        if (!check_quantifiable(fam, p).holds()) r.failed_hypotheses.push_back("quantifiable");
      } catch (const Incompatible&) {
        r.failed_hypotheses.push_back("compatible");
      }
    }
  }
  return r;
}

}  // namespace dofam
