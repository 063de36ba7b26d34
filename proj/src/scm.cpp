#include "dofam/scm.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "dofam/errors.hpp"

namespace dofam {

Scm::Scm(Bdmg graph, std::vector<std::size_t> cards, std::vector<JointTable> noise, std::vector<Mechanism> mechanisms)
    : graph_(std::move(graph)), cards_(std::move(cards)), noise_(std::move(noise)), mechanisms_(std::move(mechanisms)) {
  if (cards_.size() != graph_.size()) throw InvalidScm("need one cardinality per node");
  if (mechanisms_.size() != graph_.size()) throw InvalidScm("need one mechanism per node");
}

std::vector<Variable> Scm::variables() const {
  std::vector<Variable> out;
  for (NodeId i = 0; i < size(); ++i) out.push_back({graph_.name(i), cards_[i]});
  return out;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.code + ": " + issue.witness;
  }
  return out;
}

namespace {

struct NoiseRef {
  std::size_t component = 0;
  NodeId var = 0;
};

// Mechanisms resolved against the graph and the noise registry.
struct Compiled {
  std::vector<NoiseRef> noise_of;
  // per node, per input: parent node index, or -1 for the node's own noise
  std::vector<std::vector<int>> sources;
  std::vector<std::vector<std::size_t>> strides;
  std::vector<NodeId> topo;
};

std::string join_names(const std::vector<std::string>& names, NodeSet s) {
  std::string out = "{";
  bool first = true;
  for (NodeId v : s) {
    if (!first) out += ",";
    out += names[v];
    first = false;
  }
  return out + "}";
}

std::vector<NodeSet> arc_components(const Bdmg& g) {
  std::vector<NodeSet> out;
  NodeSet covered;
  for (NodeId i = 0; i < g.size(); ++i) {
    if (covered.contains(i)) continue;
    NodeSet comp = NodeSet::single(i);
    NodeSet frontier = g.spouses(i);
    while (!frontier.empty()) {
      NodeId v = frontier.first();
      frontier.erase(v);
      if (comp.contains(v)) continue;
      comp.insert(v);
      frontier |= g.spouses(v) - comp;
    }
    covered |= comp;
    out.push_back(comp);
  }
  return out;
}

Compiled compile(const Scm& scm, std::vector<ValidationIssue>& issues) {
  const Bdmg& g = scm.graph();
  const std::size_t n = g.size();
  Compiled c;
  c.noise_of.resize(n);
  c.sources.resize(n);
  c.strides.resize(n);

  if (!is_acyclic(g)) {
    for (NodeId i = 0; i < n; ++i) {
      if (strong_component(g, i).size() > 1) {
        issues.push_back({"cyclic", "node " + g.name(i) + " lies on a directed cycle"});
        break;
      }
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    if (scm.card(i) == 0) issues.push_back({"cardinality", "node " + g.name(i) + " has cardinality 0"});
  }

  std::unordered_map<std::string, NoiseRef> registry;
  for (std::size_t k = 0; k < scm.noise().size(); ++k) {
    const auto& vars = scm.noise()[k].variables();
    for (NodeId v = 0; v < vars.size(); ++v) {
      if (g.find(vars[v].name)) {
        issues.push_back({"noise_name", "noise variable " + vars[v].name + " shadows a node label"});
      }
      if (!registry.emplace(vars[v].name, NoiseRef{k, v}).second) {
        issues.push_back({"noise_duplicate", "noise variable " + vars[v].name + " declared twice"});
      }
    }
  }

  std::unordered_map<std::string, NodeId> used_by;
  for (NodeId i = 0; i < n; ++i) {
    const Mechanism& m = scm.mechanism(i);
    const std::string& node = g.name(i);
    if (m.inputs.empty()) {
      issues.push_back({"mechanism_inputs", "mechanism of " + node + " has no inputs"});
      continue;
    }
    auto noise = registry.find(m.inputs.back());
    if (noise == registry.end()) {
      issues.push_back({"mechanism_inputs", "last input of " + node + " (" + m.inputs.back() + ") is not a noise variable"});
      continue;
    }
    if (auto [it, fresh] = used_by.emplace(m.inputs.back(), i); !fresh) {
      issues.push_back({"noise_shared", "noise " + m.inputs.back() + " feeds both " + g.name(it->second) + " and " + node});
    }
    c.noise_of[i] = noise->second;

    NodeSet seen;
    bool ok = true;
    for (std::size_t t = 0; t + 1 < m.inputs.size(); ++t) {
      auto p = g.find(m.inputs[t]);
      if (!p || !g.has_arrow(*p, i) || seen.contains(*p)) {
        issues.push_back({"mechanism_inputs", "input " + m.inputs[t] + " of " + node + " is not a distinct parent"});
        ok = false;
        break;
      }
      seen.insert(*p);
      c.sources[i].push_back(static_cast<int>(*p));
    }
    if (ok && seen != g.parents(i)) {
      issues.push_back({"mechanism_inputs", "mechanism of " + node + " omits parents " +
                                                join_names(g.names(), g.parents(i) - seen)});
      ok = false;
    }
    if (!ok) continue;
    c.sources[i].push_back(-1);

    std::vector<std::size_t> cards;
    for (int s : c.sources[i]) {
      cards.push_back(s >= 0 ? scm.card(static_cast<NodeId>(s))
                             : scm.noise()[noise->second.component].variables()[noise->second.var].card);
    }
    c.strides[i].assign(cards.size(), 1);
    std::size_t size = 1;
    for (std::size_t t = cards.size(); t-- > 0;) {
      c.strides[i][t] = size;
      size *= cards[t];
    }
    if (m.table.size() != size) {
      issues.push_back({"mechanism_size", "mechanism of " + node + " has " + std::to_string(m.table.size()) +
                                              " entries, expected " + std::to_string(size)});
      continue;
    }
    for (std::size_t t = 0; t < m.table.size(); ++t) {
      if (m.table[t] >= scm.card(i)) {
        issues.push_back({"mechanism_range", "mechanism of " + node + " entry " + std::to_string(t) + " = " +
                                                 std::to_string(m.table[t]) + " is outside 0.." +
                                                 std::to_string(scm.card(i) - 1)});
        break;
      }
    }
  }
  for (const auto& [name, ref] : registry) {
    if (!used_by.count(name)) issues.push_back({"noise_unused", "noise variable " + name + " feeds no node"});
  }

  if (issues.empty()) {
    NodeSet placed;
    while (c.topo.size() < n) {
      for (NodeId i = 0; i < n; ++i) {
        if (!placed.contains(i) && g.parents(i).subset_of(placed)) {
          placed.insert(i);
          c.topo.push_back(i);
        }
      }
    }
  }
  return c;
}

void check_noise_structure(const Scm& scm, const Compiled& c, std::vector<ValidationIssue>& issues) {
  const Bdmg& g = scm.graph();
  std::vector<NodeSet> nodes_of(scm.noise().size());
  for (NodeId i = 0; i < g.size(); ++i) nodes_of[c.noise_of[i].component].insert(i);

  bool partition_ok = true;
  for (NodeSet comp : arc_components(g)) {
    const std::size_t k = c.noise_of[comp.first()].component;
    if (nodes_of[k] != comp) {
      issues.push_back({"noise_partition", "arc-connected nodes " + join_names(g.names(), comp) +
                                               " but noise component covers " + join_names(g.names(), nodes_of[k])});
      partition_ok = false;
    }
  }
  if (!partition_ok) return;

  for (std::size_t k = 0; k < scm.noise().size(); ++k) {
    const JointTable& t = scm.noise()[k];
    if (t.var_count() < 2) continue;
    std::vector<NodeId> node_of(t.var_count());
    for (NodeId i : nodes_of[k]) node_of[c.noise_of[i].var] = i;
    auto to_nodes = [&](NodeSet vs) {
      NodeSet out;
      for (NodeId v : vs) out.insert(node_of[v]);
      return out;
    };
    const NodeSet all = NodeSet::range(t.var_count());
    for_each_subset(all, [&](NodeSet a) {
      if (a.empty()) return;
      for_each_subset(all - a, [&](NodeSet b) {
        if (b.empty() || b.first() < a.first()) return;
        NodeSet na = to_nodes(a), nb = to_nodes(b);
        bool arc = false;
        for (NodeId u : na) arc = arc || !g.spouses(u).disjoint(nb);
        const bool ind = t.independent(a, b, {});
        if (!arc && !ind) {
          issues.push_back({"noise_dependence", "noises of " + join_names(g.names(), na) + " and " +
                                                    join_names(g.names(), nb) + " are dependent without an arc"});
        }
        if (arc && ind && a.size() == 1 && b.size() == 1) {
          issues.push_back({"noise_independence", "arc " + g.name(na.first()) + " <-> " + g.name(nb.first()) +
                                                      " but their noises are independent"});
        }
      });
    });
  }
}

}  // namespace

ValidationReport validate(const Scm& scm) {
  ValidationReport r;
  Compiled c = compile(scm, r.issues);
  if (r.issues.empty()) check_noise_structure(scm, c, r.issues);
  return r;
}

JointTable joint(const Scm& scm) {
  std::vector<ValidationIssue> issues;
  const Compiled c = compile(scm, issues);
  if (issues.empty()) check_noise_structure(scm, c, issues);
  if (!issues.empty()) throw InvalidScm(ValidationReport{issues}.summary());

  const std::size_t n = scm.size();
  const auto vars = scm.variables();
  std::vector<std::size_t> strides(n, 1);
  std::size_t cells = 1;
  for (std::size_t k = n; k-- > 0;) {
    strides[k] = cells;
    cells *= vars[k].card;
  }
  std::vector<Rational> probs(cells, Rational(0));

  // Positive cells of each component, decoded once.
  struct Cell {
    Assignment values;
    Rational p;
  };
  std::vector<std::vector<Cell>> comp_cells(scm.noise().size());
  for (std::size_t k = 0; k < scm.noise().size(); ++k) {
    const JointTable& t = scm.noise()[k];
    for (std::size_t cell = 0; cell < t.cell_count(); ++cell) {
      if (sgn(t.prob(cell)) != 0) comp_cells[k].push_back({t.decode(cell), t.prob(cell)});
    }
  }

  std::vector<const Assignment*> chosen(scm.noise().size(), nullptr);
  Assignment x(n, 0);
  auto evaluate = [&](const Rational& p) {
    for (NodeId i : c.topo) {
      const auto& src = c.sources[i];
      std::size_t idx = 0;
      for (std::size_t t = 0; t < src.size(); ++t) {
        const std::size_t val = src[t] >= 0 ? x[static_cast<std::size_t>(src[t])]
                                            : (*chosen[c.noise_of[i].component])[c.noise_of[i].var];
        idx += val * c.strides[i][t];
      }
      x[i] = scm.mechanism(i).table[idx];
    }
    std::size_t cell = 0;
    for (NodeId i = 0; i < n; ++i) cell += x[i] * strides[i];
    probs[cell] += p;
  };
  auto recurse = [&](auto&& self, std::size_t k, const Rational& p) -> void {
    if (k == comp_cells.size()) {
      evaluate(p);
      return;
    }
    for (const Cell& cell : comp_cells[k]) {
      chosen[k] = &cell.values;
      self(self, k + 1, p * cell.p);
    }
  };
  recurse(recurse, 0, Rational(1));
  return JointTable(vars, std::move(probs));
}

Scm intervene_standard(const Scm& scm, NodeId i, const std::vector<Rational>& replacement) {
  const Bdmg& g = scm.graph();
  if (i >= g.size()) throw UnknownLabel("#" + std::to_string(i));
  if (replacement.size() != scm.card(i)) {
    throw InvalidTable("replacement for " + g.name(i) + " has " + std::to_string(replacement.size()) +
                       " entries, cardinality is " + std::to_string(scm.card(i)));
  }
  const std::string noise_name = scm.mechanism(i).inputs.back();
  JointTable fresh({{noise_name, scm.card(i)}}, replacement);

  Bdmg h = g.intervened(i);
  std::vector<JointTable> noise;
  for (const JointTable& t : scm.noise()) {
    const auto names = t.names();
    auto it = std::find(names.begin(), names.end(), noise_name);
    if (it == names.end()) {
      noise.push_back(t);
      continue;
    }
    const NodeId own = static_cast<NodeId>(it - names.begin());
    const NodeSet rest = NodeSet::range(names.size()).without(own);
    if (rest.empty()) continue;
    // The remaining noises split along the arc components of the intervened graph.
    std::vector<std::string> node_of_var(names.size());
    for (NodeId v = 0; v < g.size(); ++v) {
      auto p = std::find(names.begin(), names.end(), scm.mechanism(v).inputs.back());
      if (p != names.end()) node_of_var[static_cast<std::size_t>(p - names.begin())] = g.name(v);
    }
    NodeSet left = rest;
    while (!left.empty()) {
      const NodeId seed = h.index(node_of_var[left.first()]);
      NodeSet comp = NodeSet::single(seed);
      NodeSet frontier = h.spouses(seed);
      while (!frontier.empty()) {
        NodeId v = frontier.first();
        frontier.erase(v);
        if (comp.contains(v)) continue;
        comp.insert(v);
        frontier |= h.spouses(v) - comp;
      }
      NodeSet piece;
      for (NodeId v : left) {
        if (comp.contains(h.index(node_of_var[v]))) piece.insert(v);
      }
      noise.push_back(t.marginal(piece));
      left -= piece;
    }
  }
  noise.push_back(std::move(fresh));

  std::vector<Mechanism> mechs = scm.mechanisms();
  Mechanism identity{{noise_name}, {}};
  identity.table.resize(scm.card(i));
  std::iota(identity.table.begin(), identity.table.end(), std::size_t{0});
  mechs[i] = std::move(identity);
  return Scm(std::move(h), scm.cards(), std::move(noise), std::move(mechs));
}

std::vector<JointTable> standard_family_tables(const Scm& scm, const std::map<NodeId, std::vector<Rational>>& overrides) {
  const JointTable p = joint(scm);
  std::vector<JointTable> out;
  for (NodeId i = 0; i < scm.size(); ++i) {
    auto it = overrides.find(i);
    const std::vector<Rational> replacement =
        it != overrides.end() ? it->second : p.marginal(NodeSet::single(i)).probs();
    out.push_back(joint(intervene_standard(scm, i, replacement)));
  }
  return out;
}

InterventionalFamily standard_family(const Scm& scm, const std::map<NodeId, std::vector<Rational>>& overrides) {
  return InterventionalFamily::from_tables(standard_family_tables(scm, overrides));
}

JointTable atomic_to_family(const AtomicKernelSet& aks) {
  if (aks.target >= aks.roster.size()) throw InvalidTable("kernel target outside roster");
  const std::size_t card = aks.roster[aks.target].card;
  if (aks.kernels.size() != card) {
    throw InvalidTable("need one kernel per value of " + aks.roster[aks.target].name);
  }
  if (aks.reference.size() != card) throw InvalidTable("reference law has the wrong size");
  Rational total = 0;
  for (const auto& r : aks.reference) {
    if (r <= 0) throw InvalidTable("reference law must be strictly positive");
    total += r;
  }
  if (total != 1) throw InvalidTable("reference law sums to " + format_rational(total));
  std::vector<Variable> rest = aks.roster;
  rest.erase(rest.begin() + aks.target);
  for (const auto& k : aks.kernels) {
    if (k.variables() != rest) throw InvalidTable("kernel roster must be the roster without the target, in order");
  }

  std::vector<Rational> probs;
  for_each_assignment(aks.roster, NodeSet::range(aks.roster.size()), [&](const Assignment& x) {
    Assignment y;
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (v != aks.target) y.push_back(x[v]);
    }
    const std::size_t xi = x[aks.target];
    probs.push_back(aks.reference[xi] * aks.kernels[xi].prob(y));
  });
  return JointTable(aks.roster, std::move(probs));
}

}  // namespace dofam
