#include "dofam/separation.hpp"

#include <algorithm>
#include <array>

#include "dofam/errors.hpp"

namespace dofam {

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::sigma:
      return "sigma";
    case Criterion::m:
      return "m";
    case Criterion::d:
      return "d";
  }
  return "?";
}

Criterion criterion_from_string(const std::string& s) {
  if (s == "sigma") return Criterion::sigma;
  if (s == "m") return Criterion::m;
  if (s == "d") return Criterion::d;
  throw InputError("unknown criterion: " + s);
}

bool m_separated_reach(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c) {
  const NodeSet open_colliders = c | ancestors(g, c);
  // visited[v] bit 0: reached with a tail at v; bit 1: reached with an arrowhead at v.
  std::vector<std::uint8_t> visited(g.size(), 0);
  std::vector<std::pair<NodeId, bool>> stack;

  auto push = [&](NodeId w, bool head) {
    const std::uint8_t bit = head ? 2 : 1;
    if (visited[w] & bit) return;
    visited[w] |= bit;
    stack.emplace_back(w, head);
  };
  // Leaving v along every edge whose mark at v is permitted by `allow(head_out)`.
  auto expand = [&](NodeId v, auto allow) {
    if (allow(false)) {
      for (NodeId w : g.children(v)) push(w, true);
    }
    if (allow(true)) {
      for (NodeId w : g.parents(v)) push(w, false);
      for (NodeId w : g.spouses(v)) push(w, true);
    }
  };

  for (NodeId s : a) expand(s, [](bool) { return true; });
  while (!stack.empty()) {
    auto [v, head_in] = stack.back();
    stack.pop_back();
    if (b.contains(v)) return false;
    expand(v, [&](bool head_out) {
      if (head_in && head_out) return open_colliders.contains(v);
      return !c.contains(v);
    });
  }
  return true;
}

namespace {

void check_query(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c) {
  const NodeSet all = g.nodes();
  if (!(a | b | c).subset_of(all)) throw UnknownLabel("node set outside roster");
  if (a.empty() || b.empty()) throw PreconditionViolation("separation query needs non-empty A and B");
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) {
    throw PreconditionViolation("separation query sets must be pairwise disjoint");
  }
}

}  // namespace

bool separated(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c, Criterion criterion) {
  check_query(g, a, b, c);
  switch (criterion) {
    case Criterion::d:
      if (!is_dag(g)) throw CriterionMismatch("d-separation requires a DAG");
      return m_separated_reach(g, a, b, c);
    case Criterion::m:
      if (!is_acyclic(g)) throw CriterionMismatch("m-separation requires an acyclic graph");
      return m_separated_reach(g, a, b, c);
    case Criterion::sigma:
      return m_separated_reach(acyclify(g), a, b, c);
  }
  return false;
}

bool separated(const Bdmg& g, const SeparationQuery& q) { return separated(g, q.a, q.b, q.c, q.criterion); }

SigmaSeparator::SigmaSeparator(const Bdmg& g) : acy_(acyclify(g)) {}

std::string format_path(const Bdmg& g, const Path& p) {
  std::string out;
  for (std::size_t t = 0; t < p.nodes.size(); ++t) {
    if (t > 0) {
      switch (p.steps[t - 1]) {
        case Step::forward:
          out += " -> ";
          break;
        case Step::backward:
          out += " <- ";
          break;
        case Step::bidirected:
          out += " <-> ";
          break;
      }
    }
    out += g.name(p.nodes[t]);
  }
  return out;
}

namespace {

bool head_at_end(Step s) { return s != Step::backward; }
bool head_at_start(Step s) { return s != Step::forward; }

// Steps available between v and w, in a fixed order.
std::vector<Step> steps_between(const Bdmg& g, NodeId v, NodeId w) {
  std::vector<Step> out;
  if (g.has_arrow(v, w)) out.push_back(Step::forward);
  if (g.has_arrow(w, v)) out.push_back(Step::backward);
  if (g.has_arc(v, w)) out.push_back(Step::bidirected);
  return out;
}

// Depth-first enumeration of simple paths with incremental pruning.
class PathSearch {
 public:
  PathSearch(const Bdmg& g, NodeSet c, Criterion criterion)
      : g_(g), c_(c), criterion_(criterion), open_colliders_(c | ancestors(g, c)), sc_(g.size()) {
    for (NodeId i = 0; i < g.size(); ++i) sc_[i] = strong_component(g, i);
  }

  std::optional<Path> first(NodeId a, NodeId b) {
    target_ = b;
    path_ = Path{{a}, {}};
    if (dfs(NodeSet::single(a))) return path_;
    return std::nullopt;
  }

 private:
  // Whether the current end node may sit between the last step and `out`.
  bool inner_ok(NodeId v, Step in, NodeId u, Step out, NodeId w) const {
    const bool collider = head_at_end(in) && head_at_start(out);
    if (collider) return open_colliders_.contains(v);
    if (!c_.contains(v)) return true;
    if (criterion_ != Criterion::sigma) return false;
    // A conditioned non-collider only blocks when it points out of its strong component.
    if (in == Step::backward && !sc_[v].contains(u)) return false;
    if (out == Step::forward && !sc_[v].contains(w)) return false;
    return true;
  }

  bool dfs(NodeSet used) {
    const NodeId v = path_.nodes.back();
    for (NodeId w = 0; w < g_.size(); ++w) {
      if (used.contains(w)) continue;
      for (Step s : steps_between(g_, v, w)) {
        if (!path_.steps.empty()) {
          const NodeId u = path_.nodes[path_.nodes.size() - 2];
          if (!inner_ok(v, path_.steps.back(), u, s, w)) continue;
        }
        path_.nodes.push_back(w);
        path_.steps.push_back(s);
        if (w == target_ || dfs(used.with(w))) return true;
        path_.nodes.pop_back();
        path_.steps.pop_back();
      }
    }
    return false;
  }

  const Bdmg& g_;
  NodeSet c_;
  Criterion criterion_;
  NodeSet open_colliders_;
  std::vector<NodeSet> sc_;
  NodeId target_ = 0;
  Path path_;
};

}  // namespace

std::optional<Path> find_connecting_path(const Bdmg& g, NodeId a, NodeId b, NodeSet c, Criterion criterion) {
  if (a >= g.size() || b >= g.size()) throw UnknownLabel("node outside roster");
  if (a == b || c.contains(a) || c.contains(b)) {
    throw PreconditionViolation("path endpoints must be distinct and outside C");
  }
  PathSearch search(g, c, criterion);
  return search.first(a, b);
}

bool sigma_separated_by_paths(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c) {
  check_query(g, a, b, c);
  PathSearch search(g, c, Criterion::sigma);
  for (NodeId x : a) {
    for (NodeId y : b) {
      if (search.first(x, y)) return false;
    }
  }
  return true;
}

namespace {

class PipSearch {
 public:
  PipSearch(const Bdmg& g, NodeId i, NodeId j)
      : g_(g), i_(i), j_(j), inner_allowed_(ancestors(g, NodeSet::of({i, j}))), sc_(g.size()) {
    for (NodeId v = 0; v < g.size(); ++v) sc_[v] = strong_component(g, v);
  }

  std::vector<Path> run() {
    path_ = Path{{i_}, {}};
    dfs(NodeSet::single(i_));
    std::sort(found_.begin(), found_.end());
    return found_;
  }

 private:
  bool edge_ok(NodeId v, NodeId w, Step s, bool first, bool last) const {
    if (s == Step::bidirected) return true;
    if (sc_[v].contains(w)) return true;
    if (first && s == Step::forward) return true;
    if (last && s == Step::backward) return true;
    return false;
  }

  void dfs(NodeSet used) {
    const NodeId v = path_.nodes.back();
    const bool first = path_.steps.empty();
    for (NodeId w = 0; w < g_.size(); ++w) {
      if (used.contains(w)) continue;
      const bool last = (w == j_);
      if (last && first) continue;  // at least one inner node
      if (!last && !inner_allowed_.contains(w)) continue;
      for (Step s : steps_between(g_, v, w)) {
        if (!edge_ok(v, w, s, first, last)) continue;
        path_.nodes.push_back(w);
        path_.steps.push_back(s);
        if (last) {
          found_.push_back(path_);
        } else {
          dfs(used.with(w));
        }
        path_.nodes.pop_back();
        path_.steps.pop_back();
      }
    }
  }

  const Bdmg& g_;
  NodeId i_;
  NodeId j_;
  NodeSet inner_allowed_;
  std::vector<NodeSet> sc_;
  Path path_;
  std::vector<Path> found_;
};

}  // namespace

std::vector<Path> find_pips(const Bdmg& g, NodeId i, NodeId j) {
  if (i >= g.size() || j >= g.size()) throw UnknownLabel("node outside roster");
  if (i == j) throw PreconditionViolation("find_pips needs distinct endpoints");
  return PipSearch(g, i, j).run();
}

bool markov_equivalent(const Bdmg& g1, const Bdmg& g2, EquivalenceScope scope) {
  const std::size_t n = g1.size();
  if (g2.size() != n) throw RosterMismatch("graphs have different node counts");
  // perm[i] = index in g2 of g1's node i
  std::vector<NodeId> perm(n);
  for (NodeId i = 0; i < n; ++i) {
    auto k = g2.find(g1.name(i));
    if (!k) throw RosterMismatch("node " + g1.name(i) + " missing from second graph");
    perm[i] = *k;
  }
  auto map = [&](NodeSet s) {
    NodeSet out;
    for (NodeId v : s) out.insert(perm[v]);
    return out;
  };
  SigmaSeparator s1(g1);
  SigmaSeparator s2(g2);
  auto agree = [&](NodeSet a, NodeSet b, NodeSet c) { return s1(a, b, c) == s2(map(a), map(b), map(c)); };

  const NodeSet all = g1.nodes();
  if (scope == EquivalenceScope::singletons) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        const NodeSet a = NodeSet::single(i);
        const NodeSet b = NodeSet::single(j);
        if (any_subset(all - a - b, [&](NodeSet c) { return !agree(a, b, c); })) return false;
      }
    }
    return true;
  }
  // Full scope: every ordered split into A, B, C, rest with A < B by first member.
  bool ok = true;
  for_each_subset(all, [&](NodeSet a) {
    if (!ok || a.empty()) return;
    for_each_subset(all - a, [&](NodeSet b) {
      if (!ok || b.empty() || b.first() < a.first()) return;
      for_each_subset(all - a - b, [&](NodeSet c) {
        if (ok && !agree(a, b, c)) ok = false;
      });
    });
  });
  return ok;
}

bool squeeze_separation_holds(const Bdmg& g, NodeId i, NodeId j, NodeSet a) {
  if (i >= g.size() || j >= g.size()) throw UnknownLabel("node outside roster");
  if (i == j) throw PreconditionViolation("squeeze: endpoints must differ");
  if (!is_ancestral(g)) throw PreconditionViolation("squeeze: graph is not ancestral");
  const NodeSet ij = NodeSet::of({i, j});
  const NodeSet pa = g.parents(ij);
  const NodeSet an = ancestors(g, ij);
  if (!pa.subset_of(a) || !a.subset_of(an)) {
    throw PreconditionViolation("squeeze: conditioning set not between pa({i,j}) and an({i,j})");
  }
  if (g.adjacent(i, j)) throw PreconditionViolation("squeeze: pair is adjacent");
  const NodeSet si = NodeSet::single(i);
  const NodeSet sj = NodeSet::single(j);
  if (!any_subset(g.nodes() - ij, [&](NodeSet c) { return m_separated_reach(g, si, sj, c); })) {
    throw PreconditionViolation("squeeze: pair is inseparable");
  }
  return m_separated_reach(g, si, sj, a);
}

}  // namespace dofam
