#ifndef DOFAM_TESTS_ORACLES_HPP
#define DOFAM_TESTS_ORACLES_HPP

// Slow, independent reimplementations used to check the library.

#include <functional>
#include <map>
#include <vector>

#include "dofam/graph.hpp"
#include "dofam/table.hpp"

namespace oracles {

using dofam::Bdmg;
using dofam::NodeId;
using dofam::NodeSet;

/// reach[a][b]: a directed path of length >= 1 from a to b (Warshall closure).
inline std::vector<std::vector<bool>> reachability(const Bdmg& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b) r[a][b] = g.has_arrow(a, b);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (r[a][m] && r[m][b]) r[a][b] = true;
  return r;
}

inline NodeSet closure_ancestors(const Bdmg& g, NodeId j) {
  const auto r = reachability(g);
  NodeSet out;
  for (NodeId a = 0; a < g.size(); ++a)
    if (a != j && r[a][j]) out.insert(a);
  return out;
}

/// Sigma-separation by enumerating simple paths with one chosen edge per step.
/// Blocked when a collider lies outside C and its ancestors, or when a conditioned
/// non-collider sends an arrow to a path neighbour outside its strong component.
inline bool sigma_separated_brute(const Bdmg& g, NodeId a, NodeId b, NodeSet c) {
  const std::size_t n = g.size();
  const auto r = reachability(g);
  NodeSet an_c = c;
  for (NodeId v = 0; v < n; ++v)
    for (NodeId w : c)
      if (r[v][w]) an_c.insert(v);
  auto same_sc = [&](NodeId x, NodeId y) { return x == y || (r[x][y] && r[y][x]); };

  // edge kinds from x to y: 0 = x->y, 1 = x<-y, 2 = x<->y
  struct Step {
    NodeId to;
    int kind;
  };
  std::vector<NodeId> nodes{a};
  std::vector<int> kinds;
  bool connected = false;
  auto head_at_end = [](int kind) { return kind == 0 || kind == 2; };    // arrowhead at the later node
  auto head_at_start = [](int kind) { return kind == 1 || kind == 2; };  // arrowhead at the earlier node

  std::function<void(NodeSet)> extend = [&](NodeSet visited) {
    if (connected) return;
    const NodeId x = nodes.back();
    if (x == b) {
      // check inner nodes
      for (std::size_t t = 1; t + 1 < nodes.size(); ++t) {
        const NodeId q = nodes[t];
        const bool collider = head_at_end(kinds[t - 1]) && head_at_start(kinds[t]);
        if (collider) {
          if (!an_c.contains(q)) return;
        } else if (c.contains(q)) {
          // arrow out of q toward the previous or next node
          if (kinds[t - 1] == 1 && !same_sc(q, nodes[t - 1])) return;
          if (kinds[t] == 0 && !same_sc(q, nodes[t + 1])) return;
        }
      }
      connected = true;
      return;
    }
    for (NodeId y = 0; y < n; ++y) {
      if (visited.contains(y)) continue;
      for (int kind = 0; kind < 3; ++kind) {
        const bool present = kind == 0 ? g.has_arrow(x, y) : kind == 1 ? g.has_arrow(y, x) : g.has_arc(x, y);
        if (!present) continue;
        nodes.push_back(y);
        kinds.push_back(kind);
        extend(visited.with(y));
        nodes.pop_back();
        kinds.pop_back();
      }
    }
  };
  extend(NodeSet::single(a));
  return !connected;
}

/// Conditional independence straight from the product definition, on positive contexts.
inline bool ci_brute(const dofam::JointTable& p, NodeSet a, NodeSet b, NodeSet c) {
  using Key = std::vector<std::size_t>;
  auto project = [](const dofam::Assignment& x, NodeSet s) {
    Key k;
    for (NodeId v : s) k.push_back(x[v]);
    return k;
  };
  std::map<Key, dofam::Rational> pabc, pac, pbc, pc;
  for (std::size_t cell = 0; cell < p.cell_count(); ++cell) {
    const auto x = p.decode(cell);
    const auto& w = p.prob(cell);
    pabc[project(x, a | b | c)] += w;
    pac[project(x, a | c)] += w;
    pbc[project(x, b | c)] += w;
    pc[project(x, c)] += w;
  }
  bool ok = true;
  dofam::for_each_assignment(p.variables(), a | b | c, [&](const dofam::Assignment& x) {
    const dofam::Rational& z = pc[project(x, c)];
    if (z == 0) return;
    if (pabc[project(x, a | b | c)] * z != pac[project(x, a | c)] * pbc[project(x, b | c)]) ok = false;
  });
  return ok;
}

}  // namespace oracles

#endif
