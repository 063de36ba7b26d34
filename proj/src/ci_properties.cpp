#include "dofam/ci_properties.hpp"

#include <unordered_map>

#include "dofam/errors.hpp"
#include "dofam/separation.hpp"

namespace dofam {

const char* to_string(CiProperty p) {
  switch (p) {
    case CiProperty::intersection:
      return "intersection";
    case CiProperty::composition:
      return "composition";
    case CiProperty::singleton_transitivity:
      return "singleton_transitivity";
    case CiProperty::upward_stability:
      return "upward_stability";
    case CiProperty::downward_stability:
      return "downward_stability";
  }
  return "?";
}

const char* to_string(MarkovKind k) {
  switch (k) {
    case MarkovKind::pairwise:
      return "pairwise";
    case MarkovKind::global:
      return "global";
    case MarkovKind::converse_pairwise:
      return "converse_pairwise";
    case MarkovKind::faithful:
      return "faithful";
    case MarkovKind::adjacency_faithful:
      return "adjacency_faithful";
  }
  return "?";
}

namespace {

// Memoizes a CI relation; (A, B) is normalized so symmetric queries share an entry.
class CachedOracle {
 public:
  explicit CachedOracle(const CiOracle& inner) : inner_(inner) {}

  bool operator()(NodeSet a, NodeSet b, NodeSet c) {
    if (b.bits() < a.bits()) std::swap(a, b);
    const Key key{a.bits(), b.bits(), c.bits()};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const bool r = inner_(a, b, c);
    cache_.emplace(key, r);
    return r;
  }

 private:
  struct Key {
    std::uint32_t a, b, c;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.a;
      h = h * 0x9E3779B97F4A7C15ULL ^ k.b;
      h = h * 0x9E3779B97F4A7C15ULL ^ k.c;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };
  const CiOracle& inner_;
  std::unordered_map<Key, bool, KeyHash> cache_;
};

// Disjoint non-empty (A, B, D) with min(B) < min(D), any C from the rest.
template <class F>
void for_each_quad(NodeSet all, CheckScope scope, F&& f) {
  if (scope == CheckScope::singletons) {
    for (NodeId i : all) {
      for (NodeId j : all) {
        for (NodeId k : all) {
          if (i == j || i == k || j >= k) continue;
          const NodeSet a = NodeSet::single(i), b = NodeSet::single(j), d = NodeSet::single(k);
          for_each_subset(all - a - b - d, [&](NodeSet c) { f(a, b, c, d); });
        }
      }
    }
    return;
  }
  for_each_subset(all, [&](NodeSet a) {
    if (a.empty()) return;
    for_each_subset(all - a, [&](NodeSet b) {
      if (b.empty()) return;
      for_each_subset(all - a - b, [&](NodeSet d) {
        if (d.empty() || d.first() < b.first()) return;
        for_each_subset(all - a - b - d, [&](NodeSet c) { f(a, b, c, d); });
      });
    });
  });
}

}  // namespace

CiReport check_property(const CiOracle& indep, std::size_t n, CiProperty property, const StrictOrder& order,
                        CheckScope scope) {
  const bool ordered = property == CiProperty::upward_stability || property == CiProperty::downward_stability;
  if (ordered && !order) throw PreconditionViolation(std::string(to_string(property)) + " needs an order");
  CachedOracle ci(indep);
  CiReport report{property, {}};
  const NodeSet all = NodeSet::range(n);

  switch (property) {
    case CiProperty::intersection:
      for_each_quad(all, scope, [&](NodeSet a, NodeSet b, NodeSet c, NodeSet d) {
        if (ci(a, b, c | d) && ci(a, d, c | b) && !ci(a, b | d, c)) report.violations.push_back({a, b, c, d});
      });
      break;
    case CiProperty::composition:
      for_each_quad(all, scope, [&](NodeSet a, NodeSet b, NodeSet c, NodeSet d) {
        if (ci(a, b, c) && ci(a, d, c) && !ci(a, b | d, c)) report.violations.push_back({a, b, c, d});
      });
      break;
    case CiProperty::singleton_transitivity:
      for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
          for (NodeId k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            const NodeSet a = NodeSet::single(i), b = NodeSet::single(j), d = NodeSet::single(k);
            for_each_subset(all - a - b - d, [&](NodeSet c) {
              if (ci(a, b, c) && ci(a, b, c | d) && !ci(a, d, c) && !ci(b, d, c)) {
                report.violations.push_back({a, b, c, d});
              }
            });
          }
        }
      }
      break;
    case CiProperty::upward_stability:
      for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
          const NodeSet a = NodeSet::single(i), b = NodeSet::single(j);
          for_each_subset(all - a - b, [&](NodeSet c) {
            if (!ci(a, b, c)) return;
            for (NodeId k : all - a - b - c) {
              if (!order(i, k) && !order(j, k)) continue;
              if (!ci(a, b, c.with(k))) report.violations.push_back({a, b, c, NodeSet::single(k)});
            }
          });
        }
      }
      break;
    case CiProperty::downward_stability:
      for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
          const NodeSet a = NodeSet::single(i), b = NodeSet::single(j);
          for_each_subset(all - a - b, [&](NodeSet c) {
            if (c.empty() || !ci(a, b, c)) return;
            for (NodeId k : c) {
              if (order(i, k) || order(j, k)) continue;
              bool rest_below = false;
              for (NodeId l : c.without(k)) rest_below = rest_below || order(l, k);
              if (rest_below) continue;
              if (!ci(a, b, c.without(k))) report.violations.push_back({a, b, c, NodeSet::single(k)});
            }
          });
        }
      }
      break;
  }
  return report;
}

CiOracle table_oracle(const JointTable& p) {
  return [&p](NodeSet a, NodeSet b, NodeSet c) { return p.independent(a, b, c); };
}

CiReport check_property(const JointTable& p, CiProperty property, const StrictOrder& order, CheckScope scope) {
  return check_property(table_oracle(p), p.var_count(), property, order, scope);
}

bool has_intersection_and_composition(const CiOracle& indep, std::size_t n, CheckScope scope) {
  CachedOracle ci(indep);
  CiOracle cached = [&ci](NodeSet a, NodeSet b, NodeSet c) { return ci(a, b, c); };
  return check_property(cached, n, CiProperty::intersection, {}, scope).holds() &&
         check_property(cached, n, CiProperty::composition, {}, scope).holds();
}

bool for_each_triple(NodeSet all, CheckScope scope, const std::function<bool(NodeSet, NodeSet, NodeSet)>& f) {
  if (scope == CheckScope::singletons) {
    for (NodeId i : all) {
      for (NodeId j : all) {
        if (j <= i) continue;
        const NodeSet a = NodeSet::single(i), b = NodeSet::single(j);
        if (any_subset(all - a - b, [&](NodeSet c) { return !f(a, b, c); })) return false;
      }
    }
    return true;
  }
  bool go = true;
  for_each_subset(all, [&](NodeSet a) {
    if (!go || a.empty()) return;
    for_each_subset(all - a, [&](NodeSet b) {
      if (!go || b.empty() || b.first() < a.first()) return;
      go = !any_subset(all - a - b, [&](NodeSet c) { return !f(a, b, c); });
    });
  });
  return go;
}

MarkovReport markov_check(const CiOracle& indep, const Bdmg& g, MarkovKind kind, CheckScope scope) {
  MarkovReport report{kind, {}};
  CachedOracle ci(indep);
  const NodeSet all = g.nodes();
  const std::size_t n = g.size();

  auto pair_sets = [&](NodeId i, NodeId j) { return std::pair{NodeSet::single(i), NodeSet::single(j)}; };

  switch (kind) {
    case MarkovKind::pairwise:
    case MarkovKind::converse_pairwise:
      for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
          const bool adj = g.adjacent(i, j);
          if (adj != (kind == MarkovKind::converse_pairwise)) continue;
          auto [a, b] = pair_sets(i, j);
          const NodeSet c = ancestors(g, a | b);
          const bool ind = ci(a, b, c);
          if (kind == MarkovKind::pairwise && !ind) report.violations.push_back({a, b, c, "separated-but-dependent"});
          if (kind == MarkovKind::converse_pairwise && ind) {
            report.violations.push_back({a, b, c, "connected-but-independent"});
          }
        }
      }
      break;
    case MarkovKind::global:
    case MarkovKind::faithful: {
      SigmaSeparator sep(g);
      for_each_triple(all, scope, [&](NodeSet a, NodeSet b, NodeSet c) {
        const bool s = sep(a, b, c);
        const bool ind = ci(a, b, c);
        if (s && !ind) report.violations.push_back({a, b, c, "separated-but-dependent"});
        if (kind == MarkovKind::faithful && !s && ind) {
          report.violations.push_back({a, b, c, "connected-but-independent"});
        }
        return true;
      });
      break;
    }
    case MarkovKind::adjacency_faithful:
      for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
          if (!g.adjacent(i, j)) continue;
          auto [a, b] = pair_sets(i, j);
          for_each_subset(all - a - b, [&](NodeSet c) {
            if (ci(a, b, c)) report.violations.push_back({a, b, c, "connected-but-independent"});
          });
        }
      }
      break;
  }
  return report;
}

MarkovReport markov_check(const JointTable& p, const Bdmg& g, MarkovKind kind, CheckScope scope) {
  if (p.var_count() != g.size()) throw RosterMismatch("table and graph have different rosters");
  const JointTable q = p.reordered(g.names());
  return markov_check(table_oracle(q), g, kind, scope);
}

}  // namespace dofam
