#include "dofam/generators.hpp"

#include "dofam/errors.hpp"

namespace dofam {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw PreconditionViolation("Rng::below(0)");
  // Rejection sampling keeps the mapping exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

bool Rng::chance(double p) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return u < p;
}

std::vector<Rational> Rng::positive_distribution(std::size_t n) {
  std::vector<Rational> out;
  std::size_t total = 0;
  std::vector<std::size_t> w(n);
  for (auto& x : w) total += (x = between(1, 6));
  for (auto x : w) {
    Rational q(static_cast<long>(x), static_cast<long>(total));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

const char* to_string(GraphClass c) {
  switch (c) {
    case GraphClass::any: return "any";
    case GraphClass::admg: return "admg";
    case GraphClass::ancestral: return "ancestral";
    case GraphClass::dag: return "dag";
    case GraphClass::maximal_ancestral: return "maximal_ancestral";
  }
  return "?";
}

GraphClass graph_class_from_string(const std::string& s) {
  for (GraphClass c : {GraphClass::any, GraphClass::admg, GraphClass::ancestral, GraphClass::dag,
                       GraphClass::maximal_ancestral}) {
    if (s == to_string(c)) return c;
  }
  throw InputError("unknown graph class: " + s);
}

namespace {

bool satisfies(const Bdmg& g, GraphClass cls) {
  switch (cls) {
    case GraphClass::any: return true;
    case GraphClass::admg: return is_acyclic(g);
    case GraphClass::ancestral: return is_ancestral(g);
    case GraphClass::dag: return is_dag(g);
    case GraphClass::maximal_ancestral: return is_ancestral(g) && is_maximal(g);
  }
  return false;
}

Bdmg draw_graph(Rng& rng, std::size_t n, double arrow_density, double arc_density, GraphClass cls) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  Bdmg g(names);
  if (cls == GraphClass::any) {
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < n; ++b)
        if (a != b && rng.chance(arrow_density)) g.add_arrow(a, b);
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b)
        if (!g.arrow_adjacent(a, b) && rng.chance(arc_density)) g.add_arc(a, b);
    return g;
  }

  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (rng.chance(arrow_density)) g.add_arrow(order[x], order[y]);
  if (cls == GraphClass::dag) return g;

  std::vector<NodeSet> an(n);
  for (NodeId i = 0; i < n; ++i) an[i] = ancestors(g, i);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (g.arrow_adjacent(a, b)) continue;
      const bool comparable = an[a].contains(b) || an[b].contains(a);
      if (cls != GraphClass::admg && comparable) continue;
      if (rng.chance(arc_density)) g.add_arc(a, b);
    }
  }
  if (cls == GraphClass::maximal_ancestral) {
    // Join inseparable pairs until none remain; direction follows the ancestor relation.
    for (auto pairs = inseparable_pairs(g); !pairs.empty(); pairs = inseparable_pairs(g)) {
      const auto [a, b] = pairs.front();
      if (an[a].contains(b)) {
        g.add_arrow(b, a);
      } else if (an[b].contains(a)) {
        g.add_arrow(a, b);
      } else {
        g.add_arc(a, b);
      }
    }
  }
  return g;
}

}  // namespace

Bdmg random_bdmg(std::uint64_t seed, std::size_t n, double arrow_density, double arc_density, GraphClass cls) {
  if (n > 10) throw PreconditionViolation("random_bdmg supports at most 10 nodes");
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng(mix_seed(seed, attempt));
    Bdmg g = draw_graph(rng, n, arrow_density, arc_density, cls);
    if (satisfies(g, cls)) return g;
  }
  throw PreconditionViolation(std::string("could not generate a graph of class ") + to_string(cls));
}

Scm random_scm(std::uint64_t seed, const Bdmg& g, const std::vector<std::size_t>& cards,
               const std::vector<std::size_t>& noise_cards) {
  const std::size_t n = g.size();
  if (!is_acyclic(g)) throw InvalidScm("random_scm needs an acyclic graph");
  if (cards.size() != n || noise_cards.size() != n) throw InvalidScm("one card and one noise card per node");
  for (NodeId i = 0; i < n; ++i) {
    if (cards[i] < 1 || noise_cards[i] < cards[i]) throw InvalidScm("noise card must cover the node card");
  }
  Rng rng(seed);

  // Latent bit per arc; each node lists its arcs in arc order.
  const auto arcs = g.arcs();
  std::vector<std::vector<std::size_t>> arcs_at(n);
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    arcs_at[arcs[e].first].push_back(e);
    arcs_at[arcs[e].second].push_back(e);
  }
  std::vector<std::vector<Rational>> latent_law(arcs.size());
  for (auto& l : latent_law) l = rng.positive_distribution(2);
  std::vector<std::vector<Rational>> private_law(n);
  for (NodeId i = 0; i < n; ++i) private_law[i] = rng.positive_distribution(noise_cards[i]);
  std::vector<std::size_t> noise_size(n);
  for (NodeId i = 0; i < n; ++i) noise_size[i] = noise_cards[i] << arcs_at[i].size();

  std::vector<JointTable> noise;
  NodeSet done;
  for (NodeId start = 0; start < n; ++start) {
    if (done.contains(start)) continue;
    NodeSet comp = NodeSet::single(start);
    for (bool grew = true; grew;) {
      grew = false;
      for (NodeId v : comp) {
        if (!(g.spouses(v) - comp).empty()) {
          comp |= g.spouses(v);
          grew = true;
        }
      }
    }
    done |= comp;
    const auto nodes = comp.to_vector();
    std::size_t cells = 1;
    for (NodeId v : nodes) {
      cells *= noise_size[v];
      if (cells > (std::size_t{1} << 16)) throw PreconditionViolation("noise component too large");
    }
    std::vector<std::size_t> comp_arcs;
    for (std::size_t e = 0; e < arcs.size(); ++e)
      if (comp.contains(arcs[e].first)) comp_arcs.push_back(e);

    std::vector<Rational> probs(cells, Rational(0));
    // Enumerate private values and latent bits jointly.
    std::vector<std::size_t> priv(nodes.size(), 0);
    std::vector<std::size_t> bits(arcs.size(), 0);
    for (;;) {
      Rational p = 1;
      for (std::size_t a = 0; a < nodes.size(); ++a) p *= private_law[nodes[a]][priv[a]];
      for (std::size_t e : comp_arcs) p *= latent_law[e][bits[e]];
      std::size_t cell = 0;
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        const NodeId v = nodes[a];
        std::size_t eps = priv[a];
        for (std::size_t e : arcs_at[v]) eps = eps * 2 + bits[e];
        cell = cell * noise_size[v] + eps;
      }
      probs[cell] += p;
      // odometer over private values, then latent bits
      std::size_t a = 0;
      for (; a < nodes.size(); ++a) {
        if (++priv[a] < noise_cards[nodes[a]]) break;
        priv[a] = 0;
      }
      if (a < nodes.size()) continue;
      std::size_t b = 0;
      for (; b < comp_arcs.size(); ++b) {
        if (++bits[comp_arcs[b]] < 2) break;
        bits[comp_arcs[b]] = 0;
      }
      if (b == comp_arcs.size()) break;
    }
    for (auto& p : probs) p.canonicalize();
    std::vector<Variable> vars;
    for (NodeId v : nodes) vars.push_back({"e_" + g.name(v), noise_size[v]});
    noise.emplace_back(std::move(vars), std::move(probs));
  }

  std::vector<Mechanism> mechs(n);
  for (NodeId i = 0; i < n; ++i) {
    Mechanism& m = mechs[i];
    std::size_t pa_cells = 1;
    for (NodeId p : g.parents(i)) {
      m.inputs.push_back(g.name(p));
      pa_cells *= cards[p];
    }
    m.inputs.push_back("e_" + g.name(i));
    const std::size_t latent_cells = std::size_t{1} << arcs_at[i].size();
    m.table.assign(pa_cells * noise_size[i], 0);
    for (std::size_t pa = 0; pa < pa_cells; ++pa) {
      for (std::size_t lat = 0; lat < latent_cells; ++lat) {
        // Surjective map from the private value onto the node's values.
        std::vector<std::size_t> image(noise_cards[i]);
        for (std::size_t v = 0; v < noise_cards[i]; ++v) image[v] = v < cards[i] ? v : rng.below(cards[i]);
        rng.shuffle(image);
        for (std::size_t u = 0; u < noise_cards[i]; ++u) {
          m.table[pa * noise_size[i] + u * latent_cells + lat] = image[u];
        }
      }
    }
  }
  return Scm(g, cards, std::move(noise), std::move(mechs));
}

Scm random_scm(std::uint64_t seed, const Bdmg& g, std::size_t max_card) {
  Rng rng(mix_seed(seed, 0xca4d));
  std::vector<std::size_t> cards(g.size()), noise_cards(g.size());
  for (NodeId i = 0; i < g.size(); ++i) {
    cards[i] = rng.between(2, std::max<std::size_t>(2, max_card));
    noise_cards[i] = cards[i] + rng.below(2);
  }
  return random_scm(seed, g, cards, noise_cards);
}

InterventionalFamily oracle_family(const Bdmg& g) { return InterventionalFamily::oracle(g); }

}  // namespace dofam
