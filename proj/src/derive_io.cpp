#include "dofam/derive_io.hpp"

#include "dofam/graph_io.hpp"

namespace dofam {

namespace {

nlohmann::json labels(const InterventionalFamily& fam, NodeSet s) {
  nlohmann::json out = nlohmann::json::array();
  for (NodeId v : s) out.push_back(fam.name(v));
  return out;
}

nlohmann::json set_map(const InterventionalFamily& fam, const std::vector<NodeSet>& sets) {
  nlohmann::json out = nlohmann::json::object();
  for (NodeId k = 0; k < sets.size(); ++k) out[fam.name(k)] = labels(fam, sets[k]);
  return out;
}

nlohmann::json triples(const InterventionalFamily& fam, const std::vector<Triple>& ts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : ts) out.push_back({fam.name(t[0]), fam.name(t[1]), fam.name(t[2])});
  return out;
}

nlohmann::json pair_list(const InterventionalFamily& fam, const std::vector<NodePair>& ps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [a, b] : ps) out.push_back({fam.name(a), fam.name(b)});
  return out;
}

}  // namespace

nlohmann::json derivation_to_json(const InterventionalFamily& fam, const CausalDerivation& d) {
  nlohmann::json icause = nlohmann::json::object();
  nlohmann::json g_i = nlohmann::json::object();
  for (NodeId i = 0; i < fam.size(); ++i) {
    icause[fam.name(i)] = set_map(fam, d.icause[i]);
    g_i[fam.name(i)] = graph_to_json(d.g_i[i]);
  }
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& s : d.trace) trace.push_back(graph_to_json(s));
  return {{"mode", to_string(d.mode)},
          {"cause", set_map(fam, d.relations.cause)},
          {"eff", set_map(fam, d.relations.eff)},
          {"cc", set_map(fam, d.relations.cc)},
          {"above", set_map(fam, d.relations.above)},
          {"dcause", set_map(fam, d.dcause)},
          {"icause", icause},
          {"rounds", d.rounds},
          {"trace", trace},
          {"S", graph_to_json(d.s)},
          {"G_i", g_i},
          {"G", graph_to_json(d.g)}};
}

nlohmann::json transitivity_to_json(const InterventionalFamily& fam, const TransitivityReport& r) {
  nlohmann::json j = {{"axiom_holds", r.axiom_holds},
                      {"violations", triples(fam, r.violations)},
                      {"singleton_transitivity_checked", r.singleton_transitivity_checked},
                      {"condition_a_failures", triples(fam, r.condition_a_failures)},
                      {"condition_b_failures", triples(fam, r.condition_b_failures)},
                      {"sufficient_conditions_hold", r.sufficient_conditions_hold()}};
  nlohmann::json bad = nlohmann::json::array();
  for (NodeId i : r.not_singleton_transitive) bad.push_back(fam.name(i));
  j["not_singleton_transitive"] = bad;
  if (!r.unavailable_reason.empty()) j["unavailable"] = r.unavailable_reason;
  return j;
}

nlohmann::json pip_adjustment_to_json(const InterventionalFamily& fam, const PipAdjustment& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : a.entries) {
    nlohmann::json pips = nlohmann::json::array();
    nlohmann::json tested = nlohmann::json::array();
    nlohmann::json separating = nlohmann::json::array();
    for (const auto& p : e.pips) {
      nlohmann::json nodes = nlohmann::json::array();
      for (NodeId v : p.nodes) nodes.push_back(fam.name(v));
      pips.push_back(nodes);
    }
    for (NodeId v : e.tested) tested.push_back(fam.name(v));
    for (NodeId v : e.separating) separating.push_back(fam.name(v));
    entries.push_back({{"edge", e.arc ? "arc" : "arrow"},
                       {"from", fam.name(e.from)},
                       {"to", fam.name(e.to)},
                       {"pips", pips},
                       {"outcome", to_string(e.outcome)},
                       {"tested", tested},
                       {"separating", separating}});
  }
  return {{"dcause", set_map(fam, a.dcause)},
          {"S", graph_to_json(a.s)},
          {"entries", entries},
          {"unresolved", pair_list(fam, a.unresolved)}};
}

}  // namespace dofam
