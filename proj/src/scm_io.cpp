#include "dofam/scm_io.hpp"

#include "dofam/errors.hpp"
#include "dofam/graph_io.hpp"
#include "dofam/table_io.hpp"

namespace dofam {

nlohmann::json scm_to_json(const Scm& scm) {
  const Bdmg& g = scm.graph();
  nlohmann::json cards = nlohmann::json::object();
  nlohmann::json mechs = nlohmann::json::object();
  for (NodeId i = 0; i < g.size(); ++i) {
    cards[g.name(i)] = scm.card(i);
    mechs[g.name(i)] = {{"order", scm.mechanism(i).inputs}, {"table", scm.mechanism(i).table}};
  }
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& t : scm.noise()) {
    nlohmann::json vars = nlohmann::json::array();
    nlohmann::json ncards = nlohmann::json::object();
    for (const auto& v : t.variables()) {
      vars.push_back(v.name);
      ncards[v.name] = v.card;
    }
    nlohmann::json probs = nlohmann::json::array();
    for (const auto& p : t.probs()) probs.push_back(format_rational(p));
    comps.push_back({{"vars", vars}, {"cards", ncards}, {"probs", probs}});
  }
  return {{"graph", graph_to_json(g)}, {"cards", cards}, {"noise", {{"components", comps}}}, {"mechanisms", mechs}};
}

Scm scm_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidScm("SCM JSON must be an object");
  for (const char* key : {"graph", "cards", "noise", "mechanisms"}) {
    if (!j.contains(key)) throw InvalidScm(std::string("SCM JSON lacks \"") + key + "\"");
  }
  Bdmg g = graph_from_json(j.at("graph"));
  std::vector<std::size_t> cards(g.size(), 0);
  for (NodeId i = 0; i < g.size(); ++i) {
    const auto& c = j.at("cards");
    if (!c.contains(g.name(i)) || !c.at(g.name(i)).is_number_unsigned()) {
      throw InvalidScm("missing cardinality for " + g.name(i));
    }
    cards[i] = c.at(g.name(i)).get<std::size_t>();
  }
  std::vector<JointTable> noise;
  const auto& comps = j.at("noise").at("components");
  if (!comps.is_array()) throw InvalidScm("noise.components must be an array");
  for (const auto& comp : comps) {
    std::vector<Variable> vars;
    for (const auto& name : comp.at("vars")) {
      const std::string label = name.get<std::string>();
      if (!comp.at("cards").contains(label)) throw InvalidScm("missing cardinality for noise " + label);
      vars.push_back({label, comp.at("cards").at(label).get<std::size_t>()});
    }
    std::vector<Rational> probs;
    for (const auto& p : comp.at("probs")) probs.push_back(rational_from_json(p));
    noise.emplace_back(std::move(vars), std::move(probs));
  }
  std::vector<Mechanism> mechs(g.size());
  for (NodeId i = 0; i < g.size(); ++i) {
    const auto& all = j.at("mechanisms");
    if (!all.contains(g.name(i))) throw InvalidScm("missing mechanism for " + g.name(i));
    const auto& m = all.at(g.name(i));
    mechs[i].inputs = m.at("order").get<std::vector<std::string>>();
    mechs[i].table = m.at("table").get<std::vector<std::size_t>>();
  }
  return Scm(std::move(g), std::move(cards), std::move(noise), std::move(mechs));
}

nlohmann::json family_to_json(const InterventionalFamily& fam) {
  if (fam.ground_truth() && !fam.table_backed()) {
    return {{"oracle", {{"ground_truth", graph_to_json(*fam.ground_truth())}}}};
  }
  nlohmann::json ints = nlohmann::json::object();
  for (NodeId i = 0; i < fam.size(); ++i) ints[fam.name(i)] = table_to_json(fam.table(i));
  return {{"interventions", ints}};
}

InterventionalFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("family JSON must be an object");
  if (j.contains("oracle")) {
    return InterventionalFamily::oracle(graph_from_json(j.at("oracle").at("ground_truth")));
  }
  if (!j.contains("interventions") || !j.at("interventions").is_object()) {
    throw InputError("family JSON needs \"interventions\" or \"oracle\"");
  }
  const auto& ints = j.at("interventions");
  if (ints.empty()) throw RosterMismatch("family has no interventions");
  // The roster comes from the first table's variable order; keys must cover it exactly.
  std::vector<JointTable> tables;
  std::vector<std::string> keys;
  for (const auto& [key, value] : ints.items()) {
    keys.push_back(key);
    tables.push_back(table_from_json(value));
  }
  const std::vector<std::string> roster = tables.front().names();
  if (keys.size() != roster.size()) throw RosterMismatch("need one intervention per roster variable");
  std::vector<JointTable> ordered;
  for (const auto& name : roster) {
    auto it = std::find(keys.begin(), keys.end(), name);
    if (it == keys.end()) throw RosterMismatch("no intervention table for " + name);
    ordered.push_back(tables[static_cast<std::size_t>(it - keys.begin())]);
  }
  return InterventionalFamily::from_tables(std::move(ordered));
}

nlohmann::json validation_to_json(const ValidationReport& r) {
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& i : r.issues) issues.push_back({{"code", i.code}, {"witness", i.witness}});
  return {{"valid", r.valid()}, {"issues", issues}};
}

}  // namespace dofam
