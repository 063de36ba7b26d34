#include "dofam/table_io.hpp"

#include "dofam/errors.hpp"

namespace dofam {

nlohmann::json table_to_json(const JointTable& t) {
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& v : t.variables()) vars.push_back({{"name", v.name}, {"card", v.card}});
  nlohmann::json probs = nlohmann::json::array();
  for (const auto& p : t.probs()) probs.push_back(format_rational(p));
  return {{"vars", vars}, {"probs", probs}};
}

JointTable table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("probs")) {
    throw InvalidTable("table JSON needs \"vars\" and \"probs\"");
  }
  std::vector<Variable> vars;
  for (const auto& v : j.at("vars")) {
    if (!v.is_object() || !v.contains("name") || !v.contains("card") || !v.at("name").is_string() ||
        !v.at("card").is_number_unsigned()) {
      throw InvalidTable("table variable entries need a string \"name\" and a positive \"card\"");
    }
    vars.push_back({v.at("name").get<std::string>(), v.at("card").get<std::size_t>()});
  }
  if (!j.at("probs").is_array()) throw InvalidTable("\"probs\" must be an array");
  std::vector<Rational> probs;
  for (const auto& p : j.at("probs")) probs.push_back(rational_from_json(p));
  return JointTable(std::move(vars), std::move(probs));
}

std::vector<Rational> parse_distribution(const std::string& text) {
  std::vector<Rational> out;
  std::string body = text;
  if (!body.empty() && body.front() == '[') {
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw InputError("bad distribution: " + text);
    for (const auto& p : j) out.push_back(rational_from_json(p));
    return out;
  }
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    out.push_back(parse_rational(body.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace dofam
