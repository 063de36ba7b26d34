#include "dofam/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "dofam/errors.hpp"

namespace dofam {

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": malformed JSON", e.line(), e.column());
  }
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json graph_to_json(const Bdmg& g) {
  nlohmann::json arrows = nlohmann::json::array();
  for (auto [u, v] : g.arrows()) arrows.push_back({g.name(u), g.name(v)});
  nlohmann::json arcs = nlohmann::json::array();
  for (auto [u, v] : g.arcs()) arcs.push_back({g.name(u), g.name(v)});
  return {{"nodes", g.names()}, {"arrows", arrows}, {"arcs", arcs}};
}

namespace {

std::vector<std::pair<std::string, std::string>> label_pairs(const nlohmann::json& j, const char* key) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!j.contains(key)) return out;
  const auto& list = j.at(key);
  if (!list.is_array()) throw InputError(std::string("graph field \"") + key + "\" must be an array");
  for (const auto& e : list) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw InputError(std::string("graph field \"") + key + "\" holds a non-pair entry: " + e.dump());
    }
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

bool plain_id(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  }
  return true;
}

std::string dot_id(const std::string& s) {
  if (plain_id(s)) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Bdmg graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.at("nodes").is_array()) {
    throw InputError("graph JSON needs a \"nodes\" array");
  }
  std::vector<std::string> names;
  for (const auto& n : j.at("nodes")) {
    if (!n.is_string()) throw InputError("node labels must be strings");
    names.push_back(n.get<std::string>());
  }
  return Bdmg::from_labels(std::move(names), label_pairs(j, "arrows"), label_pairs(j, "arcs"));
}

std::string graph_to_dot(const Bdmg& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << dot_id(name) << " {\n";
  for (const auto& n : g.names()) out << "  " << dot_id(n) << ";\n";
  for (auto [u, v] : g.arrows()) out << "  " << dot_id(g.name(u)) << " -> " << dot_id(g.name(v)) << ";\n";
  for (auto [u, v] : g.arcs()) {
    out << "  " << dot_id(g.name(u)) << " -> " << dot_id(g.name(v)) << " [dir=both];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json node_set_to_json(const Bdmg& g, NodeSet s) {
  nlohmann::json out = nlohmann::json::array();
  for (NodeId v : s) out.push_back(g.name(v));
  return out;
}

}  // namespace dofam
