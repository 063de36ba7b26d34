#ifndef DOFAM_GRAPH_IO_HPP
#define DOFAM_GRAPH_IO_HPP

#include <string>

#include "dofam/graph.hpp"
#include "json.hpp"

namespace dofam {

/// Parses JSON text; syntax errors become ParseError with line and column.
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json read_json_file(const std::string& path);
/// Sorted keys, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

/// {"nodes":[...],"arrows":[[from,to],...],"arcs":[[a,b],...]}, edges in roster order.
nlohmann::json graph_to_json(const Bdmg& g);
Bdmg graph_from_json(const nlohmann::json& j);

/// DOT digraph; arcs are written as `a -> b [dir=both]`.
std::string graph_to_dot(const Bdmg& g, const std::string& name = "G");

/// Labels of a node set in roster order.
nlohmann::json node_set_to_json(const Bdmg& g, NodeSet s);

}  // namespace dofam

#endif
