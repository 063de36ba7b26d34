#ifndef DOFAM_TABLE_IO_HPP
#define DOFAM_TABLE_IO_HPP

#include "dofam/table.hpp"
#include "json.hpp"

namespace dofam {

/// {"vars":[{"name":..,"card":..}],"probs":["num/den",...]}
nlohmann::json table_to_json(const JointTable& t);
JointTable table_from_json(const nlohmann::json& j);

/// Parses "1/2,1/2" or a JSON array into a distribution over one variable.
std::vector<Rational> parse_distribution(const std::string& text);

}  // namespace dofam

#endif
