#include "dofam/axioms_io.hpp"

#include "dofam/table_io.hpp"

namespace dofam {

nlohmann::json axiom_report_to_json(const AxiomReport& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : r.witnesses) w.push_back(x);
  return {{"axiom", r.axiom}, {"holds", r.holds()}, {"count", r.count}, {"witnesses", w}, {"skipped", r.skipped}};
}

nlohmann::json reconstruction_to_json(const Reconstruction& r) {
  nlohmann::json j = {{"p_hat", table_to_json(r.p_hat)}, {"failed_hypotheses", r.failed_hypotheses}};
  if (r.matches_reference) j["matches_reference"] = *r.matches_reference;
  return j;
}

}  // namespace dofam
