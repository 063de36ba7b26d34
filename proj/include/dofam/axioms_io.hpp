#ifndef DOFAM_AXIOMS_IO_HPP
#define DOFAM_AXIOMS_IO_HPP

#include "dofam/axioms.hpp"
#include "json.hpp"

namespace dofam {

/// {"axiom":..,"holds":..,"count":..,"witnesses":[{..}],"skipped":[..]}
nlohmann::json axiom_report_to_json(const AxiomReport& r);
nlohmann::json reconstruction_to_json(const Reconstruction& r);

}  // namespace dofam

#endif
