#ifndef DOFAM_SCM_IO_HPP
#define DOFAM_SCM_IO_HPP

#include "dofam/family.hpp"
#include "dofam/scm.hpp"
#include "json.hpp"

namespace dofam {

nlohmann::json scm_to_json(const Scm& scm);
Scm scm_from_json(const nlohmann::json& j);

/// {"interventions":{label: table}} for table-backed families,
/// {"oracle":{"ground_truth": graph}} for oracle families.
nlohmann::json family_to_json(const InterventionalFamily& fam);
InterventionalFamily family_from_json(const nlohmann::json& j);

nlohmann::json validation_to_json(const ValidationReport& r);

}  // namespace dofam

#endif
