#ifndef DOFAM_DERIVE_IO_HPP
#define DOFAM_DERIVE_IO_HPP

#include "dofam/derive.hpp"
#include "json.hpp"

namespace dofam {

/// Cause and dcause maps keyed by label, the per-round trace of S, and the graphs S, G_i and G.
nlohmann::json derivation_to_json(const InterventionalFamily& fam, const CausalDerivation& d);
nlohmann::json transitivity_to_json(const InterventionalFamily& fam, const TransitivityReport& r);
nlohmann::json pip_adjustment_to_json(const InterventionalFamily& fam, const PipAdjustment& a);

}  // namespace dofam

#endif
