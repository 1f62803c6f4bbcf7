#pragma once

#include <nlohmann/json.hpp>

#include "dhilbert/identities.hpp"
#include "dhilbert/monte_carlo.hpp"
#include "dhilbert/poisson.hpp"
#include "dhilbert/signal.hpp"
#include "dhilbert/walk.hpp"

namespace dhilbert {

using json = nlohmann::json;

/// [{x, value}, ...]
json signal_to_json(const LatticeSignal& s);

void to_json(json& j, const StepRule& r);
void to_json(json& j, const WalkConfig& c);
void to_json(json& j, const IdentityReport& r);
void to_json(json& j, const DefiningRelationReport& r);
void to_json(json& j, const KernelSpectralReport& r);
void to_json(json& j, const MultiplierKernelReport& r);
void to_json(json& j, const NaiveContrastReport& r);
void to_json(json& j, const CauchyRiemannReport& r);
void to_json(json& j, const LittlewoodPaleyForms& r);
void to_json(json& j, const McEstimate& e);
void to_json(json& j, const PairingEstimate& e);
void to_json(json& j, const OrthogonalityStat& s);
void to_json(json& j, const CovariationCheckReport& r);
void to_json(json& j, const ItoOrderReport& r);
void to_json(json& j, const ReconstructionVerdict& v);
void to_json(json& j, const ChiSquare& c);

}  // namespace dhilbert
