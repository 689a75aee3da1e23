#pragma once

#include <json.hpp>

#include "ni/ellipsoid.hpp"
#include "ni/fields.hpp"
#include "ni/geometry.hpp"
#include "ni/neutrality.hpp"
#include "ni/polarization.hpp"
#include "ni/quadrature_domains.hpp"

namespace ni {

using json = nlohmann::json;

// Conductivities serialize +inf as the string "inf".
json sigma_to_json(double sigma);
double sigma_from_json(const json& j, const std::string& key);

json to_json(const ConformalMap& map);
ConformalMap conformal_map_from_json(const json& j);

json to_json(const CurveSpec& spec);
CurveSpec curve_spec_from_json(const json& j);

json to_json(const ConductivityProfile& profile);
ConductivityProfile profile_from_json(const json& j, int d = 2);

json to_json(const PolarizationTensor& pt);
json to_json(const HsReport& report);
json to_json(const BondingParameter& beta);
json to_json(const LcDiskSolution& sol);
json to_json(const CoatingSearchResult& result);
json to_json(const ConfocalConductivityResult& result);
json to_json(const OdpResidualReport& report);
json to_json(const NewtonianFormulationReport& report);
json to_json(const QuadratureReport& report);
json to_json(const SpectralExteriorSolution& sol);
json to_json(const DecayResult& result);

} // namespace ni
