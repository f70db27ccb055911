#ifndef INFOLOSS_JSON_IO_HPP
#define INFOLOSS_JSON_IO_HPP

#include "infoloss/accumulator.hpp"
#include "infoloss/acr.hpp"
#include "infoloss/distribution.hpp"
#include "infoloss/entropy.hpp"
#include "infoloss/loss.hpp"
#include "infoloss/pbf.hpp"
#include "infoloss/reconstruct.hpp"
#include "infoloss/reldim.hpp"

#include <json.hpp>

namespace infoloss {

inline constexpr int kSchemaVersion = 1;

/// {"kind":"gaussian","mean":0,"std":1} | {"kind":"uniform","a":0,"b":1} |
/// {"kind":"mixed","ac_weight":w,"ac":{...},"atoms":[[x,m],...]} |
/// {"kind":"discrete","atoms":[[x,m],...]}
ScalarDistribution dist_from_json(const nlohmann::json& j);

/// {"branches":[{"domain":[a,b],"map":"affine",...}, ...]} or
/// {"named":"square-law"}. Domain endpoints may be null / "inf" / "-inf".
/// Map kinds: affine (a, b), power (exponent, scale, offset), cubic
/// (coeffs [a3,a2,a1,a0]), expr (formula, fd_step).
Pbf pbf_from_json(const nlohmann::json& j);

/// {"N":4,"pieces":[{"mass":0.5,"M":1,"class":"submersion"},...]}
DimensionPieceSpec dim_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LossReport& rep);
nlohmann::json to_json(const ReconResult& rec);
nlohmann::json to_json(const RelLossResult& r);
nlohmann::json to_json(const RelLossEmpirical& r);
nlohmann::json to_json(const DimensionEstimate& est);
nlohmann::json to_json(const McAcrAnalysis& a);
nlohmann::json accumulator_run_json(const std::vector<double>& pmf, int steps);

} // namespace infoloss

#endif
