#pragma once

#include <json.hpp>

#include "squint/jointdesign.hpp"
#include "squint/model.hpp"
#include "squint/precoders.hpp"
#include "squint/ttdsizing.hpp"

namespace squint {

using nlohmann::json;

// Keys match the field names. from_json starts from the defaults, accepts
// "rho_db" as an alternative to "rho", rejects unknown keys and validates.
void to_json(json& j, const SystemConfig& c);
void from_json(const json& j, SystemConfig& c);

// Applies one named parameter to a config ("rho_db" included). Sweeping N_t
// or M recomputes N = N_t / M; sweeping N recomputes N_t = M N.
void set_parameter(SystemConfig& c, const std::string& name, double value);

void to_json(json& j, const AnalogDesign& d);
void from_json(const json& j, AnalogDesign& d);
void to_json(json& j, const DesignReport& r);
void to_json(json& j, const DivisorAudit& a);
void to_json(json& j, const SizingResult& r);

// Complex matrices as {"rows", "cols", "re", "im"} in column-major order.
json matrix_to_json(const CMatrix& m);
void to_json(json& j, const PrecoderSet& p);

}  // namespace squint
