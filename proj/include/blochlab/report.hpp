#pragma once

#include <complex>
#include <string>

#include <json.hpp>

#include "blochlab/criteria.hpp"

namespace blochlab {

using json = nlohmann::json;

/// Serialises with every floating-point number printed to 17 significant
/// digits (nlohmann's own dump uses shortest round-trip form).
std::string dump_json(const json& j, int indent = 2);

/// Real number formatted with 17 significant digits.
std::string fmt17(double v);

json to_json(cplx z);
json to_json(const CriterionReport& r);
json to_json(const Verdict& v);
json to_json(const Thresholds& t);

}  // namespace blochlab
