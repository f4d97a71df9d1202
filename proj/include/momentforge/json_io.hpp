#pragma once

#include <json.hpp>

#include "momentforge/measure.hpp"

namespace momentforge {

/// {"atoms":[[loc,wt],...],"zero_mass":r,"trunc_err":r}
nlohmann::json to_json(const AtomicMeasure& m);

/// {"density":"<catalog-id>","params":{...}}
nlohmann::json to_json(const DensityMeasure& m);

nlohmann::json to_json(const Measure& m);

/// Inverse of to_json(AtomicMeasure); throws DomainError on malformed input.
AtomicMeasure atomic_from_json(const nlohmann::json& j);

}  // namespace momentforge
