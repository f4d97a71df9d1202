#include "momentforge/json_io.hpp"

namespace momentforge {

nlohmann::json to_json(const AtomicMeasure& m) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : m.atoms()) {
    atoms.push_back({a.location, a.weight});
  }
  return {{"atoms", std::move(atoms)}, {"zero_mass", m.zero_mass()}, {"trunc_err", m.truncation_error()}};
}

nlohmann::json to_json(const DensityMeasure& m) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : m.params()) {
    params[k] = v;
  }
  return {{"density", m.catalog_id()}, {"params", std::move(params)}};
}

nlohmann::json to_json(const Measure& m) {
  return std::visit([](const auto& x) { return to_json(x); }, m);
}

AtomicMeasure atomic_from_json(const nlohmann::json& j) {
  try {
    std::vector<Atom> atoms;
    for (const auto& pair : j.at("atoms")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw DomainError("atomic_from_json: each atom must be a [location, weight] pair");
      }
      atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return AtomicMeasure(std::move(atoms), j.value("zero_mass", 0.0), j.value("trunc_err", 0.0));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("atomic_from_json: ") + e.what());
  }
}

}  // namespace momentforge
