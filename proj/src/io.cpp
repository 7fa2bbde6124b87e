#include "bell/io.hpp"

#include "bell/errors.hpp"

namespace bell::io {

json to_json(const Scenario& s) {
  json parties = json::array();
  for (int p = 0; p < s.parties(); ++p) {
    json settings = json::array();
    for (int x = 0; x < s.settings(p); ++x) settings.push_back({{"outcomes", s.outcomes(p, x)}});
    parties.push_back({{"settings", std::move(settings)}});
  }
  return {{"parties", std::move(parties)}};
}

Scenario scenario_from_json(const json& j) {
  std::vector<std::vector<int>> outcomes;
  for (const auto& party : j.at("parties")) {
    auto& row = outcomes.emplace_back();
    for (const auto& setting : party.at("settings")) row.push_back(setting.at("outcomes").get<int>());
  }
  return Scenario(std::move(outcomes));
}

json to_json(const Behavior& b) {
  return {{"scenario", to_json(b.scenario())},
          {"probabilities", std::vector<double>(b.table().begin(), b.table().end())}};
}

Behavior behavior_from_json(const json& j) {
  return Behavior(scenario_from_json(j.at("scenario")), j.at("probabilities").get<std::vector<double>>());
}

json to_json(const lhv::StochasticLocalModel& m) {
  const Scenario& s = m.scenario();
  json components = json::array();
  for (const auto& comp : m.components()) {
    json responses = json::array();
    for (int p = 0; p < s.parties(); ++p) {
      json per_setting = json::array();
      for (int x = 0; x < s.settings(p); ++x) per_setting.push_back(comp.responses[s.coordinate(p, x)]);
      responses.push_back(std::move(per_setting));
    }
    components.push_back({{"weight", comp.weight}, {"responses", std::move(responses)}});
  }
  return {{"scenario", to_json(s)}, {"components", std::move(components)}};
}

lhv::StochasticLocalModel model_from_json(const json& j) {
  const json& components = j.at("components");
  if (!components.is_array() || components.empty()) throw StructureError("model needs a non-empty component list");

  std::optional<Scenario> scenario;
  if (j.contains("scenario")) {
    scenario = scenario_from_json(j.at("scenario"));
  } else {
    std::vector<std::vector<int>> outcomes;
    for (const auto& party : components.front().at("responses")) {
      auto& row = outcomes.emplace_back();
      for (const auto& dist : party) row.push_back(static_cast<int>(dist.size()));
    }
    scenario = Scenario(std::move(outcomes));
  }

  std::vector<lhv::ModelComponent> out;
  for (const auto& comp : components) {
    lhv::ModelComponent mc;
    mc.weight = comp.at("weight").get<double>();
    const json& responses = comp.at("responses");
    if (responses.size() != static_cast<std::size_t>(scenario->parties()))
      throw StructureError("model responses need one entry per party");
    for (int p = 0; p < scenario->parties(); ++p) {
      if (responses[p].size() != static_cast<std::size_t>(scenario->settings(p)))
        throw StructureError("model responses need one distribution per setting");
      for (const auto& dist : responses[p]) mc.responses.push_back(dist.get<std::vector<double>>());
    }
    out.push_back(std::move(mc));
  }
  return lhv::StochasticLocalModel(std::move(*scenario), std::move(out));
}

json to_json(const lhv::JointDistribution& j) {
  return {{"scenario", to_json(j.scenario())}, {"joint", j.table()}};
}

lhv::JointDistribution joint_from_json(const json& j) {
  return lhv::JointDistribution(scenario_from_json(j.at("scenario")), j.at("joint").get<std::vector<double>>());
}

json to_json(const BellFunctional& f) {
  json out = {{"scenario", to_json(f.scenario)}, {"coefficients", f.coefficients}};
  if (!f.name.empty()) out["name"] = f.name;
  return out;
}

BellFunctional functional_from_json(const json& j) {
  return BellFunctional(scenario_from_json(j.at("scenario")), j.at("coefficients").get<std::vector<double>>(),
                        j.value("name", std::string{}));
}

json to_json(const ValidationReport& r) {
  return {{"is_valid", r.is_valid},
          {"max_negativity", r.max_negativity},
          {"max_normalization_error", r.max_normalization_error},
          {"offending_indices", r.offending_indices}};
}

json to_json(const NoSignallingReport& r) {
  json out = {{"passes", r.passes}, {"max_deviation", r.max_deviation}, {"witness", nullptr}};
  if (r.witness)
    out["witness"] = {{"parties", r.witness->parties},
                      {"joint_setting_a", r.witness->joint_setting_a},
                      {"joint_setting_b", r.witness->joint_setting_b}};
  return out;
}

json to_json(const FeasibilityResult& r) {
  json out = {{"status", r.status == Feasibility::feasible ? "feasible" : "infeasible"}, {"residual", r.residual}};
  if (r.joint) out["joint"] = r.joint->table();
  if (r.certificate) {
    out["certificate"] = {{"coefficients", r.certificate->functional.coefficients},
                          {"classical_max", r.certificate->classical_max},
                          {"value", r.certificate->value},
                          {"margin", r.certificate->margin}};
  }
  return out;
}

}  // namespace bell::io
