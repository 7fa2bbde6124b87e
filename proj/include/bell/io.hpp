#pragma once

#include <nlohmann/json.hpp>

#include "bell/behavior.hpp"
#include "bell/lhv.hpp"
#include "bell/polytope.hpp"
#include "bell/scenario.hpp"

// JSON formats.
//
//   Scenario:  {"parties":[{"settings":[{"outcomes":2},...]},...]}
//   Behavior:  {"scenario":<Scenario>, "probabilities":[flat, canonical order]}
//   Model:     {"scenario":<Scenario>?, "components":[{"weight":w,
//               "responses":[[[p0,p1],...per setting],...per party]}]}
//              (scenario is inferred from the responses when omitted)
//   Joint:     {"scenario":<Scenario>, "joint":[flat, canonical full-assignment order]}
//   Functional:{"scenario":<Scenario>, "coefficients":[...], "name":"..."}
//   Feasibility result:
//              {"status":"feasible"|"infeasible", "joint":[...],
//               "certificate":{"coefficients":[...], "classical_max":v,
//                              "value":w, "margin":m}}
//
// Parsing errors surface as nlohmann::json exceptions or StructureError.
namespace bell::io {

using nlohmann::json;

json to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

json to_json(const Behavior& b);
Behavior behavior_from_json(const json& j);

json to_json(const lhv::StochasticLocalModel& m);
lhv::StochasticLocalModel model_from_json(const json& j);

json to_json(const lhv::JointDistribution& j);
lhv::JointDistribution joint_from_json(const json& j);

json to_json(const BellFunctional& f);
BellFunctional functional_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const NoSignallingReport& r);
json to_json(const FeasibilityResult& r);

}  // namespace bell::io
