#include "bell/lhv.hpp"

#include <cmath>
#include <string>

#include "bell/errors.hpp"

namespace bell::lhv {
namespace {

constexpr double kNormTol = 1e-12;

void check_distribution(const std::vector<double>& dist, std::size_t expected_size, const std::string& what) {
  if (dist.size() != expected_size) throw StructureError(what + " has the wrong number of outcomes");
  double sum = 0.0;
  for (double v : dist) {
    if (!(v >= 0.0)) throw InvariantError(what + " has a negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTol) throw InvariantError(what + " does not sum to 1");
}

}  // namespace

DeterministicStrategy::DeterministicStrategy(Scenario scenario, std::vector<int> assignment)
    : scenario_(std::move(scenario)), assignment_(std::move(assignment)) {
  if (assignment_.size() != scenario_.coordinate_count())
    throw StructureError("strategy needs one outcome per (party, setting)");
  for (std::size_t c = 0; c < assignment_.size(); ++c)
    if (assignment_[c] < 0 || assignment_[c] >= scenario_.coordinate_outcomes(c))
      throw StructureError("strategy outcome out of range at coordinate " + std::to_string(c));
}

int DeterministicStrategy::outcome(int party, int setting) const {
  return assignment_[scenario_.coordinate(party, setting)];
}

StochasticLocalModel::StochasticLocalModel(Scenario scenario, std::vector<ModelComponent> components)
    : scenario_(std::move(scenario)), components_(std::move(components)) {
  if (components_.empty()) throw InvariantError("model needs at least one component");
  double total = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& comp = components_[k];
    if (!(comp.weight > 0.0)) throw InvariantError("component weights must be positive");
    total += comp.weight;
    if (comp.responses.size() != scenario_.coordinate_count())
      throw StructureError("component " + std::to_string(k) + " needs one response per (party, setting)");
    for (std::size_t c = 0; c < comp.responses.size(); ++c)
      check_distribution(comp.responses[c], static_cast<std::size_t>(scenario_.coordinate_outcomes(c)),
                         "response " + std::to_string(c) + " of component " + std::to_string(k));
  }
  if (std::abs(total - 1.0) > kNormTol) throw InvariantError("component weights do not sum to 1");
}

double StochasticLocalModel::response(std::size_t component, int party, int setting, int outcome) const {
  const auto& dist = components_.at(component).responses[scenario_.coordinate(party, setting)];
  if (outcome < 0 || static_cast<std::size_t>(outcome) >= dist.size()) throw StructureError("outcome out of range");
  return dist[outcome];
}

JointDistribution::JointDistribution(Scenario scenario, std::vector<double> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  check_distribution(table_, scenario_.full_assignment_count(), "joint distribution");
}

Behavior behavior_from_model(const StochasticLocalModel& m) {
  const Scenario& s = m.scenario();
  std::vector<double> table(s.table_size(), 0.0);
  for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
    const auto xs = s.joint_setting(js);
    const std::size_t begin = s.offset(js);
    for (std::size_t t = 0; t < s.outcome_tuple_count(js); ++t) {
      const auto as = s.outcome_tuple(js, t);
      double sum = 0.0;
      for (const auto& comp : m.components()) {
        double term = comp.weight;
        for (int p = 0; p < s.parties(); ++p) term *= comp.responses[s.coordinate(p, xs[p])][as[p]];
        sum += term;
      }
      table[begin + t] = sum;
    }
  }
  return Behavior(s, std::move(table));
}

JointDistribution joint_from_model(const StochasticLocalModel& m) {
  const Scenario& s = m.scenario();
  const std::size_t n = s.full_assignment_count();
  if (n > kMaxStrategies) throw LimitError("too many full assignments");
  std::vector<double> table(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto assignment = s.full_assignment(i);
    double sum = 0.0;
    for (const auto& comp : m.components()) {
      double term = comp.weight;
      for (std::size_t c = 0; c < assignment.size(); ++c) term *= comp.responses[c][assignment[c]];
      sum += term;
    }
    table[i] = sum;
  }
  return JointDistribution(s, std::move(table));
}

Behavior behavior_from_joint(const JointDistribution& j) {
  const Scenario& s = j.scenario();
  std::vector<double> table(s.table_size(), 0.0);
  std::vector<int> as(static_cast<std::size_t>(s.parties()));
  for (std::size_t i = 0; i < j.table().size(); ++i) {
    const double weight = j.table()[i];
    if (weight == 0.0) continue;
    const auto assignment = s.full_assignment(i);
    for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
      const auto xs = s.joint_setting(js);
      for (int p = 0; p < s.parties(); ++p) as[p] = assignment[s.coordinate(p, xs[p])];
      table[s.offset(js) + s.outcome_tuple_index(js, as)] += weight;
    }
  }
  return Behavior(s, std::move(table));
}

StochasticLocalModel model_from_joint(const JointDistribution& j) {
  const Scenario& s = j.scenario();
  std::vector<ModelComponent> components;
  for (std::size_t i = 0; i < j.table().size(); ++i) {
    if (j.table()[i] == 0.0) continue;
    ModelComponent comp;
    comp.weight = j.table()[i];
    const auto assignment = s.full_assignment(i);
    for (std::size_t c = 0; c < assignment.size(); ++c) {
      auto& dist = comp.responses.emplace_back(static_cast<std::size_t>(s.coordinate_outcomes(c)), 0.0);
      dist[assignment[c]] = 1.0;
    }
    components.push_back(std::move(comp));
  }
  return StochasticLocalModel(s, std::move(components));
}

std::vector<DeterministicStrategy> enumerate_deterministic(const Scenario& s) {
  const std::size_t n = s.full_assignment_count();
  if (n > kMaxStrategies)
    throw LimitError("scenario has " + std::to_string(n) + " deterministic strategies, limit is " +
                     std::to_string(kMaxStrategies));
  std::vector<DeterministicStrategy> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(s, s.full_assignment(i));
  return out;
}

Behavior behavior_of_strategy(const DeterministicStrategy& strategy) {
  const Scenario& s = strategy.scenario();
  std::vector<double> table(s.table_size(), 0.0);
  std::vector<int> as(static_cast<std::size_t>(s.parties()));
  for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
    const auto xs = s.joint_setting(js);
    for (int p = 0; p < s.parties(); ++p) as[p] = strategy.outcome(p, xs[p]);
    table[s.offset(js) + s.outcome_tuple_index(js, as)] = 1.0;
  }
  return Behavior(s, std::move(table));
}

StochasticLocalModel model_of_strategy(const DeterministicStrategy& strategy) {
  const Scenario& s = strategy.scenario();
  ModelComponent comp;
  comp.weight = 1.0;
  for (std::size_t c = 0; c < s.coordinate_count(); ++c) {
    auto& dist = comp.responses.emplace_back(static_cast<std::size_t>(s.coordinate_outcomes(c)), 0.0);
    dist[strategy.assignment()[c]] = 1.0;
  }
  return StochasticLocalModel(s, {std::move(comp)});
}

Behavior make_pr_box() {
  const Scenario s = Scenario::uniform(2, 2, 2);
  std::vector<double> table(s.table_size(), 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y)) table[4 * (2 * x + y) + 2 * a + b] = 0.5;
  return Behavior(s, std::move(table));
}

StochasticLocalModel random_model(Rng& rng, const Scenario& s) {
  const int count = rng.uniform_int(1, 8);
  const auto weights = rng.simplex(static_cast<std::size_t>(count));
  std::vector<ModelComponent> components;
  for (int k = 0; k < count; ++k) {
    ModelComponent comp;
    comp.weight = weights[k];
    for (std::size_t c = 0; c < s.coordinate_count(); ++c)
      comp.responses.push_back(rng.simplex(static_cast<std::size_t>(s.coordinate_outcomes(c))));
    components.push_back(std::move(comp));
  }
  return StochasticLocalModel(s, std::move(components));
}

JointDistribution random_joint(Rng& rng, const Scenario& s) {
  const std::size_t n = s.full_assignment_count();
  if (n > kMaxStrategies) throw LimitError("too many full assignments");
  return JointDistribution(s, rng.simplex(n));
}

}  // namespace bell::lhv
