#pragma once

#include <cstddef>
#include <vector>

#include "bell/behavior.hpp"
#include "bell/random.hpp"
#include "bell/scenario.hpp"

// Local hidden-variable models with a finite hidden-variable space.
namespace bell::lhv {

// One outcome per (party, setting), indexed by scenario coordinate.
class DeterministicStrategy {
 public:
  DeterministicStrategy(Scenario scenario, std::vector<int> assignment);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<int>& assignment() const { return assignment_; }
  int outcome(int party, int setting) const;
  // Position in enumerate_deterministic order.
  std::size_t index() const { return scenario_.full_assignment_index(assignment_); }

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;

 private:
  Scenario scenario_;
  std::vector<int> assignment_;
};

// Response distributions of one hidden-variable value:
// responses[coordinate][outcome] = p(outcome | setting, lambda).
struct ModelComponent {
  double weight = 0.0;
  std::vector<std::vector<double>> responses;
};

class StochasticLocalModel {
 public:
  StochasticLocalModel(Scenario scenario, std::vector<ModelComponent> components);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<ModelComponent>& components() const { return components_; }
  double response(std::size_t component, int party, int setting, int outcome) const;

 private:
  Scenario scenario_;
  std::vector<ModelComponent> components_;
};

// Probability of every full assignment, in canonical full-assignment order.
class JointDistribution {
 public:
  JointDistribution(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<double>& table() const { return table_; }

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

// p(a|x) = sum_lambda w(lambda) prod_p p(a_p | x_p, lambda)
Behavior behavior_from_model(const StochasticLocalModel& m);

// p(full assignment) = sum_lambda w(lambda) prod_{(p,x)} p(assigned outcome | x, lambda)
JointDistribution joint_from_model(const StochasticLocalModel& m);

// Marginalizes the joint over the coordinates not measured at each joint setting.
Behavior behavior_from_joint(const JointDistribution& j);

// One deterministic component per full assignment of nonzero probability.
StochasticLocalModel model_from_joint(const JointDistribution& j);

inline constexpr std::size_t kMaxStrategies = 10'000'000;

// All deterministic strategies in canonical order. Throws LimitError above
// kMaxStrategies.
std::vector<DeterministicStrategy> enumerate_deterministic(const Scenario& s);

Behavior behavior_of_strategy(const DeterministicStrategy& strategy);
StochasticLocalModel model_of_strategy(const DeterministicStrategy& strategy);

// Two parties, two binary settings: p(a,b|x,y) = 1/2 if a xor b = x*y.
Behavior make_pr_box();

// 1 to 8 components, flat simplex weights and responses.
StochasticLocalModel random_model(Rng& rng, const Scenario& s);
// Flat simplex sample over all full assignments.
JointDistribution random_joint(Rng& rng, const Scenario& s);

}  // namespace bell::lhv
