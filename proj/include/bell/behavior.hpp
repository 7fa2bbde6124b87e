#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bell/scenario.hpp"

namespace bell {

// Conditional probability table p(outcomes | settings) in canonical order.
// Construction only checks the shape; use validate_behavior for the
// probabilistic invariants.
class Behavior {
 public:
  Behavior(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  std::span<const double> table() const { return table_; }

  double at(std::size_t joint_setting, std::size_t outcome_tuple) const;
  double at(std::span<const int> settings, std::span<const int> outcomes) const;

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

Behavior uniform_behavior(const Scenario& scenario);

struct ValidationReport {
  bool is_valid = false;
  double max_negativity = 0.0;
  double max_normalization_error = 0.0;
  // Flat indices of negative entries, then first entries of badly
  // normalized joint-setting blocks.
  std::vector<std::size_t> offending_indices;
};

ValidationReport validate_behavior(const Behavior& b, double tol = kDefaultTol);

// Distribution of one party's outcomes at the given joint setting.
std::vector<double> marginal(const Behavior& b, int party, std::size_t joint_setting);

struct SignallingWitness {
  std::vector<int> parties;  // the marginal that moved
  std::size_t joint_setting_a = 0;
  std::size_t joint_setting_b = 0;
};

struct NoSignallingReport {
  bool passes = true;
  double max_deviation = 0.0;
  std::optional<SignallingWitness> witness;
};

// Checks that the marginal of every proper subset of parties is independent
// of the settings of the remaining parties. For two parties this is the usual
// per-party condition.
NoSignallingReport no_signalling_check(const Behavior& b, double tol = kDefaultTol);

// Full correlator: sum over outcome tuples of (product of spins) * p.
double correlator(const Behavior& b, std::size_t joint_setting);

bool is_product_behavior(const Behavior& b, double tol = kDefaultTol);

}  // namespace bell
