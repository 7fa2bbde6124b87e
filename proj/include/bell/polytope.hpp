#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bell/behavior.hpp"
#include "bell/lhv.hpp"
#include "bell/scenario.hpp"

namespace bell {

// Linear functional on behaviors; coefficients follow the behavior table order.
struct BellFunctional {
  BellFunctional(Scenario scenario, std::vector<double> coefficients, std::string name = {});

  Scenario scenario;
  std::vector<double> coefficients;
  std::string name;
};

double evaluate_functional(const BellFunctional& f, const Behavior& b);

// sum_k weight_k * E(settings_k) written in probability space. Every
// setting named must be binary.
BellFunctional correlator_functional(const Scenario& s, const std::vector<std::pair<std::vector<int>, double>>& terms,
                                     std::string name = {});

// E(0,0) + E(0,1) + E(1,0) - E(1,1) on two parties with two binary settings.
BellFunctional chsh_functional();
// E(XXX) - E(XYY) - E(YXY) - E(YYX) with setting 0 = X and setting 1 = Y.
BellFunctional mermin_functional();

struct ClassicalMaximum {
  double value = 0.0;
  lhv::DeterministicStrategy argmax;
  // Set when every coefficient is an integer; computed in integer arithmetic.
  std::optional<std::int64_t> exact;
};

double strategy_value(const BellFunctional& f, const lhv::DeterministicStrategy& strategy);

// Exact maximum over all deterministic strategies. Ties go to the first
// strategy in canonical order.
ClassicalMaximum maximize_functional_classical(const BellFunctional& f);

struct Certificate {
  BellFunctional functional;
  double value = 0.0;          // on the queried behavior
  double classical_max = 0.0;  // over deterministic strategies
  double margin = 0.0;         // value - classical_max
};

enum class Feasibility { feasible, infeasible };

struct FeasibilityResult {
  Feasibility status = Feasibility::infeasible;
  std::optional<lhv::JointDistribution> joint;  // feasible only
  std::optional<Certificate> certificate;       // infeasible only
  double residual = 0.0;  // L1 distance of the best local reconstruction
};

/**
 * Decides whether a behavior is a mixture of deterministic strategies.
 *
 * Phase 1 of the simplex method looks for weights q(strategy) >= 0 with
 * sum q = 1 reproducing every table entry; the L1 residual must not exceed
 * `tol`. A feasible answer carries the weights as a JointDistribution.
 *
 * An infeasible answer carries a separating Bell functional. The phase-1
 * Farkas multipliers prove infeasibility; the reported functional is then
 * the one that maximizes its value on the behavior among functionals whose
 * values on all deterministic strategies lie in [-2, 2], the range of CHSH.
 * For signalling behaviors that problem is unbounded and the Farkas
 * functional is reported instead, rescaled to the same range.
 *
 * Throws NumericError when the solver result fails its own verification.
 */
FeasibilityResult local_polytope_membership(const Behavior& b, double tol = kDefaultTol);

// Supremum of CHSH over local models whose responses satisfy
// s <= p(outcome|setting, lambda) <= 1 - s, from the corners of the box
// |I| <= 1 - 2s of per-lambda expectations. s must lie in [0, 1/2).
double s_stochastic_max_chsh(double s);

// Same supremum for any functional on a binary scenario, by enumerating the
// corners p(0|x,lambda) in {s, 1 - s} of every response.
double maximize_functional_s_restricted(const BellFunctional& f, double s);

struct GhzReport {
  bool deterministic_consistent = true;
  std::size_t consistent_strategies = 0;
  std::size_t strategies_checked = 0;
  // Product of the four constrained spin products, identical for every
  // +-1 assignment (+1), against the sign the quantum state requires (-1).
  int parity_product = 0;
  int required_parity = 0;
  double mermin_quantum_value = 0.0;
  double mermin_classical_max = 0.0;
  FeasibilityResult lp_status;
};

GhzReport ghz_contradiction_check(double tol = kDefaultTol);

}  // namespace bell
