#include "bell/polytope.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <string>

#include "bell/errors.hpp"
#include "bell/quantum.hpp"
#include "bell/simplex.hpp"

namespace bell {
namespace {

// Range of vertex values allowed for reported certificates, as for CHSH.
constexpr double kCertificateRange = 2.0;

// Flat table entries a strategy puts probability 1 on, one per joint setting.
std::vector<std::size_t> strategy_entries(const Scenario& s, const std::vector<int>& assignment) {
  std::vector<std::size_t> entries(s.joint_setting_count());
  std::vector<int> as(static_cast<std::size_t>(s.parties()));
  for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
    const auto xs = s.joint_setting(js);
    for (int p = 0; p < s.parties(); ++p) as[p] = assignment[s.coordinate(p, xs[p])];
    entries[js] = s.offset(js) + s.outcome_tuple_index(js, as);
  }
  return entries;
}

std::vector<std::vector<std::size_t>> all_strategy_entries(const Scenario& s) {
  const std::size_t n = s.full_assignment_count();
  if (n > lhv::kMaxStrategies) throw LimitError("too many deterministic strategies");
  std::vector<std::vector<std::size_t>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(strategy_entries(s, s.full_assignment(i)));
  return out;
}

double vertex_value(const std::vector<double>& f, const std::vector<std::size_t>& entries) {
  double v = 0.0;
  for (std::size_t e : entries) v += f[e];
  return v;
}

void check_same_scenario(const Scenario& a, const Scenario& b) {
  if (!(a == b)) throw StructureError("functional and behavior belong to different scenarios");
}

Certificate make_certificate(const Behavior& b, std::vector<double> coefficients) {
  BellFunctional f(b.scenario(), std::move(coefficients), "separating functional");
  Certificate cert{f, evaluate_functional(f, b), maximize_functional_classical(f).value, 0.0};
  cert.margin = cert.value - cert.classical_max;
  return cert;
}

// Among functionals with every vertex value in [-range, range], the one with
// the largest value on the behavior. Empty when that problem is unbounded.
std::optional<std::vector<double>> best_normalized_functional(const Behavior& b,
                                                             const std::vector<std::vector<std::size_t>>& vertices) {
  const std::size_t d = b.scenario().table_size();
  const std::size_t n = vertices.size();
  // Variables: f = u - w (2d), then slacks for the upper (n) and lower (n) bounds.
  lp::LinearProgram prog(2 * n, 2 * d + 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t e : vertices[k]) {
      prog.at(k, e) += 1.0;
      prog.at(k, d + e) -= 1.0;
      prog.at(n + k, e) -= 1.0;
      prog.at(n + k, d + e) += 1.0;
    }
    prog.at(k, 2 * d + k) = 1.0;
    prog.at(n + k, 2 * d + n + k) = 1.0;
    prog.b[k] = kCertificateRange;
    prog.b[n + k] = kCertificateRange;
  }
  for (std::size_t e = 0; e < d; ++e) {
    prog.c[e] = -b.table()[e];
    prog.c[d + e] = b.table()[e];
  }
  const auto sol = lp::solve(prog);
  if (sol.status == lp::Status::unbounded) return std::nullopt;
  if (sol.status != lp::Status::optimal) throw NumericError("certificate normalization problem reported infeasible");
  std::vector<double> f(d);
  for (std::size_t e = 0; e < d; ++e) f[e] = sol.x[e] - sol.x[d + e];
  return f;
}

}  // namespace

BellFunctional::BellFunctional(Scenario scenario_, std::vector<double> coefficients_, std::string name_)
    : scenario(std::move(scenario_)), coefficients(std::move(coefficients_)), name(std::move(name_)) {
  if (coefficients.size() != scenario.table_size())
    throw StructureError("functional has " + std::to_string(coefficients.size()) + " coefficients, scenario needs " +
                         std::to_string(scenario.table_size()));
}

double evaluate_functional(const BellFunctional& f, const Behavior& b) {
  check_same_scenario(f.scenario, b.scenario());
  double v = 0.0;
  for (std::size_t i = 0; i < f.coefficients.size(); ++i) v += f.coefficients[i] * b.table()[i];
  return v;
}

BellFunctional correlator_functional(const Scenario& s, const std::vector<std::pair<std::vector<int>, double>>& terms,
                                     std::string name) {
  std::vector<double> coefficients(s.table_size(), 0.0);
  for (const auto& [settings, weight] : terms) {
    const std::size_t js = s.joint_setting_index(settings);
    for (int p = 0; p < s.parties(); ++p)
      if (s.outcomes(p, settings[p]) != 2) throw UnsupportedSpectrumError("correlator term needs binary settings");
    for (std::size_t t = 0; t < s.outcome_tuple_count(js); ++t) {
      int sign = 1;
      for (int a : s.outcome_tuple(js, t)) sign *= spin_value(a, 2);
      coefficients[s.offset(js) + t] += sign * weight;
    }
  }
  return BellFunctional(s, std::move(coefficients), std::move(name));
}

BellFunctional chsh_functional() {
  return correlator_functional(Scenario::uniform(2, 2, 2),
                               {{{0, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, 1.0}, {{1, 1}, -1.0}}, "CHSH");
}

BellFunctional mermin_functional() {
  return correlator_functional(Scenario::uniform(3, 2, 2),
                               {{{0, 0, 0}, 1.0}, {{0, 1, 1}, -1.0}, {{1, 0, 1}, -1.0}, {{1, 1, 0}, -1.0}},
                               "Mermin");
}

double strategy_value(const BellFunctional& f, const lhv::DeterministicStrategy& strategy) {
  check_same_scenario(f.scenario, strategy.scenario());
  return vertex_value(f.coefficients, strategy_entries(f.scenario, strategy.assignment()));
}

ClassicalMaximum maximize_functional_classical(const BellFunctional& f) {
  const Scenario& s = f.scenario;
  const std::size_t n = s.full_assignment_count();
  if (n > lhv::kMaxStrategies) throw LimitError("too many deterministic strategies");

  const bool integral = std::all_of(f.coefficients.begin(), f.coefficients.end(), [](double c) {
    return std::isfinite(c) && std::abs(c) < 0x1.0p50 && c == std::trunc(c);
  });
  std::vector<std::int64_t> ints;
  if (integral)
    for (double c : f.coefficients) ints.push_back(static_cast<std::int64_t>(c));

  std::size_t best_index = 0;
  double best = -std::numeric_limits<double>::infinity();
  std::int64_t best_int = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < n; ++i) {
    const auto entries = strategy_entries(s, s.full_assignment(i));
    if (integral) {
      std::int64_t v = 0;
      for (std::size_t e : entries) v += ints[e];
      if (v > best_int) {
        best_int = v;
        best_index = i;
      }
    } else {
      const double v = vertex_value(f.coefficients, entries);
      if (v > best) {
        best = v;
        best_index = i;
      }
    }
  }
  ClassicalMaximum out{integral ? static_cast<double>(best_int) : best,
                       lhv::DeterministicStrategy(s, s.full_assignment(best_index)), std::nullopt};
  if (integral) out.exact = best_int;
  return out;
}

FeasibilityResult local_polytope_membership(const Behavior& b, double tol) {
  if (!(tol > 0.0)) throw InvariantError("tolerance must be positive");
  const Scenario& s = b.scenario();
  const auto vertices = all_strategy_entries(s);
  const std::size_t n = vertices.size();
  const std::size_t d = s.table_size();
  if (n > lp::kMaxVariables) throw LimitError("membership LP exceeds the variable limit");

  // Rows: every table entry, then normalization of the weights.
  lp::LinearProgram prog(d + 1, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t e : vertices[k]) prog.at(e, k) = 1.0;
    prog.at(d, k) = 1.0;
  }
  std::copy(b.table().begin(), b.table().end(), prog.b.begin());
  prog.b[d] = 1.0;

  lp::Options options;
  options.feasibility_tol = tol;
  const auto sol = lp::solve(prog, options);

  FeasibilityResult result;
  result.residual = sol.infeasibility;

  if (sol.status == lp::Status::optimal) {
    std::vector<double> q = sol.x;
    double total = 0.0;
    for (auto& v : q) {
      v = std::max(v, 0.0);
      total += v;
    }
    if (!(total > 0.0)) throw NumericError("membership LP returned an empty mixture");
    for (auto& v : q) v /= total;
    lhv::JointDistribution joint(s, std::move(q));
    const Behavior rebuilt = lhv::behavior_from_joint(joint);
    double err = 0.0;
    for (std::size_t e = 0; e < d; ++e) err = std::max(err, std::abs(rebuilt.table()[e] - b.table()[e]));
    if (err > 10.0 * tol) throw NumericError("feasible LP point does not reproduce the behavior");
    result.status = Feasibility::feasible;
    result.joint = std::move(joint);
    return result;
  }
  if (sol.status != lp::Status::infeasible) throw NumericError("membership LP ended in an unexpected state");

  result.status = Feasibility::infeasible;
  std::vector<double> farkas(sol.farkas.begin(), sol.farkas.begin() + static_cast<std::ptrdiff_t>(d));
  {
    // The Farkas functional must itself separate: f.p > max_k f.v_k.
    double vmax = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) vmax = std::max(vmax, vertex_value(farkas, v));
    double value = 0.0;
    for (std::size_t e = 0; e < d; ++e) value += farkas[e] * b.table()[e];
    if (!(value > vmax)) throw NumericError("phase-1 dual does not separate the behavior");
  }

  if (auto best = best_normalized_functional(b, vertices)) {
    Certificate cert = make_certificate(b, std::move(*best));
    if (cert.margin > 0.0) {
      result.certificate = std::move(cert);
      return result;
    }
  }

  double range = 0.0;
  for (const auto& v : vertices) range = std::max(range, std::abs(vertex_value(farkas, v)));
  double scale = kCertificateRange / range;
  if (!(range > 0.0)) {
    double value = 0.0;
    for (std::size_t e = 0; e < d; ++e) value += farkas[e] * b.table()[e];
    scale = 1.0 / value;
  }
  for (auto& c : farkas) c *= scale;
  result.certificate = make_certificate(b, std::move(farkas));
  if (!(result.certificate->margin > 0.0)) throw NumericError("certificate does not separate the behavior");
  return result;
}

double s_stochastic_max_chsh(double s) {
  if (!(s >= 0.0 && s < 0.5)) throw InvariantError("stochasticity s must lie in [0, 1/2)");
  const double bound = 1.0 - 2.0 * s;
  double best = -std::numeric_limits<double>::infinity();
  for (int corner = 0; corner < 16; ++corner) {
    const double ix = (corner & 1) ? -bound : bound;
    const double ix2 = (corner & 2) ? -bound : bound;
    const double iy = (corner & 4) ? -bound : bound;
    const double iy2 = (corner & 8) ? -bound : bound;
    best = std::max(best, ix * iy + ix * iy2 + ix2 * iy - ix2 * iy2);
  }
  return best;
}

double maximize_functional_s_restricted(const BellFunctional& f, double s) {
  if (!(s >= 0.0 && s < 0.5)) throw InvariantError("stochasticity s must lie in [0, 1/2)");
  const Scenario& sc = f.scenario;
  if (!sc.is_binary()) throw UnsupportedSpectrumError("s-restricted maximization needs binary settings");
  const std::size_t coords = sc.coordinate_count();
  if (coords > 24) throw LimitError("too many settings for corner enumeration");

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> p0(coords);
  for (std::size_t corner = 0; corner < (std::size_t{1} << coords); ++corner) {
    for (std::size_t c = 0; c < coords; ++c) p0[c] = (corner >> (coords - 1 - c)) & 1u ? s : 1.0 - s;
    double v = 0.0;
    for (std::size_t js = 0; js < sc.joint_setting_count(); ++js) {
      const auto xs = sc.joint_setting(js);
      for (std::size_t t = 0; t < sc.outcome_tuple_count(js); ++t) {
        const auto as = sc.outcome_tuple(js, t);
        double prob = 1.0;
        for (int p = 0; p < sc.parties(); ++p) {
          const double q = p0[sc.coordinate(p, xs[p])];
          prob *= as[p] == 0 ? q : 1.0 - q;
        }
        v += f.coefficients[sc.offset(js) + t] * prob;
      }
    }
    best = std::max(best, v);
  }
  return best;
}

GhzReport ghz_contradiction_check(double tol) {
  const Scenario s = Scenario::uniform(3, 2, 2);
  // (settings, required spin product): XXX = +1, XYY = YXY = YYX = -1.
  const std::vector<std::pair<std::array<int, 3>, int>> constraints = {
      {{0, 0, 0}, 1}, {{0, 1, 1}, -1}, {{1, 0, 1}, -1}, {{1, 1, 0}, -1}};

  GhzReport report;
  report.required_parity = 1;
  for (const auto& c : constraints) report.required_parity *= c.second;

  std::optional<int> parity;
  const std::size_t n = s.full_assignment_count();
  report.strategies_checked = n;
  for (std::size_t i = 0; i < n; ++i) {
    const lhv::DeterministicStrategy strategy(s, s.full_assignment(i));
    bool ok = true;
    int product = 1;
    for (const auto& [xs, required] : constraints) {
      int spins = 1;
      for (int p = 0; p < 3; ++p) spins *= spin_value(strategy.outcome(p, xs[p]), 2);
      product *= spins;
      ok = ok && spins == required;
    }
    if (ok) ++report.consistent_strategies;
    if (parity && *parity != product) throw NumericError("parity product differs between assignments");
    parity = product;
  }
  report.parity_product = *parity;
  report.deterministic_consistent = report.consistent_strategies > 0;

  const BellFunctional mermin = mermin_functional();
  const Behavior ghz = quantum::behavior_from_quantum(quantum::ghz_state(3), quantum::xy_assignment(3));
  report.mermin_quantum_value = evaluate_functional(mermin, ghz);
  report.mermin_classical_max = maximize_functional_classical(mermin).value;
  report.lp_status = local_polytope_membership(ghz, tol);
  return report;
}

}  // namespace bell
