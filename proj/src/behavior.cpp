#include "bell/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "bell/errors.hpp"

namespace bell {

Behavior::Behavior(Scenario scenario, std::vector<double> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  if (table_.size() != scenario_.table_size())
    throw StructureError("behavior table has " + std::to_string(table_.size()) + " entries, scenario needs " +
                         std::to_string(scenario_.table_size()));
}

double Behavior::at(std::size_t joint_setting, std::size_t outcome_tuple) const {
  if (outcome_tuple >= scenario_.outcome_tuple_count(joint_setting))
    throw StructureError("outcome tuple index out of range");
  return table_[scenario_.offset(joint_setting) + outcome_tuple];
}

double Behavior::at(std::span<const int> settings, std::span<const int> outcomes) const {
  const std::size_t js = scenario_.joint_setting_index(settings);
  return table_[scenario_.offset(js) + scenario_.outcome_tuple_index(js, outcomes)];
}

Behavior uniform_behavior(const Scenario& scenario) {
  std::vector<double> table(scenario.table_size());
  for (std::size_t js = 0; js < scenario.joint_setting_count(); ++js) {
    const std::size_t n = scenario.outcome_tuple_count(js);
    std::fill_n(table.begin() + static_cast<std::ptrdiff_t>(scenario.offset(js)), n, 1.0 / static_cast<double>(n));
  }
  return Behavior(scenario, std::move(table));
}

ValidationReport validate_behavior(const Behavior& b, double tol) {
  const Scenario& s = b.scenario();
  const auto table = b.table();
  ValidationReport report;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double v = table[i];
    if (!std::isfinite(v)) {
      report.max_negativity = std::numeric_limits<double>::infinity();
      report.offending_indices.push_back(i);
    } else if (v < 0.0) {
      report.max_negativity = std::max(report.max_negativity, -v);
      if (-v > tol) report.offending_indices.push_back(i);
    }
  }
  for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
    const std::size_t begin = s.offset(js);
    double sum = 0.0;
    for (std::size_t t = 0; t < s.outcome_tuple_count(js); ++t) sum += table[begin + t];
    const double err = std::isfinite(sum) ? std::abs(sum - 1.0) : std::numeric_limits<double>::infinity();
    report.max_normalization_error = std::max(report.max_normalization_error, err);
    if (err > tol) report.offending_indices.push_back(begin);
  }
  report.is_valid = report.max_negativity <= tol && report.max_normalization_error <= tol;
  return report;
}

namespace {

// Marginal over the parties in `mask` (bit p set = party p kept), returned in
// lexicographic order of the kept parties' outcomes.
std::vector<double> subset_marginal(const Behavior& b, unsigned mask, std::size_t js) {
  const Scenario& s = b.scenario();
  const auto xs = s.joint_setting(js);
  std::vector<int> kept;
  for (int p = 0; p < s.parties(); ++p)
    if (mask & (1u << p)) kept.push_back(p);

  std::size_t size = 1;
  for (int p : kept) size *= static_cast<std::size_t>(s.outcomes(p, xs[p]));
  std::vector<double> out(size, 0.0);

  const std::size_t begin = s.offset(js);
  const std::size_t n = s.outcome_tuple_count(js);
  for (std::size_t t = 0; t < n; ++t) {
    const auto as = s.outcome_tuple(js, t);
    std::size_t k = 0;
    for (int p : kept) k = k * static_cast<std::size_t>(s.outcomes(p, xs[p])) + static_cast<std::size_t>(as[p]);
    out[k] += b.table()[begin + t];
  }
  return out;
}

}  // namespace

std::vector<double> marginal(const Behavior& b, int party, std::size_t joint_setting) {
  b.scenario().settings(party);  // range check
  if (joint_setting >= b.scenario().joint_setting_count()) throw StructureError("joint setting index out of range");
  return subset_marginal(b, 1u << party, joint_setting);
}

NoSignallingReport no_signalling_check(const Behavior& b, double tol) {
  const Scenario& s = b.scenario();
  const int n = s.parties();
  if (n > 16) throw LimitError("no-signalling check supports at most 16 parties");
  NoSignallingReport report;
  const unsigned full = (1u << n) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    // Group joint settings by the settings of the kept parties.
    std::map<std::vector<int>, std::vector<std::size_t>> groups;
    for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
      const auto xs = s.joint_setting(js);
      std::vector<int> key;
      for (int p = 0; p < n; ++p)
        if (mask & (1u << p)) key.push_back(xs[p]);
      groups[key].push_back(js);
    }
    for (const auto& [key, members] : groups) {
      std::vector<std::vector<double>> margins;
      margins.reserve(members.size());
      for (std::size_t js : members) margins.push_back(subset_marginal(b, mask, js));
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          double dev = 0.0;
          for (std::size_t k = 0; k < margins[i].size(); ++k)
            dev = std::max(dev, std::abs(margins[i][k] - margins[j][k]));
          if (dev > report.max_deviation) {
            report.max_deviation = dev;
            SignallingWitness w;
            for (int p = 0; p < n; ++p)
              if (mask & (1u << p)) w.parties.push_back(p);
            w.joint_setting_a = members[i];
            w.joint_setting_b = members[j];
            report.witness = std::move(w);
          }
        }
      }
    }
  }
  report.passes = report.max_deviation <= tol;
  if (report.passes) report.witness.reset();
  return report;
}

double correlator(const Behavior& b, std::size_t joint_setting) {
  const Scenario& s = b.scenario();
  const auto xs = s.joint_setting(joint_setting);
  for (int p = 0; p < s.parties(); ++p)
    if (s.outcomes(p, xs[p]) != 2)
      throw UnsupportedSpectrumError("correlator needs two outcomes for every measured setting");
  const std::size_t begin = s.offset(joint_setting);
  double e = 0.0;
  for (std::size_t t = 0; t < s.outcome_tuple_count(joint_setting); ++t) {
    const auto as = s.outcome_tuple(joint_setting, t);
    int sign = 1;
    for (int a : as) sign *= spin_value(a, 2);
    e += sign * b.table()[begin + t];
  }
  return e;
}

bool is_product_behavior(const Behavior& b, double tol) {
  const Scenario& s = b.scenario();
  for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
    std::vector<std::vector<double>> margins;
    for (int p = 0; p < s.parties(); ++p) margins.push_back(subset_marginal(b, 1u << p, js));
    const std::size_t begin = s.offset(js);
    for (std::size_t t = 0; t < s.outcome_tuple_count(js); ++t) {
      const auto as = s.outcome_tuple(js, t);
      double product = 1.0;
      for (int p = 0; p < s.parties(); ++p) product *= margins[p][as[p]];
      if (std::abs(product - b.table()[begin + t]) > tol) return false;
    }
  }
  return true;
}

}  // namespace bell
