#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace bell {

// Version tag of the flat index convention below. Printed in every report.
inline constexpr std::string_view kCanonicalOrderVersion = "bell-canonical-order/1";

inline constexpr double kDefaultTol = 1e-9;

/**
 * Index space of a Bell experiment: a number of parties, each with a number
 * of measurement settings, each setting with a number of outcomes.
 *
 * Canonical order (shared by every table in the library):
 *  - joint settings (x_0, ..., x_{n-1}) are enumerated lexicographically with
 *    party 0 most significant;
 *  - for a fixed joint setting, outcome tuples (a_0, ..., a_{n-1}) are
 *    enumerated the same way, with radices outcomes(p, x_p);
 *  - a Behavior table is the concatenation of the outcome blocks of all
 *    joint settings in joint-setting order.
 *  - "coordinates" are the (party, setting) pairs in party-major order; a
 *    full assignment gives one outcome per coordinate and full assignments
 *    are enumerated lexicographically with coordinate 0 most significant.
 *
 * For two parties with two binary settings each, entry p(a,b|x,y) sits at
 * 4*(2x + y) + 2a + b, and the full assignment (A_0, A_1, B_0, B_1) has index
 * 8*A_0 + 4*A_1 + 2*B_0 + B_1.
 */
class Scenario {
 public:
  // outcomes[party][setting] = number of outcomes of that measurement.
  explicit Scenario(std::vector<std::vector<int>> outcomes);

  // Every party gets `settings` settings with `outcomes` outcomes each.
  static Scenario uniform(int parties, int settings, int outcomes);

  int parties() const { return static_cast<int>(outcomes_.size()); }
  int settings(int party) const;
  int outcomes(int party, int setting) const;
  const std::vector<std::vector<int>>& outcome_counts() const { return outcomes_; }

  std::size_t joint_setting_count() const { return joint_setting_count_; }
  std::vector<int> joint_setting(std::size_t index) const;
  std::size_t joint_setting_index(std::span<const int> settings) const;

  std::size_t outcome_tuple_count(std::size_t joint_setting) const;
  std::vector<int> outcome_tuple(std::size_t joint_setting, std::size_t index) const;
  std::size_t outcome_tuple_index(std::size_t joint_setting, std::span<const int> outcomes) const;

  // Position of the first entry of a joint setting's block in the flat table.
  std::size_t offset(std::size_t joint_setting) const;
  std::size_t table_size() const { return table_size_; }

  std::size_t coordinate_count() const { return coordinate_base_.back(); }
  std::size_t coordinate(int party, int setting) const;
  int coordinate_outcomes(std::size_t coordinate) const { return coordinate_outcomes_.at(coordinate); }

  // Number of full assignments (= deterministic strategies). Throws
  // LimitError when it does not fit the representable range.
  std::size_t full_assignment_count() const;
  std::vector<int> full_assignment(std::size_t index) const;
  std::size_t full_assignment_index(std::span<const int> assignment) const;

  // True when every setting of every party has exactly two outcomes.
  bool is_binary() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  void check_party(int party) const;
  void check_joint_setting(std::size_t js) const;

  std::vector<std::vector<int>> outcomes_;
  std::vector<std::size_t> coordinate_base_;
  std::vector<int> coordinate_outcomes_;
  std::size_t joint_setting_count_ = 0;
  std::vector<std::size_t> offsets_;
  std::size_t table_size_ = 0;
};

// ±1 view of a binary outcome: 0 -> +1, 1 -> -1.
int spin_value(int outcome, int outcome_count);

}  // namespace bell
