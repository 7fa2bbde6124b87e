#include "bell/scenario.hpp"

#include <limits>
#include <string>

#include "bell/errors.hpp"

namespace bell {
namespace {

constexpr std::size_t kMaxTableSize = std::size_t{1} << 28;

// a * b, or 0 when the product leaves the representable range.
std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return 0;
  return a * b;
}

}  // namespace

Scenario::Scenario(std::vector<std::vector<int>> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvariantError("scenario needs at least one party");
  coordinate_base_.push_back(0);
  joint_setting_count_ = 1;
  for (std::size_t p = 0; p < outcomes_.size(); ++p) {
    if (outcomes_[p].empty())
      throw InvariantError("party " + std::to_string(p) + " has no settings");
    for (int k : outcomes_[p]) {
      if (k < 2) throw InvariantError("party " + std::to_string(p) + " has a setting with fewer than 2 outcomes");
      coordinate_outcomes_.push_back(k);
    }
    coordinate_base_.push_back(coordinate_base_.back() + outcomes_[p].size());
    joint_setting_count_ = checked_mul(joint_setting_count_, outcomes_[p].size());
    if (joint_setting_count_ == 0 || joint_setting_count_ > kMaxTableSize)
      throw LimitError("too many joint settings");
  }

  offsets_.reserve(joint_setting_count_ + 1);
  offsets_.push_back(0);
  for (std::size_t js = 0; js < joint_setting_count_; ++js) {
    const std::size_t next = offsets_.back() + outcome_tuple_count(js);
    if (next > kMaxTableSize) throw LimitError("behavior table too large");
    offsets_.push_back(next);
  }
  table_size_ = offsets_.back();
}

Scenario Scenario::uniform(int parties, int settings, int outcomes) {
  if (parties < 1 || settings < 1) throw InvariantError("scenario needs parties >= 1 and settings >= 1");
  return Scenario(std::vector<std::vector<int>>(parties, std::vector<int>(settings, outcomes)));
}

void Scenario::check_party(int party) const {
  if (party < 0 || party >= parties())
    throw StructureError("party index " + std::to_string(party) + " out of range");
}

void Scenario::check_joint_setting(std::size_t js) const {
  if (js >= joint_setting_count_)
    throw StructureError("joint setting index " + std::to_string(js) + " out of range");
}

int Scenario::settings(int party) const {
  check_party(party);
  return static_cast<int>(outcomes_[party].size());
}

int Scenario::outcomes(int party, int setting) const {
  check_party(party);
  if (setting < 0 || setting >= settings(party))
    throw StructureError("setting index " + std::to_string(setting) + " out of range for party " +
                         std::to_string(party));
  return outcomes_[party][setting];
}

std::vector<int> Scenario::joint_setting(std::size_t index) const {
  check_joint_setting(index);
  std::vector<int> xs(outcomes_.size());
  for (std::size_t p = outcomes_.size(); p-- > 0;) {
    const std::size_t radix = outcomes_[p].size();
    xs[p] = static_cast<int>(index % radix);
    index /= radix;
  }
  return xs;
}

std::size_t Scenario::joint_setting_index(std::span<const int> settings) const {
  if (settings.size() != outcomes_.size()) throw StructureError("joint setting has wrong length");
  std::size_t index = 0;
  for (std::size_t p = 0; p < outcomes_.size(); ++p) {
    const int x = settings[p];
    if (x < 0 || static_cast<std::size_t>(x) >= outcomes_[p].size())
      throw StructureError("setting index out of range in joint setting");
    index = index * outcomes_[p].size() + static_cast<std::size_t>(x);
  }
  return index;
}

std::size_t Scenario::outcome_tuple_count(std::size_t joint_setting) const {
  const auto xs = this->joint_setting(joint_setting);
  std::size_t count = 1;
  for (std::size_t p = 0; p < xs.size(); ++p) {
    count = checked_mul(count, static_cast<std::size_t>(outcomes_[p][xs[p]]));
    if (count == 0 || count > kMaxTableSize) throw LimitError("too many outcome tuples");
  }
  return count;
}

std::vector<int> Scenario::outcome_tuple(std::size_t joint_setting, std::size_t index) const {
  const auto xs = this->joint_setting(joint_setting);
  if (index >= offsets_[joint_setting + 1] - offsets_[joint_setting])
    throw StructureError("outcome tuple index out of range");
  std::vector<int> as(xs.size());
  for (std::size_t p = xs.size(); p-- > 0;) {
    const auto radix = static_cast<std::size_t>(outcomes_[p][xs[p]]);
    as[p] = static_cast<int>(index % radix);
    index /= radix;
  }
  return as;
}

std::size_t Scenario::outcome_tuple_index(std::size_t joint_setting, std::span<const int> outcomes) const {
  const auto xs = this->joint_setting(joint_setting);
  if (outcomes.size() != xs.size()) throw StructureError("outcome tuple has wrong length");
  std::size_t index = 0;
  for (std::size_t p = 0; p < xs.size(); ++p) {
    const int k = outcomes_[p][xs[p]];
    if (outcomes[p] < 0 || outcomes[p] >= k) throw StructureError("outcome out of range in outcome tuple");
    index = index * static_cast<std::size_t>(k) + static_cast<std::size_t>(outcomes[p]);
  }
  return index;
}

std::size_t Scenario::offset(std::size_t joint_setting) const {
  check_joint_setting(joint_setting);
  return offsets_[joint_setting];
}

std::size_t Scenario::coordinate(int party, int setting) const {
  outcomes(party, setting);  // range check
  return coordinate_base_[party] + static_cast<std::size_t>(setting);
}

std::size_t Scenario::full_assignment_count() const {
  std::size_t count = 1;
  for (int k : coordinate_outcomes_) {
    count = checked_mul(count, static_cast<std::size_t>(k));
    if (count == 0) throw LimitError("number of full assignments is not representable");
  }
  return count;
}

std::vector<int> Scenario::full_assignment(std::size_t index) const {
  if (index >= full_assignment_count()) throw StructureError("full assignment index out of range");
  std::vector<int> assignment(coordinate_outcomes_.size());
  for (std::size_t c = coordinate_outcomes_.size(); c-- > 0;) {
    const auto radix = static_cast<std::size_t>(coordinate_outcomes_[c]);
    assignment[c] = static_cast<int>(index % radix);
    index /= radix;
  }
  return assignment;
}

std::size_t Scenario::full_assignment_index(std::span<const int> assignment) const {
  if (assignment.size() != coordinate_outcomes_.size()) throw StructureError("full assignment has wrong length");
  std::size_t index = 0;
  for (std::size_t c = 0; c < assignment.size(); ++c) {
    if (assignment[c] < 0 || assignment[c] >= coordinate_outcomes_[c])
      throw StructureError("outcome out of range in full assignment");
    index = index * static_cast<std::size_t>(coordinate_outcomes_[c]) + static_cast<std::size_t>(assignment[c]);
  }
  return index;
}

bool Scenario::is_binary() const {
  for (int k : coordinate_outcomes_)
    if (k != 2) return false;
  return true;
}

int spin_value(int outcome, int outcome_count) {
  if (outcome_count != 2) throw UnsupportedSpectrumError("spin value needs a two-outcome setting");
  if (outcome == 0) return 1;
  if (outcome == 1) return -1;
  throw StructureError("outcome out of range for a two-outcome setting");
}

}  // namespace bell
