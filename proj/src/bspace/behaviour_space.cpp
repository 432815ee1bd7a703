#include "divplan/bspace/behaviour_space.hpp"

#include <algorithm>

namespace divplan::bspace {

FeatureDomain FeatureDomain::labels(std::vector<std::string> labels) {
  if (labels.empty()) throw Error("feature domain must not be empty");
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) throw Error("duplicate label in feature domain");
  FeatureDomain d;
  d.items_ = std::move(labels);
  return d;
}

FeatureDomain FeatureDomain::assignments(std::vector<std::string> keys) {
  FeatureDomain d;
  d.assignment_ = true;
  d.items_ = std::move(keys);
  return d;
}

bool FeatureDomain::contains(const FeatureValue& v) const {
  if (assignment_) {
    const auto* bits = std::get_if<std::vector<bool>>(&v);
    return bits && bits->size() == items_.size();
  }
  const auto* label = std::get_if<std::string>(&v);
  return label && std::find(items_.begin(), items_.end(), *label) != items_.end();
}

std::uint64_t FeatureDomain::size() const {
  if (!assignment_) return items_.size();
  if (items_.size() >= 64) return UINT64_MAX;
  return std::uint64_t{1} << items_.size();
}

FeatureValue FeatureDomain::value_at(std::uint64_t index) const {
  if (index >= size()) throw Error("feature value index out of range");
  if (!assignment_) return items_[index];
  std::vector<bool> bits(items_.size());
  for (std::size_t i = 0; i < items_.size() && i < 64; ++i) bits[i] = (index >> i) & 1u;
  return bits;
}

std::string FeatureDomain::describe(const FeatureValue& v) const {
  if (const auto* label = std::get_if<std::string>(&v)) return *label;
  const auto& bits = std::get<std::vector<bool>>(v);
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < bits.size() && i < items_.size(); ++i) {
    if (!bits[i]) continue;
    if (!first) out += ", ";
    out += items_[i];
    first = false;
  }
  return out + "}";
}

const ltl::Formula& TemporalFormula::formula_for(const std::string& label) const {
  for (const auto& [l, f] : per_label)
    if (l == label) return f;
  throw Error("no formula for label '" + label + "'");
}

std::string describe(const std::vector<FeatureDomain>& domains, const Behaviour& b) {
  std::string out = "<";
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    if (i) out += ", ";
    out += i < domains.size() ? domains[i].describe(b.values[i]) : "?";
  }
  return out + ">";
}

CellEnumerator::CellEnumerator(std::vector<FeatureDomain> domains, std::uint64_t cap)
    : domains_(std::move(domains)), digits_(domains_.size(), 0) {
  total_ = 1;
  for (const auto& d : domains_) {
    auto n = d.size();
    if (n == 0) {
      total_ = 0;
      break;
    }
    if (total_ > cap / n) throw SpaceTooLarge("behaviour space exceeds " + std::to_string(cap) + " cells");
    total_ *= n;
  }
  if (total_ > cap) throw SpaceTooLarge("behaviour space exceeds " + std::to_string(cap) + " cells");
}

std::optional<Behaviour> CellEnumerator::next() {
  if (emitted_ >= total_) return std::nullopt;
  Behaviour b;
  for (std::size_t i = 0; i < domains_.size(); ++i) b.values.push_back(domains_[i].value_at(digits_[i]));
  ++emitted_;
  for (std::size_t i = domains_.size(); i-- > 0;) {
    if (++digits_[i] < domains_[i].size()) break;
    digits_[i] = 0;
  }
  return b;
}

Feature<core::PlanTrace> goal_endings_feature(const core::GroundProblem& problem, std::string name) {
  auto keys = problem.goal().fluents();
  if (keys.empty()) throw Error("goal-endings feature needs a goal that mentions fluents");
  std::vector<std::string> names;
  for (auto f : keys) names.push_back(problem.fluent_name(f));
  Feature<core::PlanTrace> f;
  f.name = std::move(name);
  f.domain = FeatureDomain::assignments(std::move(names));
  f.extractor = [keys](const core::PlanTrace& t) -> FeatureValue {
    std::vector<bool> bits(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) bits[i] = t.final_state().test(keys[i]);
    return bits;
  };
  f.expression = GoalAssignment{std::move(keys)};
  return f;
}

}  // namespace divplan::bspace
