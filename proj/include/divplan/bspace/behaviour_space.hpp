#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "divplan/bspace/bins.hpp"
#include "divplan/core/problem.hpp"
#include "divplan/ltl/eval.hpp"

namespace divplan::bspace {

// A categorical label, or a truth assignment aligned with the keys of an
// assignment domain.
using FeatureValue = std::variant<std::string, std::vector<bool>>;

struct Behaviour {
  std::vector<FeatureValue> values;

  friend bool operator==(const Behaviour&, const Behaviour&) = default;
  friend auto operator<=>(const Behaviour&, const Behaviour&) = default;
};

class ExtractorRangeError : public Error {
 public:
  using Error::Error;
};

class SpaceTooLarge : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultCellCap = 1'000'000;

// Finite ordered value set of one dimension. Assignment domains stand for
// the power set of their keys and are never materialised.
class FeatureDomain {
 public:
  static FeatureDomain labels(std::vector<std::string> labels);
  static FeatureDomain assignments(std::vector<std::string> keys);

  bool is_assignment() const { return assignment_; }
  const std::vector<std::string>& items() const { return items_; }

  bool contains(const FeatureValue& v) const;
  // Saturates at UINT64_MAX.
  std::uint64_t size() const;
  // Labels in declaration order; assignments count in binary with key 0 as
  // the least significant bit.
  FeatureValue value_at(std::uint64_t index) const;

  std::string describe(const FeatureValue& v) const;

 private:
  bool assignment_ = false;
  std::vector<std::string> items_;
};

// Goal-fluent assignment expression: the value vector is aligned with keys.
struct GoalAssignment {
  std::vector<core::FluentId> keys;
};

// One temporal formula per domain label.
struct TemporalFormula {
  std::vector<std::pair<std::string, ltl::Formula>> per_label;

  const ltl::Formula& formula_for(const std::string& label) const;
};

using FeatureExpression = std::variant<GoalAssignment, TemporalFormula>;

// Extractors must be free of side effects; the feature may be evaluated
// concurrently from several searches.
template <class Trace>
struct Feature {
  std::string name;
  FeatureDomain domain;
  std::function<FeatureValue(const Trace&)> extractor;
  FeatureExpression expression;
};

template <class Trace>
class BehaviourSpace {
 public:
  BehaviourSpace() = default;
  explicit BehaviourSpace(std::vector<Feature<Trace>> features) : features_(std::move(features)) {
    std::set<std::string> names;
    for (const auto& f : features_)
      if (!names.insert(f.name).second) throw Error("duplicate feature name '" + f.name + "'");
  }

  const std::vector<Feature<Trace>>& features() const { return features_; }
  std::size_t arity() const { return features_.size(); }

  std::vector<FeatureDomain> domains() const {
    std::vector<FeatureDomain> out;
    for (const auto& f : features_) out.push_back(f.domain);
    return out;
  }

  // |BS|, saturating at UINT64_MAX.
  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (const auto& f : features_) {
      auto d = f.domain.size();
      if (d != 0 && n > UINT64_MAX / d) return UINT64_MAX;
      n *= d;
    }
    return n;
  }

 private:
  std::vector<Feature<Trace>> features_;
};

template <class Trace>
Behaviour pbehaviour(const BehaviourSpace<Trace>& space, const Trace& trace) {
  Behaviour b;
  b.values.reserve(space.arity());
  for (const auto& f : space.features()) {
    auto v = f.extractor(trace);
    if (!f.domain.contains(v))
      throw ExtractorRangeError("feature '" + f.name + "' extracted a value outside its domain");
    b.values.push_back(std::move(v));
  }
  return b;
}

template <class Trace>
std::size_t bdc(const BehaviourSpace<Trace>& space, const std::vector<Trace>& traces) {
  std::set<Behaviour> seen;
  for (const auto& t : traces) seen.insert(pbehaviour(space, t));
  return seen.size();
}

std::string describe(const std::vector<FeatureDomain>& domains, const Behaviour& b);

// Mixed-radix walk over the Cartesian product; the last dimension varies
// fastest and each dimension follows its domain's declaration order.
class CellEnumerator {
 public:
  CellEnumerator(std::vector<FeatureDomain> domains, std::uint64_t cap = kDefaultCellCap);

  std::optional<Behaviour> next();
  std::uint64_t total() const { return total_; }

 private:
  std::vector<FeatureDomain> domains_;
  std::vector<std::uint64_t> digits_;
  std::uint64_t total_ = 0;
  std::uint64_t emitted_ = 0;
};

template <class Trace>
CellEnumerator enumerate_cells(const BehaviourSpace<Trace>& space,
                               std::uint64_t cap = kDefaultCellCap) {
  return CellEnumerator(space.domains(), cap);
}

// possible-endings: the true/false pattern of gnd(G) in the final state.
Feature<core::PlanTrace> goal_endings_feature(const core::GroundProblem& problem,
                                              std::string name = "possible-endings");

// Extra label appended to categorical domains for traces whose score is
// undefined when the horizon is reached.
inline const std::string kHorizonReached = "l-reached";

template <class Trace>
Feature<Trace> categorical_score_feature(std::string name,
                                         std::function<double(const Trace&)> score_fn,
                                         BinTable bins, const std::string& prop_suffix) {
  auto labels = bins.labels();
  TemporalFormula expr;
  std::vector<ltl::Formula> bin_props;
  for (const auto& l : labels) {
    auto prop = ltl::make_atom(l + prop_suffix);
    bin_props.push_back(prop);
    expr.per_label.emplace_back(l, ltl::make_eventually(ltl::make_always(prop)));
  }
  // Horizon reached with no bin holding.
  auto no_bin = ltl::make_not(ltl::make_or(bin_props));
  expr.per_label.emplace_back(
      kHorizonReached,
      ltl::make_eventually(ltl::make_always(ltl::make_and({ltl::make_atom(kHorizonReached), no_bin}))));
  labels.push_back(kHorizonReached);
  Feature<Trace> f;
  f.name = std::move(name);
  f.domain = FeatureDomain::labels(labels);
  f.extractor = [score_fn = std::move(score_fn), bins = std::move(bins)](const Trace& t) -> FeatureValue {
    double s = score_fn(t);
    if (std::isnan(s)) return kHorizonReached;
    return bins.classify(s);
  };
  f.expression = std::move(expr);
  return f;
}

// Feature whose value is the first label whose formula holds on the trace's
// proposition sequence. `props` maps a trace to that sequence.
template <class Trace>
Feature<Trace> ltl_feature(std::string name,
                           std::vector<std::pair<std::string, ltl::Formula>> per_label,
                           ltl::Alphabet alphabet,
                           std::function<const ltl::PropTrace&(const Trace&)> props) {
  std::vector<std::string> labels;
  for (const auto& [label, formula] : per_label) {
    ltl::check_atoms(formula, alphabet);
    labels.push_back(label);
  }
  Feature<Trace> f;
  f.name = name;
  f.domain = FeatureDomain::labels(labels);
  f.extractor = [name, per_label, alphabet = std::move(alphabet),
                 props = std::move(props)](const Trace& t) -> FeatureValue {
    const auto& pt = props(t);
    for (const auto& [label, formula] : per_label)
      if (ltl::eval_finite(formula, alphabet, pt)) return label;
    throw ExtractorRangeError("no value of feature '" + name + "' holds on the trace");
  };
  f.expression = TemporalFormula{std::move(per_label)};
  return f;
}

}  // namespace divplan::bspace
