#pragma once

#include <optional>

namespace divplan::fbi {

// Inconclusive means the generator gave up on a budget; it must never be
// read as "nothing left".
enum class GenStatus { Found, Exhausted, Inconclusive };

const char* to_string(GenStatus s);

template <class Trace>
struct GenResult {
  GenStatus status = GenStatus::Exhausted;
  std::optional<Trace> trace;

  static GenResult found(Trace t) { return {GenStatus::Found, std::move(t)}; }
  static GenResult exhausted() { return {GenStatus::Exhausted, std::nullopt}; }
  static GenResult inconclusive() { return {GenStatus::Inconclusive, std::nullopt}; }
};

}  // namespace divplan::fbi
