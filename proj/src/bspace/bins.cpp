#include "divplan/bspace/bins.hpp"

#include <algorithm>
#include <cmath>

namespace divplan::bspace {

BinTable::BinTable(std::vector<Bin> bins) : bins_(std::move(bins)) {
  if (bins_.empty()) throw BinGap("bin table is empty");
  for (const auto& b : bins_) {
    if (!(b.lo <= b.hi) || (b.lo == b.hi && !(b.lo_closed && b.hi_closed)))
      throw BinGap("bin '" + b.label + "' is empty");
  }
  std::vector<Bin> sorted = bins_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Bin& a, const Bin& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      if (sorted[i].label == sorted[j].label) throw BinOverlap("duplicate bin label '" + sorted[i].label + "'");
  if (sorted.front().lo > 0.0 || (sorted.front().lo == 0.0 && !sorted.front().lo_closed))
    throw BinGap("bins do not cover 0");
  if (sorted.front().lo < 0.0) throw BinOverlap("bin '" + sorted.front().label + "' extends below 0");
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const auto& a = sorted[i];
    const auto& b = sorted[i + 1];
    if (a.hi < b.lo || (a.hi == b.lo && !a.hi_closed && !b.lo_closed))
      throw BinGap("gap between '" + a.label + "' and '" + b.label + "'");
    if (a.hi > b.lo || (a.hi == b.lo && a.hi_closed && b.lo_closed))
      throw BinOverlap("'" + a.label + "' overlaps '" + b.label + "'");
  }
  const auto& last = sorted.back();
  if (last.hi < 100.0 || (last.hi == 100.0 && !last.hi_closed)) throw BinGap("bins do not cover 100");
  if (last.hi > 100.0) throw BinOverlap("bin '" + last.label + "' extends above 100");
}

BinTable BinTable::standard() {
  return BinTable({{"VL", 0, 20, true, true},
                   {"L", 20, 30, false, true},
                   {"M", 30, 50, false, true},
                   {"H", 50, 70, false, true},
                   {"VH", 70, 90, false, true},
                   {"ID", 90, 100, false, true}});
}

const std::string& BinTable::classify(double score) const {
  for (const auto& b : bins_) {
    bool above = b.lo_closed ? score >= b.lo : score > b.lo;
    bool below = b.hi_closed ? score <= b.hi : score < b.hi;
    if (above && below) return b.label;
  }
  throw Error("score " + std::to_string(score) + " lies outside [0, 100]");
}

const Bin& BinTable::bin(const std::string& label) const {
  for (const auto& b : bins_)
    if (b.label == label) return b;
  throw Error("unknown bin '" + label + "'");
}

std::vector<std::string> BinTable::labels() const {
  std::vector<std::string> out;
  for (const auto& b : bins_) out.push_back(b.label);
  return out;
}

}  // namespace divplan::bspace
