#pragma once

#include <string>
#include <vector>

#include "divplan/error.hpp"

namespace divplan::bspace {

class BinGap : public Error {
 public:
  using Error::Error;
};

class BinOverlap : public Error {
 public:
  using Error::Error;
};

struct Bin {
  std::string label;
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = true;
};

// Labelled intervals that partition [0, 100] exactly.
class BinTable {
 public:
  explicit BinTable(std::vector<Bin> bins);

  // VL [0,20], L (20,30], M (30,50], H (50,70], VH (70,90], ID (90,100].
  static BinTable standard();

  const std::string& classify(double score) const;
  const Bin& bin(const std::string& label) const;
  std::vector<std::string> labels() const;
  const std::vector<Bin>& bins() const { return bins_; }

 private:
  std::vector<Bin> bins_;
};

}  // namespace divplan::bspace
