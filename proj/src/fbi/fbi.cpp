#include "divplan/fbi/fbi.hpp"

namespace divplan::fbi {

const char* to_string(GenStatus s) {
  switch (s) {
    case GenStatus::Found: return "found";
    case GenStatus::Exhausted: return "exhausted";
    case GenStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ReachedK: return "reached-k";
    case Termination::Exhausted: return "behaviours-exhausted-then-plans-exhausted";
    case Termination::InconclusiveBudget: return "inconclusive-budget";
  }
  return "?";
}

}  // namespace divplan::fbi
