#pragma once

#include <string>
#include <vector>

#include "demonlab/model.hpp"

namespace demonlab {

// Piecewise-constant control interval. Bath dissipators C and H are always
// on; the memory dump is switched by `demon_dump`.
struct PulseSegment {
  double duration = 0.0;  // 1/J
  Controls controls;
  bool demon_dump = false;
  std::string label;

  // duration > 0 and at most one nonzero amplitude.
  void validate() const;
  DissipatorSet dissipators() const { return {true, true, demon_dump}; }
};

struct Schedule {
  std::vector<PulseSegment> segments;
  double t1 = 0.0;  // end of the record step
  double t2 = 0.0;  // end of the act step

  double duration() const;
  void validate() const;
};

}  // namespace demonlab
