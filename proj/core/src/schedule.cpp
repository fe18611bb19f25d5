#include "demonlab/schedule.hpp"

#include <cmath>
#include <sstream>

namespace demonlab {

void PulseSegment::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    std::ostringstream os;
    os << "segment '" << label << "': duration must be > 0 (got " << duration
       << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  const int nonzero = (controls.A_YM != 0.0) + (controls.A_YD != 0.0) +
                      (controls.A_CZ != 0.0);
  if (nonzero > 1) {
    throw Error(ErrorKind::InvalidArgument,
                "segment '" + label + "': more than one control amplitude is on");
  }
}

double Schedule::duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

void Schedule::validate() const {
  if (segments.empty()) {
    throw Error(ErrorKind::InvalidArgument, "schedule: no segments");
  }
  for (const auto& s : segments) s.validate();
}

}  // namespace demonlab
