#include "demonlab/common.hpp"

#include <mutex>

namespace demonlab {

namespace {
std::mutex policy_mutex;
NumericalPolicy global_policy;
}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
      return "invalid_argument";
    case ErrorKind::DimensionMismatch:
      return "dimension_mismatch";
    case ErrorKind::Degenerate:
      return "degenerate";
    case ErrorKind::NonConvergence:
      return "non_convergence";
  }
  return "unknown";
}

NumericalPolicy numerical_policy() {
  std::lock_guard lock(policy_mutex);
  return global_policy;
}

void set_numerical_policy(const NumericalPolicy& policy) {
  std::lock_guard lock(policy_mutex);
  global_policy = policy;
}

}  // namespace demonlab
