#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace demonlab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind {
  InvalidArgument,    // bad parameter or precondition violation
  DimensionMismatch,  // operator / layout sizes disagree
  Degenerate,         // non-unique steady state or fixed point
  NonConvergence,     // numerical procedure did not converge
};

// All library failures are reported as demonlab::Error. The kind drives the
// CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

// Single process-wide record of numerical tolerances. Read it with
// numerical_policy(); override once at startup with set_numerical_policy().
struct NumericalPolicy {
  double trace_tol = 1e-10;
  double hermitian_tol = 1e-12;
  double positivity_tol = 1e-10;
  double choi_tol = 1e-8;
  // Relative singular-value threshold deciding null-space dimension.
  double nullspace_tol = 1e-10;
  // Reciprocal condition bound below which a fixed-point solve is degenerate.
  double degenerate_rcond = 1e-13;
  // Limit-cycle X vs repeated-propagation X discrepancy flag.
  double convergence_tol = 1e-4;
};

NumericalPolicy numerical_policy();
void set_numerical_policy(const NumericalPolicy& policy);

}  // namespace demonlab
