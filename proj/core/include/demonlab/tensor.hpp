#pragma once

// Composite Hilbert-space bookkeeping for the cold qubit (C), qutrit (M),
// hot qubit (H) and demon memory qubit (D).
//
// Basis ordering: the first subsystem of a layout is the most significant
// digit, so the full-space index of |c m h d> is ((c*3 + m)*2 + h)*2 + d and
// operators compose as kron(C, M, H, D).

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "demonlab/common.hpp"

namespace demonlab {

enum class Subsystem { C, M, H, D };

const char* to_string(Subsystem s) noexcept;

struct SubsystemSlot {
  Subsystem id;
  int dim;
};

class SubsystemLayout {
 public:
  explicit SubsystemLayout(std::vector<SubsystemSlot> slots);

  // C:2, M:3, H:2, D:2 -- dimension 24.
  static SubsystemLayout full();
  // C:2, M:3, H:2 -- the demon-free 12-dim space used for the steady state.
  static SubsystemLayout cold_qutrit_hot();
  // M:3, D:2 -- qubits traced out (Markov-reduced model).
  static SubsystemLayout qutrit_demon();

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(slots_.size()); }
  const std::vector<SubsystemSlot>& slots() const noexcept { return slots_; }

  bool contains(Subsystem s) const noexcept;
  // Position of s in the slot list; throws if absent.
  int position(Subsystem s) const;
  int local_dim(Subsystem s) const;

  // Label tuple (one digit per slot, in slot order) for a basis index.
  std::vector<int> labels(int index) const;
  int index(std::span<const int> labels) const;
  // Digit of subsystem s in basis index.
  int label(int index, Subsystem s) const;

  // Sub-layout keeping the listed subsystems in this layout's order.
  SubsystemLayout subset(std::span<const Subsystem> keep) const;

  std::string describe() const;

  friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b);

 private:
  std::vector<SubsystemSlot> slots_;
  std::vector<int> strides_;
  int dim_ = 1;
};

// Dense operator on a layout.
class Operator {
 public:
  Operator(SubsystemLayout layout, Matrix matrix);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return layout_.dim(); }

  bool is_hermitian(double tol) const;
  // Throws if ||A - A^dag||_max exceeds the policy Hermiticity tolerance.
  const Operator& require_hermitian(const std::string& what) const;

  Operator adjoint() const;

  Operator& operator+=(const Operator& other);
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(cplx s, Operator a);

 private:
  SubsystemLayout layout_;
  Matrix matrix_;
};

struct DensityCheck {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  bool valid = false;
};

// Hermitian, unit-trace, positive semidefinite state.
class DensityMatrix {
 public:
  // Validates against the numerical policy; throws InvalidArgument otherwise.
  DensityMatrix(SubsystemLayout layout, Matrix matrix);

  // Skips validation. For states produced by trusted CPTP maps where the
  // caller validates separately.
  static DensityMatrix unchecked(SubsystemLayout layout, Matrix matrix);

  static DensityMatrix maximally_mixed(const SubsystemLayout& layout);
  static DensityMatrix pure(const SubsystemLayout& layout, const Vector& psi);
  static DensityMatrix basis_state(const SubsystemLayout& layout,
                                   std::span<const int> labels);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return layout_.dim(); }

  DensityCheck check() const;

  double purity() const;

 private:
  DensityMatrix(SubsystemLayout layout, Matrix matrix, bool validate);

  SubsystemLayout layout_;
  Matrix matrix_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

namespace local {
// |a><b| on a d-level system.
Matrix transition(int dim, int a, int b);
Matrix projector(int dim, int a);
Matrix identity(int dim);
// sigma^- = |0><1|, sigma^+ = |1><0|.
Matrix sigma_minus();
Matrix sigma_plus();
}  // namespace local

// identity (x) ... (x) local_op (x) ... (x) identity with local_op at slot.
Operator embed(const Matrix& local_op, Subsystem slot,
               const SubsystemLayout& layout);

// Product of local factors, one per listed subsystem; unlisted subsystems get
// the identity.
Operator embed_product(
    std::initializer_list<std::pair<Subsystem, Matrix>> factors,
    const SubsystemLayout& layout);

Operator identity(const SubsystemLayout& layout);

// kron(a, b) with b's slots appended after a's.
Matrix kron(const Matrix& a, const Matrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const Subsystem> keep);

// Basis permutation taking an operator on `op.layout()` to the same operator
// expressed on `target` (same subsystems, different order).
Operator reorder(const Operator& op, const SubsystemLayout& target);
DensityMatrix reorder(const DensityMatrix& rho, const SubsystemLayout& target);

// tr(op * rho).
cplx expectation(const Operator& op, const DensityMatrix& rho);

}  // namespace demonlab
