#include "demonlab/tensor.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace demonlab {

const char* to_string(Subsystem s) noexcept {
  switch (s) {
    case Subsystem::C:
      return "C";
    case Subsystem::M:
      return "M";
    case Subsystem::H:
      return "H";
    case Subsystem::D:
      return "D";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<SubsystemSlot> slots)
    : slots_(std::move(slots)) {
  if (slots_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "layout: no subsystems");
  }
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].dim < 1) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("layout: subsystem ") + to_string(slots_[i].id) +
                      " has non-positive dimension");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (slots_[j].id == slots_[i].id) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string("layout: duplicate subsystem ") +
                        to_string(slots_[i].id));
      }
    }
  }
  strides_.assign(slots_.size(), 1);
  dim_ = 1;
  for (int i = static_cast<int>(slots_.size()) - 1; i >= 0; --i) {
    strides_[i] = dim_;
    dim_ *= slots_[i].dim;
  }
}

SubsystemLayout SubsystemLayout::full() {
  return SubsystemLayout({{Subsystem::C, 2},
                          {Subsystem::M, 3},
                          {Subsystem::H, 2},
                          {Subsystem::D, 2}});
}

SubsystemLayout SubsystemLayout::cold_qutrit_hot() {
  return SubsystemLayout(
      {{Subsystem::C, 2}, {Subsystem::M, 3}, {Subsystem::H, 2}});
}

SubsystemLayout SubsystemLayout::qutrit_demon() {
  return SubsystemLayout({{Subsystem::M, 3}, {Subsystem::D, 2}});
}

bool SubsystemLayout::contains(Subsystem s) const noexcept {
  return std::any_of(slots_.begin(), slots_.end(),
                     [s](const SubsystemSlot& slot) { return slot.id == s; });
}

int SubsystemLayout::position(Subsystem s) const {
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].id == s) return static_cast<int>(i);
  }
  throw Error(ErrorKind::InvalidArgument,
              std::string("layout ") + describe() + " has no subsystem " +
                  to_string(s));
}

int SubsystemLayout::local_dim(Subsystem s) const {
  return slots_[position(s)].dim;
}

std::vector<int> SubsystemLayout::labels(int index) const {
  std::vector<int> out(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    out[i] = (index / strides_[i]) % slots_[i].dim;
  }
  return out;
}

int SubsystemLayout::index(std::span<const int> labels) const {
  if (labels.size() != slots_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "layout: label tuple length does not match slot count");
  }
  int idx = 0;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= slots_[i].dim) {
      throw Error(ErrorKind::InvalidArgument, "layout: label out of range");
    }
    idx += labels[i] * strides_[i];
  }
  return idx;
}

int SubsystemLayout::label(int index, Subsystem s) const {
  const int p = position(s);
  return (index / strides_[p]) % slots_[p].dim;
}

SubsystemLayout SubsystemLayout::subset(std::span<const Subsystem> keep) const {
  std::vector<SubsystemSlot> out;
  for (const auto& slot : slots_) {
    if (std::find(keep.begin(), keep.end(), slot.id) != keep.end()) {
      out.push_back(slot);
    }
  }
  for (Subsystem s : keep) position(s);  // throws on unknown
  return SubsystemLayout(std::move(out));
}

std::string SubsystemLayout::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (i) os << 'x';
    os << to_string(slots_[i].id) << ':' << slots_[i].dim;
  }
  return os.str();
}

bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
  if (a.slots_.size() != b.slots_.size()) return false;
  for (std::size_t i = 0; i < a.slots_.size(); ++i) {
    if (a.slots_[i].id != b.slots_[i].id || a.slots_[i].dim != b.slots_[i].dim)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Operator

namespace {

void require_square(const Matrix& m, int dim, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols()
       << ", layout dimension is " << dim;
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

Operator::Operator(SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  require_square(matrix_, layout_.dim(), "operator");
}

bool Operator::is_hermitian(double tol) const {
  return max_abs(matrix_ - matrix_.adjoint()) <= tol;
}

const Operator& Operator::require_hermitian(const std::string& what) const {
  const double err = max_abs(matrix_ - matrix_.adjoint());
  if (err > numerical_policy().hermitian_tol) {
    std::ostringstream os;
    os << what << ": not Hermitian (||A - A^dag||_max = " << err << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  return *this;
}

Operator Operator::adjoint() const { return {layout_, matrix_.adjoint()}; }

Operator& Operator::operator+=(const Operator& other) {
  if (!(layout_ == other.layout_)) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator sum: layouts " + layout_.describe() + " and " +
                    other.layout_.describe() + " differ");
  }
  matrix_ += other.matrix_;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (!(a.layout_ == b.layout_)) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator product: layouts " + a.layout_.describe() + " and " +
                    b.layout_.describe() + " differ");
  }
  return {a.layout_, a.matrix_ * b.matrix_};
}

Operator operator*(cplx s, Operator a) {
  a.matrix_ *= s;
  return a;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(SubsystemLayout layout, Matrix matrix)
    : DensityMatrix(std::move(layout), std::move(matrix), true) {}

DensityMatrix::DensityMatrix(SubsystemLayout layout, Matrix matrix,
                             bool validate)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  require_square(matrix_, layout_.dim(), "density matrix");
  if (!validate) return;
  const DensityCheck c = check();
  if (!c.valid) {
    std::ostringstream os;
    os << "density matrix invalid: trace error " << c.trace_error
       << ", hermiticity error " << c.hermiticity_error
       << ", min eigenvalue " << c.min_eigenvalue;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

DensityMatrix DensityMatrix::unchecked(SubsystemLayout layout, Matrix matrix) {
  return DensityMatrix(std::move(layout), std::move(matrix), false);
}

DensityMatrix DensityMatrix::maximally_mixed(const SubsystemLayout& layout) {
  const int d = layout.dim();
  return unchecked(layout, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const SubsystemLayout& layout,
                                  const Vector& psi) {
  if (psi.size() != layout.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "pure state: wrong length");
  }
  const double n = psi.norm();
  if (n == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "pure state: zero vector");
  }
  const Vector v = psi / n;
  return unchecked(layout, v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(const SubsystemLayout& layout,
                                         std::span<const int> labels) {
  const int idx = layout.index(labels);
  Matrix m = Matrix::Zero(layout.dim(), layout.dim());
  m(idx, idx) = 1.0;
  return unchecked(layout, std::move(m));
}

DensityCheck DensityMatrix::check() const {
  const NumericalPolicy pol = numerical_policy();
  DensityCheck c;
  c.trace_error = std::abs(matrix_.trace() - cplx(1.0, 0.0));
  c.hermiticity_error = max_abs(matrix_ - matrix_.adjoint());
  const Matrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  c.valid = c.trace_error <= pol.trace_tol &&
            c.hermiticity_error <= pol.hermitian_tol &&
            c.min_eigenvalue >= -pol.positivity_tol;
  return c;
}

double DensityMatrix::purity() const {
  return (matrix_ * matrix_).trace().real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.layout() == b.layout())) {
    throw Error(ErrorKind::DimensionMismatch, "trace distance: layouts differ");
  }
  const Matrix diff = a.matrix() - b.matrix();
  const Matrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Local operators

namespace local {

Matrix transition(int dim, int a, int b) {
  if (a < 0 || b < 0 || a >= dim || b >= dim) {
    throw Error(ErrorKind::InvalidArgument, "transition: level out of range");
  }
  Matrix m = Matrix::Zero(dim, dim);
  m(a, b) = 1.0;
  return m;
}

Matrix projector(int dim, int a) { return transition(dim, a, a); }

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_minus() { return transition(2, 0, 1); }

Matrix sigma_plus() { return transition(2, 1, 0); }

}  // namespace local

// ---------------------------------------------------------------------------
// Tensor operations

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator embed(const Matrix& local_op, Subsystem slot,
               const SubsystemLayout& layout) {
  const int ld = layout.local_dim(slot);
  if (local_op.rows() != ld || local_op.cols() != ld) {
    std::ostringstream os;
    os << "embed: local operator is " << local_op.rows() << "x"
       << local_op.cols() << " but slot " << to_string(slot)
       << " has dimension " << ld;
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& s : layout.slots()) {
    out = kron(out, s.id == slot ? local_op : local::identity(s.dim));
  }
  return {layout, std::move(out)};
}

Operator embed_product(
    std::initializer_list<std::pair<Subsystem, Matrix>> factors,
    const SubsystemLayout& layout) {
  Operator out = identity(layout);
  for (const auto& [slot, op] : factors) {
    out = out * embed(op, slot, layout);
  }
  return out;
}

Operator identity(const SubsystemLayout& layout) {
  return {layout, Matrix::Identity(layout.dim(), layout.dim())};
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<SubsystemSlot> slots = a.layout().slots();
  for (const auto& s : b.layout().slots()) slots.push_back(s);
  return DensityMatrix::unchecked(SubsystemLayout(std::move(slots)),
                                  kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const Subsystem> keep) {
  if (keep.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "partial_trace: keep set must be non-empty");
  }
  const SubsystemLayout& full = rho.layout();
  const SubsystemLayout kept = full.subset(keep);
  std::vector<int> keep_pos;
  std::vector<int> drop_pos;
  for (int i = 0; i < full.size(); ++i) {
    const Subsystem id = full.slots()[i].id;
    if (kept.contains(id)) {
      keep_pos.push_back(i);
    } else {
      drop_pos.push_back(i);
    }
  }
  const int d = full.dim();
  std::vector<int> reduced_index(d);
  std::vector<int> traced_index(d);
  for (int i = 0; i < d; ++i) {
    const auto lab = full.labels(i);
    int r = 0;
    for (int p : keep_pos) r = r * full.slots()[p].dim + lab[p];
    int t = 0;
    for (int p : drop_pos) t = t * full.slots()[p].dim + lab[p];
    reduced_index[i] = r;
    traced_index[i] = t;
  }
  Matrix out = Matrix::Zero(kept.dim(), kept.dim());
  const Matrix& m = rho.matrix();
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (traced_index[i] == traced_index[j]) {
        out(reduced_index[i], reduced_index[j]) += m(i, j);
      }
    }
  }
  return DensityMatrix::unchecked(kept, std::move(out));
}

namespace {

// perm[i] = index in `to` of basis state i of `from`.
std::vector<int> basis_permutation(const SubsystemLayout& from,
                                   const SubsystemLayout& to) {
  if (from.size() != to.size() || from.dim() != to.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "reorder: layouts " + from.describe() + " and " +
                    to.describe() + " are not permutations of each other");
  }
  std::vector<int> pos(from.size());
  for (int k = 0; k < to.size(); ++k) {
    const auto& slot = to.slots()[k];
    pos[k] = from.position(slot.id);
    if (from.slots()[pos[k]].dim != slot.dim) {
      throw Error(ErrorKind::DimensionMismatch,
                  "reorder: subsystem dimensions differ");
    }
  }
  std::vector<int> perm(from.dim());
  std::vector<int> target(to.size());
  for (int i = 0; i < from.dim(); ++i) {
    const auto lab = from.labels(i);
    for (int k = 0; k < to.size(); ++k) target[k] = lab[pos[k]];
    perm[i] = to.index(target);
  }
  return perm;
}

Matrix permute(const Matrix& m, const std::vector<int>& perm) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out(perm[i], perm[j]) = m(i, j);
    }
  }
  return out;
}

}  // namespace

Operator reorder(const Operator& op, const SubsystemLayout& target) {
  return {target, permute(op.matrix(), basis_permutation(op.layout(), target))};
}

DensityMatrix reorder(const DensityMatrix& rho, const SubsystemLayout& target) {
  return DensityMatrix::unchecked(
      target, permute(rho.matrix(), basis_permutation(rho.layout(), target)));
}

cplx expectation(const Operator& op, const DensityMatrix& rho) {
  if (!(op.layout() == rho.layout())) {
    throw Error(ErrorKind::DimensionMismatch,
                "expectation: operator layout " + op.layout().describe() +
                    " vs state layout " + rho.layout().describe());
  }
  // tr(A rho) without forming the product.
  return (op.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

}  // namespace demonlab
