#include "demonlab/liouville.hpp"

#include <bit>
#include <cstdio>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace demonlab {

std::string bits_key(double x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(x)));
  return buf;
}

// ---------------------------------------------------------------------------
// LiouvilleSpace

LiouvilleSpace::LiouvilleSpace(SubsystemLayout layout, std::vector<int> indices,
                               std::string tag)
    : layout_(std::move(layout)), indices_(std::move(indices)),
      tag_(std::move(tag)) {}

LiouvilleSpace LiouvilleSpace::full(const SubsystemLayout& layout) {
  const int d = layout.dim();
  std::vector<int> idx(d * d);
  for (int k = 0; k < d * d; ++k) idx[k] = k;
  return LiouvilleSpace(layout, std::move(idx), "full");
}

LiouvilleSpace LiouvilleSpace::coherence_diagonal(const SubsystemLayout& layout,
                                                  std::span<const int> charge) {
  const int d = layout.dim();
  if (static_cast<int>(charge.size()) != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "coherence_diagonal: charge vector length != dimension");
  }
  std::vector<int> idx;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (charge[i] == charge[j]) idx.push_back(i + d * j);
    }
  }
  std::ostringstream tag;
  tag << "sector:";
  for (int q : charge) tag << q;
  return LiouvilleSpace(layout, std::move(idx), tag.str());
}

LiouvilleSpace LiouvilleSpace::from_indices(const SubsystemLayout& layout,
                                            std::vector<int> indices,
                                            std::string tag) {
  const int n2 = layout.dim() * layout.dim();
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= n2 ||
        (k > 0 && indices[k] <= indices[k - 1])) {
      throw Error(ErrorKind::InvalidArgument,
                  "from_indices: indices must be sorted, unique and in range");
    }
  }
  return LiouvilleSpace(layout, std::move(indices), std::move(tag));
}

Vector LiouvilleSpace::vectorize(const Matrix& rho, double tol) const {
  const int d = hilbert_dim();
  if (rho.rows() != d || rho.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "vectorize: wrong dimension");
  }
  Vector v(size());
  const cplx* data = rho.data();  // column-major
  double kept = 0.0;
  for (int k = 0; k < size(); ++k) {
    v(k) = data[indices_[k]];
    kept += std::norm(v(k));
  }
  if (!is_full()) {
    const double leak = std::sqrt(std::max(0.0, rho.squaredNorm() - kept));
    if (leak > tol) {
      std::ostringstream os;
      os << "vectorize: state has weight " << leak
         << " outside the Liouville sector " << tag_;
      throw Error(ErrorKind::InvalidArgument, os.str());
    }
  }
  return v;
}

Vector LiouvilleSpace::vectorize(const DensityMatrix& rho, double tol) const {
  if (!(rho.layout() == layout_)) {
    throw Error(ErrorKind::DimensionMismatch,
                "vectorize: state layout " + rho.layout().describe() +
                    " vs space layout " + layout_.describe());
  }
  return vectorize(rho.matrix(), tol);
}

Matrix LiouvilleSpace::unvectorize(const Eigen::Ref<const Vector>& v) const {
  if (v.size() < size()) {
    throw Error(ErrorKind::DimensionMismatch, "unvectorize: vector too short");
  }
  const int d = hilbert_dim();
  Matrix m = Matrix::Zero(d, d);
  cplx* data = m.data();
  for (int k = 0; k < size(); ++k) data[indices_[k]] = v(k);
  return m;
}

DensityMatrix LiouvilleSpace::to_density(const Eigen::Ref<const Vector>& v) const {
  return DensityMatrix::unchecked(layout_, unvectorize(v));
}

RowVector LiouvilleSpace::trace_row() const {
  const int d = hilbert_dim();
  RowVector t = RowVector::Zero(size());
  for (int k = 0; k < size(); ++k) {
    const int i = indices_[k] % d;
    const int j = indices_[k] / d;
    if (i == j) t(k) = 1.0;
  }
  return t;
}

RowVector LiouvilleSpace::functional(const Matrix& op) const {
  const int d = hilbert_dim();
  if (op.rows() != d || op.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "functional: wrong dimension");
  }
  RowVector f(size());
  for (int k = 0; k < size(); ++k) {
    const int i = indices_[k] % d;
    const int j = indices_[k] / d;
    f(k) = op(j, i);  // tr(O rho) = sum_ij O_ji rho_ij
  }
  return f;
}

Matrix LiouvilleSpace::restrict(const Matrix& full_superop) const {
  const int n2 = hilbert_dim() * hilbert_dim();
  if (full_superop.rows() != n2 || full_superop.cols() != n2) {
    throw Error(ErrorKind::DimensionMismatch, "restrict: wrong dimension");
  }
  if (is_full()) return full_superop;
  Matrix out(size(), size());
  for (int c = 0; c < size(); ++c) {
    for (int r = 0; r < size(); ++r) {
      out(r, c) = full_superop(indices_[r], indices_[c]);
    }
  }
  // Invariance: columns in the sector must vanish outside it.
  std::vector<char> in_sector(n2, 0);
  for (int k : indices_) in_sector[k] = 1;
  const double scale = std::max(1.0, full_superop.cwiseAbs().maxCoeff());
  for (int c : indices_) {
    for (int r = 0; r < n2; ++r) {
      if (!in_sector[r] && std::abs(full_superop(r, c)) > 1e-14 * scale) {
        throw Error(ErrorKind::InvalidArgument,
                    "restrict: superoperator does not preserve sector " + tag_);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Superoperator assembly

Matrix lindblad_superoperator(const Matrix& hamiltonian,
                              std::span<const JumpTerm> jumps) {
  const Eigen::Index d = hamiltonian.rows();
  const Matrix id = Matrix::Identity(d, d);
  const cplx i_unit(0.0, 1.0);
  Matrix out = -i_unit * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
  for (const auto& jump : jumps) {
    if (jump.rate == 0.0) continue;
    if (jump.rate < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "lindblad: negative rate");
    }
    const Matrix ldl = jump.op.adjoint() * jump.op;
    out += jump.rate * (kron(jump.op.conjugate(), jump.op) -
                        0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
  }
  return out;
}

// Entry ((i,j),(k,l)) of B^T (x) A is B(l,j) A(i,k).
Matrix lindblad_superoperator(const LiouvilleSpace& space,
                              const Matrix& hamiltonian,
                              std::span<const JumpTerm> jumps) {
  const int d = space.hilbert_dim();
  if (hamiltonian.rows() != d || hamiltonian.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "lindblad: Hamiltonian size");
  }
  const cplx i_unit(0.0, 1.0);
  // Effective non-Hermitian part K = -iH - 1/2 sum r L^dag L, so that the
  // no-jump terms read K(i,k) d(l,j) + conj(K(j,l)) d(i,k).
  Matrix k_eff = -i_unit * hamiltonian;
  std::vector<std::pair<double, const Matrix*>> active;
  for (const auto& jump : jumps) {
    if (jump.rate == 0.0) continue;
    if (jump.rate < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "lindblad: negative rate");
    }
    k_eff -= 0.5 * jump.rate * (jump.op.adjoint() * jump.op);
    active.emplace_back(jump.rate, &jump.op);
  }
  const auto& idx = space.indices();
  const int n = space.size();
  Matrix out(n, n);
  for (int c = 0; c < n; ++c) {
    const int k = idx[c] % d;
    const int l = idx[c] / d;
    for (int r = 0; r < n; ++r) {
      const int i = idx[r] % d;
      const int j = idx[r] / d;
      cplx v(0.0);
      if (l == j) v += k_eff(i, k);
      if (i == k) v += std::conj(k_eff(j, l));
      for (const auto& [rate, op] : active) {
        v += rate * (*op)(i, k) * std::conj((*op)(j, l));
      }
      out(r, c) = v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(LiouvilleSpace space, Matrix liouvillian,
                     std::vector<RowVector> accumulators, std::string key)
    : space_(std::move(space)),
      accumulators_(static_cast<int>(accumulators.size())),
      key_(std::move(key)) {
  const int n = space_.size();
  if (liouvillian.rows() != n || liouvillian.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "generator: Liouvillian size does not match space");
  }
  matrix_ = Matrix::Zero(n + accumulators_, n + accumulators_);
  matrix_.topLeftCorner(n, n) = std::move(liouvillian);
  for (int r = 0; r < accumulators_; ++r) {
    if (accumulators[r].size() != n) {
      throw Error(ErrorKind::DimensionMismatch,
                  "generator: accumulator row has wrong length");
    }
    matrix_.block(n + r, 0, 1, n) = accumulators[r];
  }
}

double Generator::trace_defect() const {
  const RowVector row = space_.trace_row() * liouvillian();
  return row.size() ? row.cwiseAbs().maxCoeff() : 0.0;
}

// ---------------------------------------------------------------------------
// Propagator

Propagator::Propagator(LiouvilleSpace space, Matrix matrix, int accumulators,
                       double tau)
    : space_(std::move(space)), matrix_(std::move(matrix)),
      accumulators_(accumulators), tau_(tau) {
  const int n = space_.size() + accumulators_;
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "propagator: matrix size does not match space");
  }
}

Propagator Propagator::exponentiate(const Generator& gen, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    std::ostringstream os;
    os << "propagate: segment duration must be >= 0 (got " << tau << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  const int n = static_cast<int>(gen.matrix().rows());
  if (tau == 0.0) {
    return Propagator(gen.space(), Matrix::Identity(n, n), gen.accumulators(),
                      0.0);
  }
  Matrix scaled = gen.matrix() * tau;
  Matrix p = scaled.exp();
  return Propagator(gen.space(), std::move(p), gen.accumulators(), tau);
}

Propagator Propagator::identity(const LiouvilleSpace& space, int accumulators) {
  const int n = space.size() + accumulators;
  return Propagator(space, Matrix::Identity(n, n), accumulators, 0.0);
}

Propagator Propagator::after(const Propagator& first) const {
  if (!(space_ == first.space_) || accumulators_ != first.accumulators_) {
    throw Error(ErrorKind::DimensionMismatch,
                "compose: propagators act on different spaces");
  }
  return Propagator(space_, matrix_ * first.matrix_, accumulators_,
                    tau_ + first.tau_);
}

Vector Propagator::apply(const Eigen::Ref<const Vector>& state) const {
  if (state.size() != state_size()) {
    throw Error(ErrorKind::DimensionMismatch, "apply: wrong state length");
  }
  return map() * state;
}

DensityMatrix Propagator::apply(const DensityMatrix& rho) const {
  return space_.to_density(apply(space_.vectorize(rho)));
}

Eigen::VectorXd Propagator::integrals(const Eigen::Ref<const Vector>& state) const {
  if (state.size() != state_size()) {
    throw Error(ErrorKind::DimensionMismatch, "integrals: wrong state length");
  }
  return (transfer() * state).real();
}

double Propagator::trace_defect() const {
  const RowVector t = space_.trace_row();
  const RowVector row = t * map() - t;
  return row.size() ? row.cwiseAbs().maxCoeff() : 0.0;
}

// ---------------------------------------------------------------------------
// Choi matrix

Matrix choi_matrix(const Propagator& prop) {
  const LiouvilleSpace& space = prop.space();
  const int d = space.hilbert_dim();
  // Embed the (possibly sector-restricted) map in the full d^2 space. Missing
  // columns are zero, which realizes map o (phase twirl), itself CP iff the
  // map is.
  Matrix full = Matrix::Zero(d * d, d * d);
  const auto& idx = space.indices();
  const auto m = prop.map();
  for (int c = 0; c < space.size(); ++c) {
    for (int r = 0; r < space.size(); ++r) full(idx[r], idx[c]) = m(r, c);
  }
  Matrix choi(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int col = i + d * j;
      for (int b = 0; b < d; ++b) {
        for (int a = 0; a < d; ++a) {
          choi(i * d + a, j * d + b) = full(a + d * b, col);
        }
      }
    }
  }
  return choi / static_cast<double>(d);
}

double choi_min_eigenvalue(const Propagator& prop) {
  const Matrix c = choi_matrix(prop);
  const Matrix herm = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// PropagatorCache

PropagatorCache::PropagatorCache(std::size_t max_bytes) : max_bytes_(max_bytes) {}

std::shared_ptr<const Propagator> PropagatorCache::get(const Generator& gen,
                                                       double tau) {
  const std::string key = gen.key() + "|tau=" + bits_key(tau);
  {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      ++hits_;
      return it->second;
    }
  }
  auto prop = std::make_shared<const Propagator>(Propagator::exponentiate(gen, tau));
  const std::size_t bytes =
      static_cast<std::size_t>(prop->matrix().size()) * sizeof(cplx);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = map_.emplace(key, prop);
  if (!inserted) {
    // Another thread computed it first; keep the first copy.
    ++hits_;
    return it->second;
  }
  ++misses_;
  order_.push_back(key);
  bytes_ += bytes;
  while (bytes_ > max_bytes_ && order_.size() > 1) {
    auto old = map_.find(order_.front());
    bytes_ -= static_cast<std::size_t>(old->second->matrix().size()) * sizeof(cplx);
    map_.erase(old);
    order_.pop_front();
  }
  return prop;
}

std::size_t PropagatorCache::size() const {
  std::shared_lock lock(mutex_);
  return map_.size();
}

std::size_t PropagatorCache::hits() const { return hits_; }

std::size_t PropagatorCache::misses() const { return misses_; }

void PropagatorCache::clear() {
  std::unique_lock lock(mutex_);
  map_.clear();
  order_.clear();
  bytes_ = 0;
}

std::vector<std::shared_ptr<const Propagator>> PropagatorCache::snapshot() const {
  std::shared_lock lock(mutex_);
  std::vector<std::shared_ptr<const Propagator>> out;
  out.reserve(order_.size());
  for (const auto& key : order_) out.push_back(map_.at(key));
  return out;
}

PropagatorCache& default_cache() {
  static PropagatorCache cache;
  return cache;
}

}  // namespace demonlab
