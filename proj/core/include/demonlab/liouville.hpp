#pragma once

// Vectorized (Liouville-space) representation of Lindblad dynamics.
//
// Convention: column-major vectorization, vec(rho)[i + d*j] = rho(i, j), so
// vec(A X B) = (B^T kron A) vec(X). A generator acting on vec(rho) is
//
//   -i (I kron H - H^T kron I)
//   + sum_k r_k ( conj(L_k) kron L_k - 1/2 I kron L_k^dag L_k
//                 - 1/2 (L_k^dag L_k)^T kron I ).
//
// A LiouvilleSpace may keep only a subset of the vec indices: the
// coherence-diagonal sector {|i><j| : q(i) = q(j)} of a conserved excitation
// charge q. Every generator in this project leaves that sector invariant, and
// all physical states (steady state, limit cycle) live in it.
//
// Generators and propagators can be augmented with k accumulator coordinates:
//
//   G_aug = [ L 0 ]      exp(G_aug t) = [ P(t) 0 ]
//           [ F 0 ],                    [ Q(t) I ],
//
// where row r of F is the linear functional vec(rho) -> tr(O_r rho), so that
// Q(t) vec(rho0) = integral_0^t tr(O_r rho(s)) ds.

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <deque>
#include <unordered_map>
#include <vector>

#include "demonlab/common.hpp"
#include "demonlab/tensor.hpp"

namespace demonlab {

struct JumpTerm {
  Matrix op;
  double rate;
};

class LiouvilleSpace {
 public:
  // All d^2 vec indices.
  static LiouvilleSpace full(const SubsystemLayout& layout);
  // Indices i + d*j with charge[i] == charge[j].
  static LiouvilleSpace coherence_diagonal(const SubsystemLayout& layout,
                                           std::span<const int> charge);
  // Explicit index subset (sorted, unique, each < d^2).
  static LiouvilleSpace from_indices(const SubsystemLayout& layout,
                                     std::vector<int> indices, std::string tag);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  int hilbert_dim() const noexcept { return layout_.dim(); }
  int size() const noexcept { return static_cast<int>(indices_.size()); }
  bool is_full() const noexcept { return size() == hilbert_dim() * hilbert_dim(); }
  const std::vector<int>& indices() const noexcept { return indices_; }
  const std::string& tag() const noexcept { return tag_; }

  // Throws if rho carries weight outside the space (beyond tol).
  Vector vectorize(const Matrix& rho, double tol = 1e-12) const;
  Vector vectorize(const DensityMatrix& rho, double tol = 1e-12) const;
  Matrix unvectorize(const Eigen::Ref<const Vector>& v) const;
  DensityMatrix to_density(const Eigen::Ref<const Vector>& v) const;

  // Row t with t . vec(rho) = tr(rho).
  RowVector trace_row() const;
  // Row f with f . vec(rho) = tr(op rho).
  RowVector functional(const Matrix& op) const;

  // Submatrix of a full d^2 x d^2 superoperator. Throws if the superoperator
  // leaks weight out of the space.
  Matrix restrict(const Matrix& full_superop) const;

  friend bool operator==(const LiouvilleSpace& a, const LiouvilleSpace& b) {
    return a.tag_ == b.tag_ && a.layout_ == b.layout_;
  }

 private:
  LiouvilleSpace(SubsystemLayout layout, std::vector<int> indices,
                 std::string tag);

  SubsystemLayout layout_;
  std::vector<int> indices_;
  std::string tag_;
};

// Full d^2 x d^2 Lindblad superoperator.
Matrix lindblad_superoperator(const Matrix& hamiltonian,
                              std::span<const JumpTerm> jumps);

// The same superoperator assembled directly on the rows and columns of
// `space`. Does not check that the space is invariant.
Matrix lindblad_superoperator(const LiouvilleSpace& space,
                              const Matrix& hamiltonian,
                              std::span<const JumpTerm> jumps);

// Generator on a Liouville space with optional accumulator rows.
class Generator {
 public:
  Generator(LiouvilleSpace space, Matrix liouvillian,
            std::vector<RowVector> accumulators, std::string key);

  const LiouvilleSpace& space() const noexcept { return space_; }
  // (n + k) x (n + k), accumulator rows last.
  const Matrix& matrix() const noexcept { return matrix_; }
  Eigen::Ref<const Matrix> liouvillian() const {
    return matrix_.topLeftCorner(state_size(), state_size());
  }
  int state_size() const noexcept { return space_.size(); }
  int accumulators() const noexcept { return accumulators_; }
  // Identifies the generator for caching: same key implies same matrix.
  const std::string& key() const noexcept { return key_; }

  // max |t . L| over the trace row; zero for trace-preserving generators.
  double trace_defect() const;

 private:
  LiouvilleSpace space_;
  Matrix matrix_;
  int accumulators_ = 0;
  std::string key_;
};

class Propagator {
 public:
  Propagator(LiouvilleSpace space, Matrix matrix, int accumulators, double tau);

  // exp(generator * tau). Throws on tau < 0.
  static Propagator exponentiate(const Generator& gen, double tau);
  // Identity map of the given shape.
  static Propagator identity(const LiouvilleSpace& space, int accumulators);

  const LiouvilleSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  Eigen::Ref<const Matrix> map() const {
    return matrix_.topLeftCorner(state_size(), state_size());
  }
  // Accumulator block Q.
  Eigen::Ref<const Matrix> transfer() const {
    return matrix_.bottomLeftCorner(accumulators_, state_size());
  }
  int state_size() const noexcept { return space_.size(); }
  int accumulators() const noexcept { return accumulators_; }
  double duration() const noexcept { return tau_; }

  // Composition "this after first": maps over [0, first.tau + this.tau].
  Propagator after(const Propagator& first) const;

  // Applies the state block to vec(rho).
  Vector apply(const Eigen::Ref<const Vector>& state) const;
  DensityMatrix apply(const DensityMatrix& rho) const;
  // Integrals of the accumulated observables for initial state vec(rho).
  Eigen::VectorXd integrals(const Eigen::Ref<const Vector>& state) const;

  // Worst trace-preservation defect on the unaugmented block.
  double trace_defect() const;

 private:
  LiouvilleSpace space_;
  Matrix matrix_;
  int accumulators_ = 0;
  double tau_ = 0.0;
};

// Choi matrix sum_ij |i><j| (x) Phi(|i><j|) of a full-space propagator, in
// the layout (input (x) output), normalized by 1/d.
Matrix choi_matrix(const Propagator& prop);
// Minimum eigenvalue of the (Hermitized) Choi matrix.
double choi_min_eigenvalue(const Propagator& prop);

// Thread-safe cache of propagators keyed by (generator key, tau bits).
// Concurrent lookups share a reader lock; inserts take the writer lock.
// Identical requests return the same object, so results are bitwise stable.
class PropagatorCache {
 public:
  explicit PropagatorCache(std::size_t max_bytes = std::size_t{512} << 20);

  std::shared_ptr<const Propagator> get(const Generator& gen, double tau);

  std::size_t size() const;
  std::size_t hits() const;
  std::size_t misses() const;
  void clear();

  // Iterates a snapshot of all cached propagators.
  std::vector<std::shared_ptr<const Propagator>> snapshot() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const Propagator>> map_;
  std::deque<std::string> order_;
  std::size_t bytes_ = 0;
  std::size_t max_bytes_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

PropagatorCache& default_cache();

// Hex encoding of the bit pattern of a double; used for exact cache keys.
std::string bits_key(double x);

}  // namespace demonlab
