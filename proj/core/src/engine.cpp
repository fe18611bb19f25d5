#include "demonlab/engine.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/SVD>

namespace demonlab {

DensityMatrix propagate_segment(const Generator& gen, double tau,
                                const DensityMatrix& rho) {
  if (!(tau >= 0.0)) {
    std::ostringstream os;
    os << "propagate_segment: tau must be >= 0 (got " << tau << ")";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  if (tau == 0.0) {
    return DensityMatrix::unchecked(rho.layout(), rho.matrix());
  }
  return Propagator::exponentiate(gen, tau).apply(rho);
}

// ---------------------------------------------------------------------------
// Steady state

Vector stationary_vector(const Generator& gen) {
  const Matrix l = gen.liouvillian();
  const Eigen::Index n = l.rows();
  Eigen::BDCSVD<Matrix> svd(l, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  const double tol = numerical_policy().nullspace_tol * std::max(1.0, sv(0));
  int nullity = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (sv(k) <= tol) ++nullity;
  }
  if (nullity != 1) {
    std::ostringstream os;
    os << "steady state: null space dimension " << nullity
       << " (expected 1; smallest singular values " << sv(n - 1);
    if (n > 1) os << ", " << sv(n - 2);
    os << ")";
    throw Error(ErrorKind::Degenerate, os.str());
  }
  Vector v = svd.matrixV().col(n - 1);
  const cplx tr = gen.space().trace_row() * v;
  if (std::abs(tr) < 1e-14) {
    throw Error(ErrorKind::Degenerate, "steady state: null vector is traceless");
  }
  return v / tr;
}

DensityMatrix steady_state(const Model& model) {
  const SubsystemLayout& lay = model.layout();
  const int d = lay.dim();
  const std::vector<int> q = model.excitation_charge();
  const bool has_demon = lay.contains(Subsystem::D);
  std::vector<int> idx;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (q[i] != q[j]) continue;
      if (has_demon && (lay.label(i, Subsystem::D) != 0 ||
                        lay.label(j, Subsystem::D) != 0)) {
        continue;
      }
      idx.push_back(i + d * j);
    }
  }
  LiouvilleSpace space =
      LiouvilleSpace::from_indices(lay, std::move(idx), "demon-ground");
  const Operator h = model.hamiltonian(Controls{});
  const std::vector<JumpTerm> jumps = model.jump_terms({true, true, false});
  Matrix block = lindblad_superoperator(space, h.matrix(), jumps);
  const Generator gen(space, std::move(block), {}, model.physics_key() + "/ss");
  const Vector v = stationary_vector(gen);
  Matrix rho = space.unvectorize(v);
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(lay, std::move(rho));
}

DensityMatrix steady_state(const SystemParams& p) {
  if (!(p.gamma > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "steady state requires gamma > 0");
  }
  return steady_state(FullModel(p));
}

// ---------------------------------------------------------------------------
// Cycles

std::vector<std::shared_ptr<const Propagator>> segment_propagators(
    const Model& model, const Schedule& schedule,
    const GeneratorOptions& options, PropagatorCache* cache) {
  if (schedule.segments.empty()) {
    throw Error(ErrorKind::InvalidArgument, "cycle map: empty schedule");
  }
  std::vector<std::shared_ptr<const Propagator>> out;
  out.reserve(schedule.segments.size());
  for (const PulseSegment& seg : schedule.segments) {
    seg.validate();
    const Generator gen =
        make_generator(model, seg.controls, seg.dissipators(), options);
    if (cache) {
      out.push_back(cache->get(gen, seg.duration));
    } else {
      out.push_back(std::make_shared<const Propagator>(
          Propagator::exponentiate(gen, seg.duration)));
    }
  }
  return out;
}

Propagator compose(const std::vector<std::shared_ptr<const Propagator>>& props) {
  if (props.empty()) {
    throw Error(ErrorKind::InvalidArgument, "compose: no propagators");
  }
  Propagator total = *props.front();
  for (std::size_t k = 1; k < props.size(); ++k) total = props[k]->after(total);
  return total;
}

Propagator cycle_map(const Model& model, const Schedule& schedule,
                     const GeneratorOptions& options, PropagatorCache* cache) {
  return compose(segment_propagators(model, schedule, options, cache));
}

FixedPoint limit_cycle_vector(const Propagator& map,
                              const std::optional<Vector>& seed) {
  const int n = map.state_size();
  const RowVector t = map.space().trace_row();
  const Matrix m = map.map();
  // Trace preservation makes the rows of (M - I) dependent through t, so one
  // row can be replaced by the normalization condition t x = 1.
  int pivot = 0;
  while (pivot < n && t(pivot) == cplx(0.0)) ++pivot;
  if (pivot == n) {
    throw Error(ErrorKind::InvalidArgument, "limit cycle: space has no trace");
  }
  Matrix b = m - Matrix::Identity(n, n);
  b.row(pivot) = t;
  Vector rhs = Vector::Zero(n);
  rhs(pivot) = 1.0;
  Eigen::PartialPivLU<Matrix> lu(b);
  FixedPoint fp;
  // The LU estimate can miss exact singularity (zero pivots), so the pivot
  // spread bounds it as well.
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  fp.rcond = std::min(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff());
  if (!(fp.rcond > numerical_policy().degenerate_rcond)) {
    if (seed) {
      const double res = (m * *seed - *seed).cwiseAbs().maxCoeff();
      if (res <= 1e-10) {
        fp.state = *seed;
        fp.residual = res;
        return fp;
      }
    }
    std::ostringstream os;
    os << "limit cycle: eigenvalue 1 of the cycle map is not simple (rcond "
       << fp.rcond << ")";
    throw Error(ErrorKind::Degenerate, os.str());
  }
  fp.state = lu.solve(rhs);
  fp.residual = (m * fp.state - fp.state).cwiseAbs().maxCoeff();
  return fp;
}

DensityMatrix limit_cycle_state(const Propagator& map,
                                const std::optional<DensityMatrix>& seed) {
  std::optional<Vector> seed_vec;
  if (seed) seed_vec = map.space().vectorize(*seed);
  const FixedPoint fp = limit_cycle_vector(map, seed_vec);
  Matrix rho = map.space().unvectorize(fp.state);
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::unchecked(map.space().layout(), std::move(rho));
}

Vector iterate_map(const Propagator& map, Vector state, int n) {
  const auto m = map.map();
  for (int k = 0; k < n; ++k) state = m * state;
  return state;
}

}  // namespace demonlab
