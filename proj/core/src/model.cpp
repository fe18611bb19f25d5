#include "demonlab/model.hpp"

#include <cmath>

namespace demonlab {

const char* to_string(Side s) noexcept {
  return s == Side::Cold ? "C" : "H";
}

std::vector<int> Model::excitation_charge() const {
  const SubsystemLayout& lay = layout();
  std::vector<int> q(lay.dim(), 0);
  for (int i = 0; i < lay.dim(); ++i) {
    int n = 0;
    if (lay.contains(Subsystem::C)) n += lay.label(i, Subsystem::C);
    if (lay.contains(Subsystem::M)) n += lay.label(i, Subsystem::M) >= 1 ? 1 : 0;
    if (lay.contains(Subsystem::H)) n += lay.label(i, Subsystem::H);
    q[i] = n;
  }
  return q;
}

std::string Model::physics_key() const {
  const SystemParams& p = params_;
  return name() + "/" + layout().describe() + "/J" + bits_key(p.J) + "/wC" +
         bits_key(p.omega_C) + "/wH" + bits_key(p.omega_H) + "/TC" +
         bits_key(p.T_C) + "/TH" + bits_key(p.T_H) + "/g" + bits_key(p.gamma) +
         "/gD" + bits_key(p.gamma_D_on);
}

Operator control_hamiltonian(const SubsystemLayout& layout,
                             const Controls& controls) {
  using local::transition;
  const cplx i_unit(0.0, 1.0);
  Operator h(layout, Matrix::Zero(layout.dim(), layout.dim()));
  if (controls.A_YM != 0.0) {
    const Matrix y = i_unit * transition(3, 2, 1) - i_unit * transition(3, 1, 2);
    h += controls.A_YM * embed(y, Subsystem::M, layout);
  }
  const bool has_demon = layout.contains(Subsystem::D);
  if ((controls.A_YD != 0.0 || controls.A_CZ != 0.0) && !has_demon) {
    throw Error(ErrorKind::InvalidArgument,
                "demon controls need a layout containing D");
  }
  if (controls.A_YD != 0.0) {
    const Matrix y = i_unit * transition(2, 1, 0) - i_unit * transition(2, 0, 1);
    h += controls.A_YD * embed(y, Subsystem::D, layout);
  }
  if (controls.A_CZ != 0.0) {
    h += controls.A_CZ * embed_product({{Subsystem::M, local::projector(3, 2)},
                                        {Subsystem::D, local::projector(2, 1)}},
                                       layout);
  }
  return h;
}

// ---------------------------------------------------------------------------
// FullModel

FullModel::FullModel(const SystemParams& params, SubsystemLayout layout)
    : Model(params), layout_(std::move(layout)), derived_(derive_params(params)) {
  for (Subsystem s : {Subsystem::C, Subsystem::M, Subsystem::H}) {
    if (!layout_.contains(s)) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("full model: layout lacks subsystem ") + to_string(s));
    }
  }
}

std::string FullModel::physics_key() const { return Model::physics_key(); }

Operator FullModel::hamiltonian(const Controls& controls) const {
  using local::sigma_minus;
  using local::sigma_plus;
  using local::transition;
  const double J = params().J;
  const double root2 = std::sqrt(2.0);

  Operator h = root2 * J *
               (embed_product({{Subsystem::C, sigma_minus()},
                               {Subsystem::M, transition(3, 2, 0)}},
                              layout_) +
                embed_product({{Subsystem::C, sigma_plus()},
                               {Subsystem::M, transition(3, 0, 2)}},
                              layout_));
  h += J * (embed_product({{Subsystem::M, transition(3, 0, 1)},
                           {Subsystem::H, sigma_plus()}},
                          layout_) +
            embed_product({{Subsystem::M, transition(3, 1, 0)},
                           {Subsystem::H, sigma_minus()}},
                          layout_));
  h += control_hamiltonian(layout_, controls);
  return h;
}

std::vector<JumpTerm> FullModel::jump_terms(const DissipatorSet& active) const {
  const SystemParams& p = params();
  std::vector<JumpTerm> out;
  const Matrix sm = local::sigma_minus();
  const Matrix sp = local::sigma_plus();
  if (active.cold) {
    out.push_back({embed(sm, Subsystem::C, layout_).matrix(), p.gamma * (derived_.n_C + 1.0)});
    out.push_back({embed(sp, Subsystem::C, layout_).matrix(), p.gamma * derived_.n_C});
  }
  if (active.hot) {
    out.push_back({embed(sm, Subsystem::H, layout_).matrix(), p.gamma * (derived_.n_H + 1.0)});
    out.push_back({embed(sp, Subsystem::H, layout_).matrix(), p.gamma * derived_.n_H});
  }
  if (active.demon) {
    if (!layout_.contains(Subsystem::D)) {
      throw Error(ErrorKind::InvalidArgument,
                  "full model: memory dump needs a layout containing D");
    }
    out.push_back({embed(sm, Subsystem::D, layout_).matrix(), p.gamma_D_on});
  }
  return out;
}

Operator FullModel::current_operator(Side side) const {
  using local::sigma_minus;
  using local::sigma_plus;
  using local::transition;
  const double J = params().J;
  const cplx i_unit(0.0, 1.0);
  if (side == Side::Cold) {
    const Operator fwd = embed_product(
        {{Subsystem::C, sigma_minus()}, {Subsystem::M, transition(3, 2, 0)}}, layout_);
    const Operator bwd = embed_product(
        {{Subsystem::C, sigma_plus()}, {Subsystem::M, transition(3, 0, 2)}}, layout_);
    return (-std::sqrt(2.0) * i_unit * J) * (fwd + cplx(-1.0) * bwd);
  }
  const Operator fwd = embed_product(
      {{Subsystem::M, transition(3, 0, 1)}, {Subsystem::H, sigma_plus()}}, layout_);
  const Operator bwd = embed_product(
      {{Subsystem::M, transition(3, 1, 0)}, {Subsystem::H, sigma_minus()}}, layout_);
  return (-i_unit * J) * (fwd + cplx(-1.0) * bwd);
}

// ---------------------------------------------------------------------------

LiouvilleSpace model_space(const Model& model, bool sector) {
  if (!sector) return LiouvilleSpace::full(model.layout());
  const std::vector<int> q = model.excitation_charge();
  return LiouvilleSpace::coherence_diagonal(model.layout(), q);
}

namespace {

std::string controls_key(const Controls& c) {
  return "/YM" + bits_key(c.A_YM) + "/YD" + bits_key(c.A_YD) + "/CZ" +
         bits_key(c.A_CZ);
}

}  // namespace

Generator make_generator(const Model& model, const Controls& controls,
                         const DissipatorSet& active,
                         const GeneratorOptions& options) {
  const Operator h = model.hamiltonian(controls);
  const std::vector<JumpTerm> jumps = model.jump_terms(active);
  LiouvilleSpace space = model_space(model, options.sector);
  Matrix restricted = lindblad_superoperator(space, h.matrix(), jumps);
  std::vector<RowVector> acc;
  if (options.accumulate_currents) {
    acc.push_back(space.functional(model.current_operator(Side::Cold).matrix()));
    acc.push_back(space.functional(model.current_operator(Side::Hot).matrix()));
  }
  std::string key = model.physics_key() + controls_key(controls) + "/d" +
                    (active.cold ? "C" : "") + (active.hot ? "H" : "") +
                    (active.demon ? "D" : "") + "/" + space.tag() +
                    (options.accumulate_currents ? "/acc" : "");
  return Generator(std::move(space), std::move(restricted), std::move(acc),
                   std::move(key));
}

Operator build_hamiltonian(const SystemParams& p, const Controls& controls) {
  return FullModel(p).hamiltonian(controls);
}

Generator build_generator(const SystemParams& p, const Controls& controls,
                          const DissipatorSet& active) {
  return make_generator(FullModel(p), controls, active, {.sector = false});
}

}  // namespace demonlab
