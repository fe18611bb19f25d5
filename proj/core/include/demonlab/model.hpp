#pragma once

// Physical models in the rotating frame of the bare Hamiltonian. All
// couplings are resonant there and the drive phases cancel, so every
// piecewise-constant control segment has a time-independent generator.

#include <memory>
#include <string>
#include <vector>

#include "demonlab/liouville.hpp"
#include "demonlab/params.hpp"
#include "demonlab/tensor.hpp"

namespace demonlab {

// Control amplitudes in units of J:
//   A_YM (i|2_M><1_M| - i|1_M><2_M|) + A_YD (i|1_D><0_D| - i|0_D><1_D|)
//   + A_CZ |2_M 1_D><2_M 1_D|.
struct Controls {
  double A_YM = 0.0;
  double A_YD = 0.0;
  double A_CZ = 0.0;

  bool is_zero() const { return A_YM == 0.0 && A_YD == 0.0 && A_CZ == 0.0; }
};

// Control part of the Hamiltonian on any layout containing M (and D when a
// demon control is nonzero).
Operator control_hamiltonian(const SubsystemLayout& layout,
                             const Controls& controls);

struct DissipatorSet {
  bool cold = true;
  bool hot = true;
  bool demon = false;  // memory dump at rate gamma_D_on
};

enum class Side { Cold, Hot };

const char* to_string(Side s) noexcept;

class Model {
 public:
  explicit Model(SystemParams params) : params_(params) {}
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual const SubsystemLayout& layout() const = 0;
  virtual Operator hamiltonian(const Controls& controls) const = 0;
  virtual std::vector<JumpTerm> jump_terms(const DissipatorSet& active) const = 0;
  // Excitation current operator; its expectation is the rate at which
  // excitations enter the qutrit from the cold side (Cold) or leave it to the
  // hot side (Hot).
  virtual Operator current_operator(Side side) const = 0;

  // Conserved excitation charge per basis state: c + [m >= 1] + h. Every
  // generator of the model commutes with the corresponding phase rotation.
  std::vector<int> excitation_charge() const;

  const SystemParams& params() const noexcept { return params_; }
  // Key fragment covering everything the generator depends on besides the
  // controls and dissipator switches.
  virtual std::string physics_key() const;

 private:
  SystemParams params_;
};

// Cold qubit, qutrit, hot qubit and demon qubit with thermalizing qubit baths.
// A layout without D is accepted for demon-free calculations; then only A_YM
// may be nonzero.
class FullModel final : public Model {
 public:
  explicit FullModel(const SystemParams& params,
                     SubsystemLayout layout = SubsystemLayout::full());

  std::string name() const override { return "full"; }
  const SubsystemLayout& layout() const override { return layout_; }
  Operator hamiltonian(const Controls& controls) const override;
  std::vector<JumpTerm> jump_terms(const DissipatorSet& active) const override;
  Operator current_operator(Side side) const override;
  std::string physics_key() const override;

 private:
  SubsystemLayout layout_;
  DerivedParams derived_;
};

struct GeneratorOptions {
  // Restrict to the coherence-diagonal sector of the excitation charge.
  bool sector = true;
  // Append accumulators for the cold and hot current integrals (rows 0, 1).
  bool accumulate_currents = false;
};

LiouvilleSpace model_space(const Model& model, bool sector);

Generator make_generator(const Model& model, const Controls& controls,
                         const DissipatorSet& active,
                         const GeneratorOptions& options = {});

// Full-model rotating-frame Hamiltonian on the 24-dim space.
Operator build_hamiltonian(const SystemParams& p, const Controls& controls);

// Full-model generator on the complete 576-dim Liouville space.
Generator build_generator(const SystemParams& p, const Controls& controls,
                          const DissipatorSet& active);

}  // namespace demonlab
