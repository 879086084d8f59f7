// Copyright 2026 The teur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teur/algebra.hpp"
#include "teur/qstate.hpp"

namespace teur {

/// Finite set of rotation angles r_k drawn with probabilities p_k.
class RotationEnsemble {
 public:
  RotationEnsemble(std::vector<double> angles, std::vector<double> probabilities);
  static RotationEnsemble uniform(std::vector<double> angles);

  std::size_t size() const { return angles_.size(); }
  const std::vector<double>& angles() const { return angles_; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  bool is_uniform() const;
  /// Shannon entropy of {p_k} in bits.
  double entropy() const;

 private:
  std::vector<double> angles_;
  std::vector<double> probabilities_;
};

/// Shared state, generator on subsystem A, and the rotation ensemble held in
/// a classical register (label "R" unless overridden).
class GameInstance {
 public:
  GameInstance(DensityMatrix state, Generator generator, RotationEnsemble ensemble,
               std::string register_label = "R");

  const DensityMatrix& state() const { return state_; }
  const Generator& generator() const { return generator_; }
  const RotationEnsemble& ensemble() const { return ensemble_; }
  const std::string& register_label() const { return register_label_; }

  /// Pinching of subsystem A in the generator's eigenbasis, on the state's layout.
  ConditionalExpectation measurement() const;

 private:
  DensityMatrix state_;
  Generator generator_;
  RotationEnsemble ensemble_;
  std::string register_label_;
};

/// U = Σ_k |r_k⟩⟨r_k| ⊗ exp(−i G r_k), indexed over (R, A).
Matrix control_unitary(const RotationEnsemble& ensemble, const Generator& generator);

/// κ = Σ_k p_k |r_k⟩⟨r_k| ⊗ e^{−iGr_k} ρ e^{iGr_k}, register first.
DensityMatrix build_kappa(const GameInstance& game);
/// ω: ρ pinched on A in the eigenbasis of G.
DensityMatrix build_omega(const GameInstance& game);
/// ψ = U (|Ω⟩⟨Ω| ⊗ ρ) U† with |Ω⟩ = Σ_k √p_k |r_k⟩, register first.
DensityMatrix build_psi(const GameInstance& game);

enum class GameKind { kTripartite, kBipartite };

struct BoundVariant {
  std::string name;
  double rhs = 0.0;
  double gap = 0.0;  // lhs − rhs
};

/// Every entropy term, the total uncertainty, and each applicable lower
/// bound of one game instance. Bounds whose hypotheses fail are absent.
struct BoundReport {
  GameKind kind = GameKind::kTripartite;
  std::vector<std::pair<std::string, double>> terms;
  double lhs = 0.0;
  std::vector<BoundVariant> variants;
  /// The state satisfies a sufficient condition for saturation.
  bool saturation_hypothesis = false;
  /// Hypothesis holds and the main bound is tight within 1e-8.
  bool saturated = false;

  double term(std::string_view name) const;
  const BoundVariant* variant(std::string_view name) const;
  /// "thm1" for the tripartite game, "thm2" for the bipartite one.
  const BoundVariant& main() const;
};

inline constexpr double kSaturationTolerance = 1e-8;
inline constexpr double kGapTolerance = 1e-9;

/// Requires subsystems A, B1, B2 (either B may be one-dimensional). Other
/// subsystems are traced out first.
BoundReport tripartite_report(const GameInstance& game);
/// Requires subsystems A, B. Other subsystems are traced out first.
BoundReport bipartite_report(const GameInstance& game);

}  // namespace teur
