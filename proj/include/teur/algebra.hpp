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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "teur/entropy.hpp"
#include "teur/qstate.hpp"

namespace teur {

/// Unital, trace-preserving, completely positive projection onto a
/// subalgebra of the operators on `layout()`.
///
/// Application goes through structured formulas. The d²×d² superoperator
/// (row-major vectorization, vec(X)[i*d+j] = X(i,j)) is materialized lazily,
/// once, for the verification paths; copies share the cache.
class ConditionalExpectation {
 public:
  /// ρ ↦ Σ_k P_k ρ P_k on one subsystem. `basis` holds the rank-one
  /// eigenvectors as columns when every projector has rank one, else empty.
  struct Pinching {
    std::string target;
    std::vector<Matrix> projectors;
    Matrix basis;
  };
  /// ρ ↦ I_D/|D| ⊗ Tr_D ρ.
  struct TraceEmbed {
    LabelList discard;
  };
  /// maps[0] ∘ maps[1] ∘ … ; empty is the identity.
  struct Compose {
    std::vector<ConditionalExpectation> maps;
  };
  /// Arbitrary linear map. Only for negative controls in tests.
  struct Custom {
    std::string name;
    std::function<Matrix(const Matrix&)> map;
  };
  using Kind = std::variant<Pinching, TraceEmbed, Compose, Custom>;

  ConditionalExpectation(SubsystemLayout layout, Kind kind);

  const SubsystemLayout& layout() const { return layout_; }
  const Kind& kind() const { return *kind_; }
  std::string describe() const;

  Matrix apply(const Matrix& op) const;
  const Matrix& superoperator() const;
  Matrix choi() const;

 private:
  struct Cache;

  SubsystemLayout layout_;
  std::shared_ptr<const Kind> kind_;
  std::shared_ptr<Cache> cache_;
};

ConditionalExpectation make_pinching(const SubsystemLayout& layout, const std::string& target, const Matrix& basis);
ConditionalExpectation make_block_pinching(const SubsystemLayout& layout, const std::string& target,
                                           std::vector<Matrix> projectors);
ConditionalExpectation make_trace_embed(const SubsystemLayout& layout, const LabelList& discard);
ConditionalExpectation compose(const SubsystemLayout& layout, std::vector<ConditionalExpectation> maps);
ConditionalExpectation identity_expectation(const SubsystemLayout& layout);

namespace testing {
ConditionalExpectation make_custom_map(const SubsystemLayout& layout, std::string name,
                                       std::function<Matrix(const Matrix&)> map);
}  // namespace testing

DensityMatrix apply_condexp(const ConditionalExpectation& expectation, const DensityMatrix& rho);

struct ChannelCheck {
  double hermiticity_deviation = 0.0;  // of the Choi matrix
  double min_choi_eigenvalue = 0.0;
  double trace_deviation = 0.0;  // ‖Tr_out Choi − I‖_max
  bool completely_positive = false;
  bool trace_preserving = false;
  bool ok() const { return completely_positive && trace_preserving; }
};

/// CPTP check from a row-major superoperator on a d-dimensional space.
ChannelCheck check_channel(const Matrix& superoperator, Index dim, double tolerance = 1e-10);

struct CondExpReport {
  bool pass = false;
  double max_duality_deviation = 0.0;
  double unitality_deviation = 0.0;
  double idempotence_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_choi_eigenvalue = 0.0;
  std::vector<std::string> failures;
};

/// Samples random ρ on the full algebra and random σ = E(H) in the image and
/// checks trace duality, unitality, idempotence, and CPTP at 1e-10.
CondExpReport verify_condexp(const ConditionalExpectation& expectation, int samples, std::uint64_t seed);

struct CommutingSquare {
  ConditionalExpectation e_n;
  ConditionalExpectation e_t;
  ConditionalExpectation e_r;  // e_n ∘ e_t
};

struct CommutingSquareCheck {
  bool commutes = false;
  double deviation = 0.0;  // ‖S(N∘T) − S(T∘N)‖_max
  std::optional<CommutingSquare> square;
};

inline constexpr double kCommutationTolerance = 1e-10;

CommutingSquareCheck verify_commuting_square(const ConditionalExpectation& e_n, const ConditionalExpectation& e_t);

struct SquareEntropyReport {
  double entropy_n = 0.0;  // S(E_N(ρ))
  double entropy_t = 0.0;  // S(E_T(ρ))
  double entropy_m = 0.0;  // S(ρ)
  double entropy_r = 0.0;  // S(E_R(ρ))
  /// S(E_N ρ) + S(E_T ρ) − S(ρ) − S(E_R ρ); nonnegative for a commuting square.
  double value = 0.0;
};

SquareEntropyReport square_entropy_report(const CommutingSquare& square, const DensityMatrix& rho);

/// V = Σ_k |k⟩_E ⊗ |b_k⟩⟨b_k| for a rank-one pinching; output layout is E
/// followed by the system layout.
struct StinespringIsometry {
  Matrix isometry;
  SubsystemLayout system;
  std::string environment;

  SubsystemLayout dilated_layout() const;
  DensityMatrix dilate(const DensityMatrix& rho) const;
};

StinespringIsometry pinching_stinespring(const ConditionalExpectation& pinching, const std::string& environment = "E");

struct DilationAsymmetryReport {
  double asymmetry = 0.0;                 // D(ρ‖P(ρ))
  double negative_conditional_entropy = 0.0;  // −S(E|M) on VρV†
  double deviation = 0.0;
  bool pass = false;
};

DilationAsymmetryReport verify_dilation_asymmetry(const DensityMatrix& rho, const ConditionalExpectation& pinching);

/// X ↦ U Q(U† X U) U†, where Q discards `reset_labels` and reprepares them
/// in `reset_state`. Without a unitary the conjugation is skipped; without
/// reset labels Q is the identity.
class RecoveryCandidate {
 public:
  RecoveryCandidate(SubsystemLayout layout, LabelList reset_labels, Matrix reset_state,
                    std::optional<Matrix> unitary = std::nullopt, LabelList unitary_targets = {});
  static RecoveryCandidate identity(const SubsystemLayout& layout);

  const SubsystemLayout& layout() const { return layout_; }
  Matrix apply(const Matrix& op) const;
  Matrix superoperator() const;
  ChannelCheck check() const;

 private:
  SubsystemLayout layout_;
  LabelList reset_labels_;
  LabelList kept_labels_;
  Matrix reset_state_;
  std::optional<Matrix> unitary_full_;
};

/// Which pair of saturation conditions to check.
enum class RecoverySide {
  kFromN,  // R(E_N ρ) = ρ and R(E_R ρ) = E_T ρ
  kFromT,  // R(E_T ρ) = ρ and R(E_R ρ) = E_N ρ
};

struct RecoveryReport {
  bool pass = false;
  double recovery_deviation = 0.0;
  double cross_deviation = 0.0;
};

/// Throws std::invalid_argument if the candidate is not CPTP.
RecoveryReport verify_recovery(const RecoveryCandidate& recovery, const CommutingSquare& square, RecoverySide side,
                               const DensityMatrix& rho, double tolerance = 1e-9);

}  // namespace teur
