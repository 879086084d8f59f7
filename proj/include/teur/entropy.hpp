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

#include <limits>
#include <span>

#include "teur/qstate.hpp"

// All entropies are in bits.

namespace teur {

class ConditionalExpectation;

/// Eigenvalues below this are treated as exact zeros.
inline constexpr double kEigenvalueClip = 1e-12;

struct EntropyValue {
  double value = 0.0;
  bool finite = true;

  static EntropyValue infinite() { return {std::numeric_limits<double>::infinity(), false}; }
  operator double() const { return value; }
};

/// -Σ p log2 p over the non-clipped entries.
double shannon_entropy(std::span<const double> probabilities);

EntropyValue von_neumann_entropy(const DensityMatrix& state);

/// S of the marginal on `labels`; the empty list gives 0.
EntropyValue marginal_entropy(const DensityMatrix& state, const LabelList& labels);

/// S(target | condition) = S(target ∪ condition) − S(condition).
EntropyValue conditional_entropy(const DensityMatrix& state, const LabelList& target, const LabelList& condition);

EntropyValue mutual_information(const DensityMatrix& state, const LabelList& x, const LabelList& y);

/// D(ρ‖σ), evaluated in the eigenbasis of σ. Infinite when ρ has weight
/// outside the support of σ.
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// D(ρ‖E(ρ)). Also evaluates S(E(ρ)) − S(ρ) and throws std::runtime_error
/// if the two disagree by more than 1e-9.
EntropyValue asymmetry_measure(const DensityMatrix& rho, const ConditionalExpectation& expectation);

}  // namespace teur
