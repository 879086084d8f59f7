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
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "teur/qstate.hpp"

namespace teur {

/// Deterministic random stream keyed by (seed, stream name, index).
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard, seeded with splitmix64(splitmix64(splitmix64(seed) ^
/// fnv1a64(stream)) ^ index). Uniforms take the top 53 bits of each draw;
/// normals use the Box–Muller transform on (1 − u1, u2), returning the
/// cosine branch first and the sine branch on the following call.
class SeededSource {
 public:
  SeededSource(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Real and imaginary parts independent standard normals.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

/// Normalized vector of independent complex normals.
PureState haar_pure(const SubsystemLayout& layout, SeededSource& source);
PureState haar_pure(Index dim, SeededSource& source);

/// MM†/Tr(MM†) with M a dim × rank complex Gaussian matrix.
DensityMatrix ginibre_mixed(const SubsystemLayout& layout, Index rank, SeededSource& source);
DensityMatrix ginibre_mixed(Index dim, Index rank, SeededSource& source);

/// (1 − eps) ρ + eps η with η a full-rank Ginibre state on ρ's layout.
DensityMatrix mix_noise(const DensityMatrix& rho, double eps, SeededSource& source);

/// n independent uniform draws on [0, 2π), pairwise separated by > 1e-12.
std::vector<double> random_angles(int n, SeededSource& source);

/// Gaussian Hermitian matrix (X + X†)/2.
Matrix random_hermitian(Index dim, SeededSource& source);

/// Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(Index dim, SeededSource& source);

/// |ψ⟩⟨ψ| on every subsystem, |ψ⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩.
/// One-dimensional subsystems carry the trivial state.
DensityMatrix theta_family(double theta, const SubsystemLayout& layout);
/// Qubit layout (A, B) for two parties, (A, B1, …, B{n−1}) otherwise.
DensityMatrix theta_family(double theta, int parties);

}  // namespace teur
