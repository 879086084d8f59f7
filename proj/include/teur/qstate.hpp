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

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace teur {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Ordered list of subsystem labels. Order is significant wherever an
/// operator is indexed by it (e.g. the targets of a unitary).
using LabelList = std::vector<std::string>;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPositive = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kPureNorm = 1e-12;
inline constexpr double kReconstruction = 1e-12;
}  // namespace tol

struct Subsystem {
  std::string label;
  Index dim = 1;

  bool operator==(const Subsystem&) const = default;
};

/// Ordered tensor-product structure. Composite indices are row-major over
/// the subsystem order: the last subsystem varies fastest.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::vector<Subsystem> parts);
  SubsystemLayout(std::initializer_list<Subsystem> parts)
      : SubsystemLayout(std::vector<Subsystem>(parts)) {}

  const std::vector<Subsystem>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  Index total_dim() const { return total_dim_; }

  bool contains(std::string_view label) const;
  /// Position of `label`; throws std::invalid_argument if absent.
  std::size_t position(std::string_view label) const;
  Index dim(std::string_view label) const;
  /// Product of the dimensions of `labels` (1 for an empty list).
  Index dim_of(const LabelList& labels) const;
  LabelList labels() const;

  /// Sub-layout on `labels`, in this layout's order.
  SubsystemLayout restrict_to(const LabelList& labels) const;
  /// Labels not in `labels`, in this layout's order.
  LabelList complement(const LabelList& labels) const;
  /// Concatenation; labels must be disjoint.
  SubsystemLayout concat(const SubsystemLayout& other) const;

  bool operator==(const SubsystemLayout& o) const { return parts_ == o.parts_; }

 private:
  std::vector<Subsystem> parts_;
  Index total_dim_ = 1;
};

/// For every composite index of a layout, the index it induces on an
/// ordered label list and on the complementary labels (layout order).
struct IndexSplit {
  Index selected_dim = 1;
  Index rest_dim = 1;
  std::vector<Index> selected;
  std::vector<Index> rest;
};

IndexSplit split_indices(const SubsystemLayout& layout, const LabelList& selected);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

/// Spectral decomposition of a Hermitian matrix. The input is averaged with
/// its adjoint before decomposition.
HermitianEigen eig_hermitian(const Matrix& h);

double max_abs(const Matrix& m);
double hermiticity_deviation(const Matrix& m);
bool is_unitary(const Matrix& u, double tolerance = tol::kUnitary);

Matrix kron(const Matrix& a, const Matrix& b);

// Operator-level primitives. These act on arbitrary (not necessarily
// positive or normalized) operators, which the superoperator machinery needs.

/// Tr over the complement of `keep`; result indexed in layout order of `keep`.
Matrix partial_trace(const Matrix& op, const SubsystemLayout& layout, const LabelList& keep);

/// `op` on `labels` (indexed in the given order) tensored with `rest` on
/// the remaining labels (layout order).
Matrix place_operators(const SubsystemLayout& layout, const LabelList& labels, const Matrix& op,
                       const Matrix& rest);

/// `op` on `labels` tensored with the identity elsewhere.
Matrix embed_operator(const SubsystemLayout& layout, const LabelList& labels, const Matrix& op);

class PureState {
 public:
  PureState(SubsystemLayout layout, Vector amplitudes);

  const SubsystemLayout& layout() const { return layout_; }
  const Vector& vector() const { return vector_; }

 private:
  SubsystemLayout layout_;
  Vector vector_;
};

/// Trace-one positive semidefinite Hermitian operator on a layout. The
/// spectrum is computed once at construction and kept for entropy use.
class DensityMatrix {
 public:
  DensityMatrix(SubsystemLayout layout, Matrix matrix);
  explicit DensityMatrix(const PureState& pure);

  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  /// Eigenvalues, ascending, not clipped.
  const RealVector& spectrum() const { return spectrum_; }
  double purity() const;
  bool is_pure(double tolerance = 1e-10) const { return purity() >= 1.0 - tolerance; }

  /// Same operator on a relabelled layout with identical dimensions.
  DensityMatrix relabel(const SubsystemLayout& layout) const;

 private:
  SubsystemLayout layout_;
  Matrix matrix_;
  RealVector spectrum_;
};

DensityMatrix maximally_mixed(const SubsystemLayout& layout);
DensityMatrix basis_state(const SubsystemLayout& layout, std::span<const Index> digits);

/// Kronecker product in argument order; labels must be disjoint.
DensityMatrix tensor(std::span<const DensityMatrix> states);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& state, const LabelList& keep);

/// U ρ U† with U acting on `targets` (in the given order). Rejects
/// non-unitary U and dimension mismatches.
DensityMatrix apply_unitary(const DensityMatrix& state, const Matrix& unitary, const LabelList& targets);

/// Hermitian observable on one subsystem together with its eigenbasis.
class Generator {
 public:
  /// Rejects a spectrum with gaps below 1e-10, since the eigenbasis inside
  /// a degenerate block would be arbitrary. Use the explicit-basis overload.
  Generator(std::string target, const Matrix& hermitian);
  /// `basis` columns must be orthonormal eigenvectors of `hermitian`.
  Generator(std::string target, const Matrix& hermitian, const Matrix& basis);

  const std::string& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  Index dim() const { return matrix_.rows(); }

  /// exp(-i G r).
  Matrix rotation(double r) const;

 private:
  std::string target_;
  Matrix matrix_;
  RealVector eigenvalues_;
  Matrix eigenvectors_;
};

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace teur
