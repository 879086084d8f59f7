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

#include "teur/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace teur {

namespace {

void require_unique(const LabelList& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw std::invalid_argument(std::string(what) + ": duplicate label '" + l + "'");
    }
  }
}

std::string describe(const SubsystemLayout& layout) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (i) os << ",";
    os << layout.parts()[i].label << ":" << layout.parts()[i].dim;
  }
  os << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
  std::set<std::string> seen;
  for (const auto& p : parts_) {
    if (p.label.empty()) throw std::invalid_argument("subsystem label must be non-empty");
    if (p.dim < 1) {
      throw std::invalid_argument("subsystem '" + p.label + "' has dimension < 1");
    }
    if (!seen.insert(p.label).second) {
      throw std::invalid_argument("duplicate subsystem label '" + p.label + "'");
    }
    total_dim_ *= p.dim;
  }
}

bool SubsystemLayout::contains(std::string_view label) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SubsystemLayout::position(std::string_view label) const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].label == label) return i;
  }
  throw std::invalid_argument("unknown subsystem label '" + std::string(label) + "' in layout " +
                              describe(*this));
}

Index SubsystemLayout::dim(std::string_view label) const { return parts_[position(label)].dim; }

Index SubsystemLayout::dim_of(const LabelList& labels) const {
  Index d = 1;
  for (const auto& l : labels) d *= dim(l);
  return d;
}

LabelList SubsystemLayout::labels() const {
  LabelList out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.label);
  return out;
}

SubsystemLayout SubsystemLayout::restrict_to(const LabelList& labels) const {
  require_unique(labels, "restrict_to");
  for (const auto& l : labels) (void)position(l);
  std::vector<Subsystem> kept;
  for (const auto& p : parts_) {
    if (std::find(labels.begin(), labels.end(), p.label) != labels.end()) kept.push_back(p);
  }
  return SubsystemLayout(std::move(kept));
}

LabelList SubsystemLayout::complement(const LabelList& labels) const {
  for (const auto& l : labels) (void)position(l);
  LabelList out;
  for (const auto& p : parts_) {
    if (std::find(labels.begin(), labels.end(), p.label) == labels.end()) out.push_back(p.label);
  }
  return out;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<Subsystem> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return SubsystemLayout(std::move(all));
}

// ---------------------------------------------------------------------------
// Index bookkeeping

IndexSplit split_indices(const SubsystemLayout& layout, const LabelList& selected) {
  require_unique(selected, "split_indices");
  const std::size_t n = layout.size();
  std::vector<std::size_t> sel_pos;
  for (const auto& l : selected) sel_pos.push_back(layout.position(l));

  // Strides of each layout position inside the selected / rest index.
  std::vector<Index> sel_stride(n, 0), rest_stride(n, 0);
  std::vector<bool> is_selected(n, false);
  IndexSplit split;
  for (auto it = sel_pos.rbegin(); it != sel_pos.rend(); ++it) {
    sel_stride[*it] = split.selected_dim;
    split.selected_dim *= layout.parts()[*it].dim;
    is_selected[*it] = true;
  }
  for (std::size_t s = n; s-- > 0;) {
    if (is_selected[s]) continue;
    rest_stride[s] = split.rest_dim;
    split.rest_dim *= layout.parts()[s].dim;
  }

  const Index total = layout.total_dim();
  split.selected.resize(static_cast<std::size_t>(total));
  split.rest.resize(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) {
    Index rem = i, sel = 0, rest = 0;
    for (std::size_t s = n; s-- > 0;) {
      const Index d = layout.parts()[s].dim;
      const Index digit = rem % d;
      rem /= d;
      if (is_selected[s]) {
        sel += digit * sel_stride[s];
      } else {
        rest += digit * rest_stride[s];
      }
    }
    split.selected[static_cast<std::size_t>(i)] = sel;
    split.rest[static_cast<std::size_t>(i)] = rest;
  }
  return split;
}

// ---------------------------------------------------------------------------
// Dense helpers

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_deviation(const Matrix& m) { return max_abs(m - m.adjoint()); }

bool is_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) <= tolerance;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianEigen eig_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eig_hermitian: matrix is not square");
  if (hermiticity_deviation(h) > tol::kHermitian) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix partial_trace(const Matrix& op, const SubsystemLayout& layout, const LabelList& keep) {
  if (op.rows() != layout.total_dim() || op.cols() != layout.total_dim()) {
    throw std::invalid_argument("partial_trace: operator size does not match layout " + describe(layout));
  }
  const LabelList ordered = layout.restrict_to(keep).labels();
  const IndexSplit split = split_indices(layout, ordered);

  std::vector<std::vector<Index>> buckets(static_cast<std::size_t>(split.rest_dim));
  for (Index i = 0; i < layout.total_dim(); ++i) {
    buckets[static_cast<std::size_t>(split.rest[static_cast<std::size_t>(i)])].push_back(i);
  }
  Matrix out = Matrix::Zero(split.selected_dim, split.selected_dim);
  for (const auto& bucket : buckets) {
    for (Index a : bucket) {
      const Index sa = split.selected[static_cast<std::size_t>(a)];
      for (Index b : bucket) {
        out(sa, split.selected[static_cast<std::size_t>(b)]) += op(a, b);
      }
    }
  }
  return out;
}

Matrix place_operators(const SubsystemLayout& layout, const LabelList& labels, const Matrix& op,
                       const Matrix& rest) {
  const IndexSplit split = split_indices(layout, labels);
  if (op.rows() != split.selected_dim || op.cols() != split.selected_dim) {
    throw std::invalid_argument("place_operators: operator dimension does not match target labels");
  }
  if (rest.rows() != split.rest_dim || rest.cols() != split.rest_dim) {
    throw std::invalid_argument("place_operators: complement operator dimension mismatch");
  }
  const Index d = layout.total_dim();
  Matrix out(d, d);
  for (Index i = 0; i < d; ++i) {
    const auto si = split.selected[static_cast<std::size_t>(i)];
    const auto ri = split.rest[static_cast<std::size_t>(i)];
    for (Index j = 0; j < d; ++j) {
      out(i, j) = op(si, split.selected[static_cast<std::size_t>(j)]) *
                  rest(ri, split.rest[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

Matrix embed_operator(const SubsystemLayout& layout, const LabelList& labels, const Matrix& op) {
  const Index rest_dim = layout.total_dim() / std::max<Index>(1, layout.dim_of(labels));
  return place_operators(layout, labels, op, Matrix::Identity(rest_dim, rest_dim));
}

// ---------------------------------------------------------------------------
// States

PureState::PureState(SubsystemLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), vector_(std::move(amplitudes)) {
  if (vector_.size() != layout_.total_dim()) {
    throw std::invalid_argument("PureState: vector length does not match layout " + describe(layout_));
  }
  if (std::abs(vector_.squaredNorm() - 1.0) > tol::kPureNorm) {
    throw std::invalid_argument("PureState: vector is not normalized");
  }
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const Index d = layout_.total_dim();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw std::invalid_argument("DensityMatrix: matrix size does not match layout " + describe(layout_));
  }
  if (!matrix_.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (hermiticity_deviation(matrix_) > tol::kHermitian) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol::kTrace) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << trace << " is not 1";
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  spectrum_ = solver.eigenvalues();
  if (spectrum_(0) < -tol::kPositive) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << spectrum_(0);
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix::DensityMatrix(const PureState& pure)
    : DensityMatrix(pure.layout(), pure.vector() * pure.vector().adjoint()) {}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityMatrix DensityMatrix::relabel(const SubsystemLayout& layout) const {
  if (layout.size() != layout_.size()) throw std::invalid_argument("relabel: subsystem count differs");
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout.parts()[i].dim != layout_.parts()[i].dim) {
      throw std::invalid_argument("relabel: dimensions differ");
    }
  }
  DensityMatrix out = *this;
  out.layout_ = layout;
  return out;
}

DensityMatrix maximally_mixed(const SubsystemLayout& layout) {
  const Index d = layout.total_dim();
  return DensityMatrix(layout, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix basis_state(const SubsystemLayout& layout, std::span<const Index> digits) {
  if (digits.size() != layout.size()) throw std::invalid_argument("basis_state: one digit per subsystem");
  Index idx = 0;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (digits[s] < 0 || digits[s] >= layout.parts()[s].dim) {
      throw std::invalid_argument("basis_state: digit out of range");
    }
    idx = idx * layout.parts()[s].dim + digits[s];
  }
  Matrix m = Matrix::Zero(layout.total_dim(), layout.total_dim());
  m(idx, idx) = 1.0;
  return DensityMatrix(layout, std::move(m));
}

DensityMatrix tensor(std::span<const DensityMatrix> states) {
  SubsystemLayout layout;
  Matrix m = Matrix::Ones(1, 1);
  for (const auto& s : states) {
    layout = layout.concat(s.layout());
    m = kron(m, s.matrix());
  }
  return DensityMatrix(std::move(layout), std::move(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const DensityMatrix both[] = {a, b};
  return tensor(both);
}

DensityMatrix partial_trace(const DensityMatrix& state, const LabelList& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be non-empty");
  SubsystemLayout kept = state.layout().restrict_to(keep);
  return DensityMatrix(std::move(kept), partial_trace(state.matrix(), state.layout(), keep));
}

DensityMatrix apply_unitary(const DensityMatrix& state, const Matrix& unitary, const LabelList& targets) {
  if (targets.empty()) throw std::invalid_argument("apply_unitary: no target labels");
  if (unitary.rows() != state.layout().dim_of(targets) || unitary.cols() != unitary.rows()) {
    throw std::invalid_argument("apply_unitary: unitary dimension does not match targets");
  }
  if (!is_unitary(unitary)) throw std::invalid_argument("apply_unitary: matrix is not unitary");
  const Matrix full = embed_operator(state.layout(), targets, unitary);
  return DensityMatrix(state.layout(), full * state.matrix() * full.adjoint());
}

// ---------------------------------------------------------------------------
// Generator

namespace {

void check_generator_matrix(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw std::invalid_argument("Generator: matrix must be square");
  if (hermiticity_deviation(h) > tol::kHermitian) {
    throw std::invalid_argument("Generator: matrix is not Hermitian");
  }
}

constexpr double kDegeneracyGap = 1e-10;

}  // namespace

Generator::Generator(std::string target, const Matrix& hermitian) : target_(std::move(target)) {
  check_generator_matrix(hermitian);
  matrix_ = 0.5 * (hermitian + hermitian.adjoint());
  auto eig = eig_hermitian(matrix_);
  for (Index k = 1; k < eig.values.size(); ++k) {
    if (eig.values(k) - eig.values(k - 1) < kDegeneracyGap) {
      throw std::invalid_argument(
          "Generator: degenerate spectrum; the eigenbasis must be supplied explicitly");
    }
  }
  eigenvalues_ = std::move(eig.values);
  eigenvectors_ = std::move(eig.vectors);
}

Generator::Generator(std::string target, const Matrix& hermitian, const Matrix& basis)
    : target_(std::move(target)) {
  check_generator_matrix(hermitian);
  matrix_ = 0.5 * (hermitian + hermitian.adjoint());
  const Index d = matrix_.rows();
  if (basis.rows() != d || basis.cols() != d) throw std::invalid_argument("Generator: basis has wrong shape");
  if (max_abs(basis.adjoint() * basis - Matrix::Identity(d, d)) > tol::kHermitian) {
    throw std::invalid_argument("Generator: basis is not orthonormal");
  }
  const double scale = std::max(1.0, max_abs(matrix_));
  RealVector values(d);
  for (Index k = 0; k < d; ++k) {
    const Vector b = basis.col(k);
    const Complex g = b.dot(matrix_ * b);
    values(k) = g.real();
    if (max_abs(matrix_ * b - g * b) > tol::kHermitian * scale) {
      throw std::invalid_argument("Generator: basis vector is not an eigenvector");
    }
  }
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values(a) < values(b); });
  eigenvalues_.resize(d);
  eigenvectors_.resize(d, d);
  for (Index k = 0; k < d; ++k) {
    eigenvalues_(k) = values(order[static_cast<std::size_t>(k)]);
    eigenvectors_.col(k) = basis.col(order[static_cast<std::size_t>(k)]);
  }
}

Matrix Generator::rotation(double r) const {
  Vector phases(eigenvalues_.size());
  for (Index k = 0; k < eigenvalues_.size(); ++k) phases(k) = std::polar(1.0, -eigenvalues_(k) * r);
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace teur
