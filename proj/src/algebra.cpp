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

#include "teur/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "teur/ensembles.hpp"

namespace teur {

namespace {

constexpr double kProjectorTolerance = 1e-10;

// Row-major superoperator: column i*d+j holds vec(map(|i><j|)).
Matrix materialize(const std::function<Matrix(const Matrix&)>& map, Index d) {
  Matrix sup(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      unit(i, j) = 1.0;
      const Matrix image = map(unit);
      unit(i, j) = 0.0;
      for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d; ++b) sup(a * d + b, i * d + j) = image(a, b);
      }
    }
  }
  return sup;
}

Matrix choi_from_superoperator(const Matrix& sup, Index d) {
  Matrix choi(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index a = 0; a < d; ++a) {
      for (Index j = 0; j < d; ++j) {
        for (Index b = 0; b < d; ++b) choi(i * d + a, j * d + b) = sup(a * d + b, i * d + j);
      }
    }
  }
  return choi;
}

void require_layout(const SubsystemLayout& expected, const SubsystemLayout& actual, const char* what) {
  if (!(expected == actual)) throw std::invalid_argument(std::string(what) + ": layout mismatch");
}

}  // namespace

struct ConditionalExpectation::Cache {
  std::once_flag once;
  Matrix superoperator;
};

ConditionalExpectation::ConditionalExpectation(SubsystemLayout layout, Kind kind)
    : layout_(std::move(layout)),
      kind_(std::make_shared<const Kind>(std::move(kind))),
      cache_(std::make_shared<Cache>()) {}

std::string ConditionalExpectation::describe() const {
  struct Visitor {
    std::string operator()(const Pinching& p) const {
      return (p.basis.size() ? "pinch(" : "block-pinch(") + p.target + ")";
    }
    std::string operator()(const TraceEmbed& t) const {
      std::string s = "embed(";
      for (std::size_t i = 0; i < t.discard.size(); ++i) s += (i ? "," : "") + t.discard[i];
      return s + ")";
    }
    std::string operator()(const Compose& c) const {
      if (c.maps.empty()) return "id";
      std::string s;
      for (std::size_t i = 0; i < c.maps.size(); ++i) s += (i ? " o " : "") + c.maps[i].describe();
      return s;
    }
    std::string operator()(const Custom& c) const { return "custom(" + c.name + ")"; }
  };
  return std::visit(Visitor{}, *kind_);
}

Matrix ConditionalExpectation::apply(const Matrix& op) const {
  const Index d = layout_.total_dim();
  if (op.rows() != d || op.cols() != d) throw std::invalid_argument("ConditionalExpectation: operator size mismatch");

  struct Visitor {
    const SubsystemLayout& layout;
    const Matrix& op;

    Matrix operator()(const Pinching& p) const {
      Matrix out = Matrix::Zero(op.rows(), op.cols());
      for (const auto& proj : p.projectors) {
        const Matrix full = embed_operator(layout, {p.target}, proj);
        out.noalias() += full * op * full;
      }
      return out;
    }
    Matrix operator()(const TraceEmbed& t) const {
      const LabelList kept = layout.complement(t.discard);
      const Index dd = layout.dim_of(t.discard);
      const Matrix marginal = partial_trace(op, layout, kept);
      return place_operators(layout, kept, marginal, Matrix::Identity(dd, dd) / static_cast<double>(dd));
    }
    Matrix operator()(const Compose& c) const {
      Matrix out = op;
      for (auto it = c.maps.rbegin(); it != c.maps.rend(); ++it) out = it->apply(out);
      return out;
    }
    Matrix operator()(const Custom& c) const { return c.map(op); }
  };
  return std::visit(Visitor{layout_, op}, *kind_);
}

const Matrix& ConditionalExpectation::superoperator() const {
  std::call_once(cache_->once, [this] {
    cache_->superoperator = materialize([this](const Matrix& x) { return apply(x); }, layout_.total_dim());
  });
  return cache_->superoperator;
}

Matrix ConditionalExpectation::choi() const { return choi_from_superoperator(superoperator(), layout_.total_dim()); }

ConditionalExpectation make_pinching(const SubsystemLayout& layout, const std::string& target, const Matrix& basis) {
  const Index d = layout.dim(target);
  if (basis.rows() != d || basis.cols() != d) {
    throw std::invalid_argument("make_pinching: basis must be a square matrix spanning the target subsystem");
  }
  if (max_abs(basis.adjoint() * basis - Matrix::Identity(d, d)) > kProjectorTolerance) {
    throw std::invalid_argument("make_pinching: basis is not orthonormal");
  }
  ConditionalExpectation::Pinching p{target, {}, basis};
  for (Index k = 0; k < d; ++k) p.projectors.push_back(basis.col(k) * basis.col(k).adjoint());
  return ConditionalExpectation(layout, std::move(p));
}

ConditionalExpectation make_block_pinching(const SubsystemLayout& layout, const std::string& target,
                                           std::vector<Matrix> projectors) {
  const Index d = layout.dim(target);
  if (projectors.empty()) throw std::invalid_argument("make_block_pinching: no projectors");
  Matrix sum = Matrix::Zero(d, d);
  bool rank_one = true;
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    const Matrix& p = projectors[a];
    if (p.rows() != d || p.cols() != d) throw std::invalid_argument("make_block_pinching: projector has wrong shape");
    if (hermiticity_deviation(p) > kProjectorTolerance || max_abs(p * p - p) > kProjectorTolerance) {
      throw std::invalid_argument("make_block_pinching: not an orthogonal projector");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (max_abs(p * projectors[b]) > kProjectorTolerance) {
        throw std::invalid_argument("make_block_pinching: projectors are not mutually orthogonal");
      }
    }
    rank_one = rank_one && std::abs(p.trace().real() - 1.0) <= kProjectorTolerance;
    sum += p;
  }
  if (max_abs(sum - Matrix::Identity(d, d)) > kProjectorTolerance) {
    throw std::invalid_argument("make_block_pinching: projectors do not resolve the identity");
  }
  Matrix basis;
  if (rank_one) {
    basis.resize(d, d);
    for (Index k = 0; k < d; ++k) {
      const HermitianEigen e = eig_hermitian(projectors[static_cast<std::size_t>(k)]);
      basis.col(k) = e.vectors.col(d - 1);
    }
  }
  return ConditionalExpectation(layout, ConditionalExpectation::Pinching{target, std::move(projectors), basis});
}

ConditionalExpectation make_trace_embed(const SubsystemLayout& layout, const LabelList& discard) {
  // restrict_to validates labels and uniqueness.
  const LabelList ordered = layout.restrict_to(discard).labels();
  return ConditionalExpectation(layout, ConditionalExpectation::TraceEmbed{ordered});
}

ConditionalExpectation compose(const SubsystemLayout& layout, std::vector<ConditionalExpectation> maps) {
  for (const auto& m : maps) require_layout(layout, m.layout(), "compose");
  return ConditionalExpectation(layout, ConditionalExpectation::Compose{std::move(maps)});
}

ConditionalExpectation identity_expectation(const SubsystemLayout& layout) { return compose(layout, {}); }

namespace testing {
ConditionalExpectation make_custom_map(const SubsystemLayout& layout, std::string name,
                                       std::function<Matrix(const Matrix&)> map) {
  return ConditionalExpectation(layout, ConditionalExpectation::Custom{std::move(name), std::move(map)});
}
}  // namespace testing

DensityMatrix apply_condexp(const ConditionalExpectation& expectation, const DensityMatrix& rho) {
  require_layout(expectation.layout(), rho.layout(), "apply_condexp");
  return DensityMatrix(rho.layout(), expectation.apply(rho.matrix()));
}

// ---------------------------------------------------------------------------
// Verification

ChannelCheck check_channel(const Matrix& superoperator, Index dim, double tolerance) {
  ChannelCheck c;
  const Matrix choi = choi_from_superoperator(superoperator, dim);
  c.hermiticity_deviation = hermiticity_deviation(choi);
  if (c.hermiticity_deviation <= tolerance) {
    c.min_choi_eigenvalue = eig_hermitian(choi).values(0);
    c.completely_positive = c.min_choi_eigenvalue >= -tolerance;
  } else {
    c.min_choi_eigenvalue = -std::numeric_limits<double>::infinity();
  }
  Matrix traced = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      for (Index a = 0; a < dim; ++a) traced(i, j) += choi(i * dim + a, j * dim + a);
    }
  }
  c.trace_deviation = max_abs(traced - Matrix::Identity(dim, dim));
  c.trace_preserving = c.trace_deviation <= tolerance;
  return c;
}

CondExpReport verify_condexp(const ConditionalExpectation& expectation, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_condexp: samples must be >= 1");
  constexpr double kTol = 1e-10;
  const Index d = expectation.layout().total_dim();
  CondExpReport r;

  const Matrix& sup = expectation.superoperator();
  r.unitality_deviation = max_abs(expectation.apply(Matrix::Identity(d, d)) - Matrix::Identity(d, d));
  r.idempotence_deviation = max_abs(sup * sup - sup);
  const ChannelCheck channel = check_channel(sup, d, kTol);
  r.trace_deviation = channel.trace_deviation;
  r.min_choi_eigenvalue = channel.min_choi_eigenvalue;

  SeededSource source(seed, "verify_condexp");
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho = ginibre_mixed(expectation.layout(), d, source);
    const Matrix sigma = expectation.apply(random_hermitian(d, source));
    const Complex lhs = (sigma * expectation.apply(rho.matrix())).trace();
    const Complex rhs = (sigma * rho.matrix()).trace();
    r.max_duality_deviation = std::max(r.max_duality_deviation, std::abs(lhs - rhs));
  }

  auto check = [&](bool ok, const std::string& what, double value) {
    if (ok) return;
    std::ostringstream os;
    os << expectation.describe() << ": " << what << " (" << value << ")";
    r.failures.push_back(os.str());
  };
  check(r.unitality_deviation <= kTol, "not unital", r.unitality_deviation);
  check(r.idempotence_deviation <= kTol, "not idempotent", r.idempotence_deviation);
  check(channel.completely_positive, "not completely positive", r.min_choi_eigenvalue);
  check(channel.trace_preserving, "not trace preserving", r.trace_deviation);
  check(r.max_duality_deviation <= kTol, "trace duality violated", r.max_duality_deviation);
  r.pass = r.failures.empty();
  return r;
}

CommutingSquareCheck verify_commuting_square(const ConditionalExpectation& e_n, const ConditionalExpectation& e_t) {
  require_layout(e_n.layout(), e_t.layout(), "verify_commuting_square");
  const SubsystemLayout& layout = e_n.layout();
  ConditionalExpectation nt = compose(layout, {e_n, e_t});
  const ConditionalExpectation tn = compose(layout, {e_t, e_n});
  CommutingSquareCheck c;
  c.deviation = max_abs(nt.superoperator() - tn.superoperator());
  c.commutes = c.deviation <= kCommutationTolerance;
  if (c.commutes) c.square = CommutingSquare{e_n, e_t, std::move(nt)};
  return c;
}

SquareEntropyReport square_entropy_report(const CommutingSquare& square, const DensityMatrix& rho) {
  SquareEntropyReport r;
  r.entropy_n = von_neumann_entropy(apply_condexp(square.e_n, rho));
  r.entropy_t = von_neumann_entropy(apply_condexp(square.e_t, rho));
  r.entropy_m = von_neumann_entropy(rho);
  r.entropy_r = von_neumann_entropy(apply_condexp(square.e_r, rho));
  r.value = r.entropy_n + r.entropy_t - r.entropy_m - r.entropy_r;
  return r;
}

// ---------------------------------------------------------------------------
// Stinespring dilation of a pinching

SubsystemLayout StinespringIsometry::dilated_layout() const {
  const Index d_env = isometry.rows() / system.total_dim();
  return SubsystemLayout{{environment, d_env}}.concat(system);
}

DensityMatrix StinespringIsometry::dilate(const DensityMatrix& rho) const {
  require_layout(system, rho.layout(), "StinespringIsometry::dilate");
  return DensityMatrix(dilated_layout(), isometry * rho.matrix() * isometry.adjoint());
}

StinespringIsometry pinching_stinespring(const ConditionalExpectation& pinching, const std::string& environment) {
  const auto* p = std::get_if<ConditionalExpectation::Pinching>(&pinching.kind());
  if (p == nullptr) throw std::invalid_argument("pinching_stinespring: not a pinching");
  if (p->basis.size() == 0) throw std::invalid_argument("pinching_stinespring: block pinching has no rank-one dilation");
  const SubsystemLayout& layout = pinching.layout();
  if (layout.contains(environment)) {
    throw std::invalid_argument("pinching_stinespring: environment label '" + environment + "' already in use");
  }
  const Index d = layout.total_dim();
  const Index d_env = p->basis.cols();
  Matrix v = Matrix::Zero(d_env * d, d);
  for (Index k = 0; k < d_env; ++k) {
    v.block(k * d, 0, d, d) = embed_operator(layout, {p->target}, p->projectors[static_cast<std::size_t>(k)]);
  }
  return StinespringIsometry{std::move(v), layout, environment};
}

DilationAsymmetryReport verify_dilation_asymmetry(const DensityMatrix& rho, const ConditionalExpectation& pinching) {
  const StinespringIsometry iso = pinching_stinespring(pinching);
  const DensityMatrix dilated = iso.dilate(rho);
  DilationAsymmetryReport r;
  r.asymmetry = asymmetry_measure(rho, pinching);
  r.negative_conditional_entropy = -conditional_entropy(dilated, {iso.environment}, rho.layout().labels()).value;
  r.deviation = std::abs(r.asymmetry - r.negative_conditional_entropy);
  r.pass = r.deviation <= 1e-9;
  return r;
}

// ---------------------------------------------------------------------------
// Recovery maps

RecoveryCandidate::RecoveryCandidate(SubsystemLayout layout, LabelList reset_labels, Matrix reset_state,
                                     std::optional<Matrix> unitary, LabelList unitary_targets)
    : layout_(std::move(layout)), reset_labels_(std::move(reset_labels)), reset_state_(std::move(reset_state)) {
  const Index dc = layout_.dim_of(reset_labels_);
  (void)layout_.restrict_to(reset_labels_);
  if (!reset_labels_.empty() && (reset_state_.rows() != dc || reset_state_.cols() != dc)) {
    throw std::invalid_argument("RecoveryCandidate: reprepared state does not match reset labels");
  }
  kept_labels_ = layout_.complement(reset_labels_);
  if (unitary) {
    if (unitary->rows() != layout_.dim_of(unitary_targets) || !is_unitary(*unitary)) {
      throw std::invalid_argument("RecoveryCandidate: conjugation matrix is not a unitary on its targets");
    }
    unitary_full_ = embed_operator(layout_, unitary_targets, *unitary);
  }
}

RecoveryCandidate RecoveryCandidate::identity(const SubsystemLayout& layout) {
  return RecoveryCandidate(layout, {}, Matrix());
}

Matrix RecoveryCandidate::apply(const Matrix& op) const {
  Matrix x = unitary_full_ ? Matrix(unitary_full_->adjoint() * op * *unitary_full_) : op;
  if (!reset_labels_.empty()) {
    x = place_operators(layout_, reset_labels_, reset_state_, partial_trace(x, layout_, kept_labels_));
  }
  if (unitary_full_) x = *unitary_full_ * x * unitary_full_->adjoint();
  return x;
}

Matrix RecoveryCandidate::superoperator() const {
  return materialize([this](const Matrix& x) { return apply(x); }, layout_.total_dim());
}

ChannelCheck RecoveryCandidate::check() const { return check_channel(superoperator(), layout_.total_dim()); }

RecoveryReport verify_recovery(const RecoveryCandidate& recovery, const CommutingSquare& square, RecoverySide side,
                               const DensityMatrix& rho, double tolerance) {
  require_layout(square.e_n.layout(), rho.layout(), "verify_recovery");
  require_layout(recovery.layout(), rho.layout(), "verify_recovery");
  const ChannelCheck channel = recovery.check();
  if (!channel.ok()) {
    std::ostringstream os;
    os << "verify_recovery: candidate is not CPTP (min Choi eigenvalue " << channel.min_choi_eigenvalue
       << ", trace deviation " << channel.trace_deviation << ")";
    throw std::invalid_argument(os.str());
  }
  const ConditionalExpectation& big = side == RecoverySide::kFromN ? square.e_n : square.e_t;
  const ConditionalExpectation& other = side == RecoverySide::kFromN ? square.e_t : square.e_n;
  const Matrix& m = rho.matrix();

  RecoveryReport r;
  r.recovery_deviation = max_abs(recovery.apply(big.apply(m)) - m);
  r.cross_deviation = max_abs(recovery.apply(square.e_r.apply(m)) - other.apply(m));
  r.pass = r.recovery_deviation <= tolerance && r.cross_deviation <= tolerance;
  return r;
}

}  // namespace teur
