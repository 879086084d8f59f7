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

#include "teur/games.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "teur/entropy.hpp"

namespace teur {

// ---------------------------------------------------------------------------
// RotationEnsemble

RotationEnsemble::RotationEnsemble(std::vector<double> angles, std::vector<double> probabilities)
    : angles_(std::move(angles)), probabilities_(std::move(probabilities)) {
  if (angles_.empty()) throw std::invalid_argument("RotationEnsemble: at least one angle is required");
  if (angles_.size() != probabilities_.size()) {
    throw std::invalid_argument("RotationEnsemble: angles and probabilities differ in length");
  }
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw std::invalid_argument("RotationEnsemble: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("RotationEnsemble: probabilities do not sum to 1");
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    if (!std::isfinite(angles_[i])) throw std::invalid_argument("RotationEnsemble: non-finite angle");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(angles_[i] - angles_[j]) <= 1e-12) {
        throw std::invalid_argument("RotationEnsemble: angles must be pairwise distinct");
      }
    }
  }
}

RotationEnsemble RotationEnsemble::uniform(std::vector<double> angles) {
  const std::size_t n = angles.size();
  return RotationEnsemble(std::move(angles), std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0));
}

bool RotationEnsemble::is_uniform() const {
  const double u = 1.0 / static_cast<double>(size());
  return std::all_of(probabilities_.begin(), probabilities_.end(), [&](double p) { return std::abs(p - u) <= 1e-12; });
}

double RotationEnsemble::entropy() const { return shannon_entropy(probabilities_); }

// ---------------------------------------------------------------------------
// Game states

GameInstance::GameInstance(DensityMatrix state, Generator generator, RotationEnsemble ensemble,
                           std::string register_label)
    : state_(std::move(state)),
      generator_(std::move(generator)),
      ensemble_(std::move(ensemble)),
      register_label_(std::move(register_label)) {
  if (generator_.target() != "A") throw std::invalid_argument("GameInstance: generator must act on subsystem A");
  if (state_.layout().dim("A") != generator_.dim()) {
    throw std::invalid_argument("GameInstance: generator dimension does not match subsystem A");
  }
  if (state_.layout().contains(register_label_)) {
    throw std::invalid_argument("GameInstance: register label '" + register_label_ + "' clashes with the state");
  }
}

ConditionalExpectation GameInstance::measurement() const {
  return make_pinching(state_.layout(), "A", generator_.eigenvectors());
}

Matrix control_unitary(const RotationEnsemble& ensemble, const Generator& generator) {
  const Index da = generator.dim();
  const auto n = static_cast<Index>(ensemble.size());
  Matrix u = Matrix::Zero(n * da, n * da);
  for (Index k = 0; k < n; ++k) {
    u.block(k * da, k * da, da, da) = generator.rotation(ensemble.angles()[static_cast<std::size_t>(k)]);
  }
  return u;
}

namespace {

SubsystemLayout with_register(const GameInstance& game) {
  return SubsystemLayout{{game.register_label(), static_cast<Index>(game.ensemble().size())}}.concat(
      game.state().layout());
}

}  // namespace

DensityMatrix build_kappa(const GameInstance& game) {
  const DensityMatrix& rho = game.state();
  const Index d = rho.dim();
  const auto n = static_cast<Index>(game.ensemble().size());
  Matrix kappa = Matrix::Zero(n * d, n * d);
  for (Index k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const Matrix u = embed_operator(rho.layout(), {"A"}, game.generator().rotation(game.ensemble().angles()[kk]));
    kappa.block(k * d, k * d, d, d) = game.ensemble().probabilities()[kk] * (u * rho.matrix() * u.adjoint());
  }
  return DensityMatrix(with_register(game), std::move(kappa));
}

DensityMatrix build_omega(const GameInstance& game) { return apply_condexp(game.measurement(), game.state()); }

DensityMatrix build_psi(const GameInstance& game) {
  const auto n = static_cast<Index>(game.ensemble().size());
  Vector omega(n);
  for (Index k = 0; k < n; ++k) omega(k) = std::sqrt(game.ensemble().probabilities()[static_cast<std::size_t>(k)]);
  const DensityMatrix reg(SubsystemLayout{{game.register_label(), n}}, omega * omega.adjoint());
  const DensityMatrix phi = tensor(reg, game.state());
  return apply_unitary(phi, control_unitary(game.ensemble(), game.generator()), {game.register_label(), "A"});
}

// ---------------------------------------------------------------------------
// Bound reports

double BoundReport::term(std::string_view name) const {
  for (const auto& [n, v] : terms) {
    if (n == name) return v;
  }
  throw std::out_of_range("BoundReport: no term named '" + std::string(name) + "'");
}

const BoundVariant* BoundReport::variant(std::string_view name) const {
  for (const auto& v : variants) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

const BoundVariant& BoundReport::main() const {
  const BoundVariant* v = variant(kind == GameKind::kTripartite ? "thm1" : "thm2");
  if (v == nullptr) throw std::logic_error("BoundReport: main bound missing");
  return *v;
}

namespace {

GameInstance restricted(const GameInstance& game, const LabelList& labels) {
  const SubsystemLayout& layout = game.state().layout();
  for (const auto& l : labels) {
    if (!layout.contains(l)) throw std::invalid_argument("bound report: state has no subsystem '" + l + "'");
  }
  if (layout.size() == labels.size()) return game;
  return GameInstance(partial_trace(game.state(), labels), game.generator(), game.ensemble(), game.register_label());
}

void add_variant(BoundReport& r, std::string name, double rhs) {
  r.variants.push_back({std::move(name), rhs, r.lhs - rhs});
}

bool is_product(const DensityMatrix& rho, const LabelList& first) {
  const SubsystemLayout& layout = rho.layout();
  const LabelList a = layout.restrict_to(first).labels();
  const LabelList b = layout.complement(a);
  const Matrix prod =
      place_operators(layout, a, partial_trace(rho.matrix(), layout, a), partial_trace(rho.matrix(), layout, b));
  return max_abs(prod - rho.matrix()) <= 1e-10;
}

}  // namespace

BoundReport tripartite_report(const GameInstance& full_game) {
  const GameInstance game = restricted(full_game, {"A", "B1", "B2"});
  const std::string& reg = game.register_label();
  const DensityMatrix& rho = game.state();
  const DensityMatrix kappa = build_kappa(game);
  const DensityMatrix omega = build_omega(game);

  const double s_rab1_k = marginal_entropy(kappa, {reg, "A", "B1"});
  const double s_ab1_k = marginal_entropy(kappa, {"A", "B1"});
  const double s_r_k = marginal_entropy(kappa, {reg});
  const double s_ra_k = marginal_entropy(kappa, {reg, "A"});
  const double s_ab2_w = marginal_entropy(omega, {"A", "B2"});
  const double s_b2_w = marginal_entropy(omega, {"B2"});
  const double s_ab1_w = marginal_entropy(omega, {"A", "B1"});
  const double s_a_w = marginal_entropy(omega, {"A"});
  const double s_b1_w = marginal_entropy(omega, {"B1"});
  const double s_a = marginal_entropy(rho, {"A"});
  const double s_b1 = marginal_entropy(rho, {"B1"});
  const double s_b2 = marginal_entropy(rho, {"B2"});
  const double s_b1b2 = marginal_entropy(rho, {"B1", "B2"});
  const double s_ab1b2 = von_neumann_entropy(rho);
  const EntropyValue d_ab1 = relative_entropy(partial_trace(kappa, {"A", "B1"}), partial_trace(omega, {"A", "B1"}));
  if (!d_ab1.finite) throw std::logic_error("tripartite_report: D(kappa_AB1||omega_AB1) is infinite");

  BoundReport r;
  r.kind = GameKind::kTripartite;
  const double s_r_given_ab1 = s_rab1_k - s_ab1_k;
  const double s_a_given_b2 = s_ab2_w - s_b2_w;
  const double i_a_b1_w = s_a_w + s_b1_w - s_ab1_w;
  const double i_b1_b2 = s_b1 + s_b2 - s_b1b2;
  const double s_a_given_b1b2 = s_ab1b2 - s_b1b2;
  r.lhs = s_r_given_ab1 + s_a_given_b2;
  r.terms = {
      {"S_R_given_AB1_kappa", s_r_given_ab1},
      {"S_A_given_B2_omega", s_a_given_b2},
      {"S_R_kappa", s_r_k},
      {"D_kappa_AB1_omega_AB1", d_ab1.value},
      {"I_A_B1_omega", i_a_b1_w},
      {"I_B1_B2_rho", i_b1_b2},
      {"S_A_given_B1B2_rho", s_a_given_b1b2},
      {"S_AB1B2_rho", s_ab1b2},
      {"S_A_omega", s_a_w},
      {"S_AB1_kappa", s_ab1_k},
      {"S_AB1_omega", s_ab1_w},
      {"S_B2_rho", s_b2},
      {"S_RA_kappa", s_ra_k},
      {"S_A_rho", s_a},
  };

  const double extra = i_a_b1_w - i_b1_b2 + s_a_given_b1b2;
  add_variant(r, "thm1", s_r_k + d_ab1.value + std::max(0.0, extra));
  add_variant(r, "thm1_first", s_r_k + d_ab1.value);
  add_variant(r, "thm1_second", s_r_k + s_ab1b2 + s_a_w - s_ab1_k - s_b2);
  if (game.ensemble().is_uniform()) {
    add_variant(r, "coles_tripartite", std::log2(static_cast<double>(game.ensemble().size())));
  }
  if (rho.layout().dim("B1") == 1) {
    const EntropyValue d_a = relative_entropy(partial_trace(kappa, {"A"}), partial_trace(omega, {"A"}));
    add_variant(r, "coles_bipartite_special", s_r_k + d_a.value);
  }

  r.saturation_hypothesis = rho.is_pure() || is_product(rho, {"A", "B1"});
  r.saturated = r.saturation_hypothesis && std::abs(r.main().gap) <= kSaturationTolerance;
  return r;
}

BoundReport bipartite_report(const GameInstance& full_game) {
  const GameInstance game = restricted(full_game, {"A", "B"});
  const std::string& reg = game.register_label();
  const DensityMatrix& rho = game.state();
  const DensityMatrix kappa = build_kappa(game);
  const DensityMatrix omega = build_omega(game);

  const double s_rab_k = von_neumann_entropy(kappa);
  const double s_ab_k = marginal_entropy(kappa, {"A", "B"});
  const double s_a_k = marginal_entropy(kappa, {"A"});
  const double s_r_k = marginal_entropy(kappa, {reg});
  const double s_ra_k = marginal_entropy(kappa, {reg, "A"});
  const double s_ab_w = von_neumann_entropy(omega);
  const double s_b_w = marginal_entropy(omega, {"B"});
  const double s_a_w = marginal_entropy(omega, {"A"});
  const double s_ab = von_neumann_entropy(rho);
  const double s_a = marginal_entropy(rho, {"A"});
  const double s_b = marginal_entropy(rho, {"B"});
  const EntropyValue d_a = relative_entropy(partial_trace(kappa, {"A"}), partial_trace(omega, {"A"}));
  if (!d_a.finite) throw std::logic_error("bipartite_report: D(kappa_A||omega_A) is infinite");

  BoundReport r;
  r.kind = GameKind::kBipartite;
  const double s_r_given_ab = s_rab_k - s_ab_k;
  const double s_a_given_b_w = s_ab_w - s_b_w;
  const double s_a_given_b = s_ab - s_b;
  r.lhs = s_r_given_ab + s_a_given_b_w;
  r.terms = {
      {"S_R_given_AB_kappa", s_r_given_ab},
      {"S_A_given_B_omega", s_a_given_b_w},
      {"S_R_kappa", s_r_k},
      {"D_kappa_A_omega_A", d_a.value},
      {"S_A_given_B_rho", s_a_given_b},
      {"S_A_kappa", s_a_k},
      {"S_A_omega", s_a_w},
      {"S_AB_kappa", s_ab_k},
      {"S_AB_omega", s_ab_w},
      {"S_RA_kappa", s_ra_k},
      {"S_A_rho", s_a},
  };
  add_variant(r, "thm2", s_r_k + d_a.value + s_a_given_b);

  const DensityMatrix rho_a = partial_trace(rho, {"A"});
  const Matrix& g = game.generator().matrix();
  const bool pure_eigenstate =
      rho_a.is_pure() && max_abs(g * rho_a.matrix() - rho_a.matrix() * g) <= 1e-10;
  r.saturation_hypothesis = pure_eigenstate || is_product(rho, {"A"});
  r.saturated = r.saturation_hypothesis && std::abs(r.main().gap) <= kSaturationTolerance;
  return r;
}

}  // namespace teur
