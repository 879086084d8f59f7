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

#include "teur/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "teur/algebra.hpp"

namespace teur {

namespace {

void require_disjoint(const LabelList& x, const LabelList& y, const char* what) {
  for (const auto& l : x) {
    if (std::find(y.begin(), y.end(), l) != y.end()) {
      throw std::invalid_argument(std::string(what) + ": label sets overlap on '" + l + "'");
    }
  }
}

LabelList join(const LabelList& x, const LabelList& y) {
  LabelList out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > kEigenvalueClip) h -= p * std::log2(p);
  }
  return h;
}

EntropyValue von_neumann_entropy(const DensityMatrix& state) {
  const RealVector& spec = state.spectrum();
  return {std::max(0.0, shannon_entropy(std::span<const double>(spec.data(), static_cast<std::size_t>(spec.size()))))};
}

EntropyValue marginal_entropy(const DensityMatrix& state, const LabelList& labels) {
  if (labels.empty()) return {0.0};
  if (state.layout().restrict_to(labels).size() == state.layout().size()) return von_neumann_entropy(state);
  return von_neumann_entropy(partial_trace(state, labels));
}

EntropyValue conditional_entropy(const DensityMatrix& state, const LabelList& target, const LabelList& condition) {
  require_disjoint(target, condition, "conditional_entropy");
  return {marginal_entropy(state, join(target, condition)).value - marginal_entropy(state, condition).value};
}

EntropyValue mutual_information(const DensityMatrix& state, const LabelList& x, const LabelList& y) {
  require_disjoint(x, y, "mutual_information");
  return {marginal_entropy(state, x).value + marginal_entropy(state, y).value -
          marginal_entropy(state, join(x, y)).value};
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.layout() == sigma.layout())) throw std::invalid_argument("relative_entropy: layouts differ");
  const HermitianEigen sig = eig_hermitian(sigma.matrix());
  const Matrix rotated = sig.vectors.adjoint() * rho.matrix() * sig.vectors;

  double cross = 0.0;  // Tr ρ log2 σ
  for (Index k = 0; k < sig.values.size(); ++k) {
    const double weight = rotated(k, k).real();
    if (sig.values(k) <= kEigenvalueClip) {
      if (weight > kEigenvalueClip) return EntropyValue::infinite();
      continue;
    }
    cross += weight * std::log2(sig.values(k));
  }
  return {-von_neumann_entropy(rho).value - cross};
}

EntropyValue asymmetry_measure(const DensityMatrix& rho, const ConditionalExpectation& expectation) {
  const DensityMatrix projected = apply_condexp(expectation, rho);
  const EntropyValue d = relative_entropy(rho, projected);
  const double gain = von_neumann_entropy(projected).value - von_neumann_entropy(rho).value;
  if (!d.finite || std::abs(d.value - gain) > 1e-9) {
    std::ostringstream os;
    os << "asymmetry_measure: D(rho||E(rho)) = " << d.value << " disagrees with entropy gain " << gain;
    throw std::runtime_error(os.str());
  }
  return d;
}

}  // namespace teur
