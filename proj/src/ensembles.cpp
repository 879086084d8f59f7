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

#include "teur/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace teur {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SeededSource::SeededSource(std::uint64_t seed, std::string_view stream, std::uint64_t index)
    : engine_(splitmix64(splitmix64(splitmix64(seed) ^ fnv1a64(stream)) ^ index)) {}

double SeededSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeededSource::normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  return r * std::cos(phi);
}

Complex SeededSource::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

PureState haar_pure(const SubsystemLayout& layout, SeededSource& source) {
  const Index d = layout.total_dim();
  if (d == 1) return PureState(layout, Vector::Ones(1));
  Vector v(d);
  for (Index i = 0; i < d; ++i) v(i) = source.complex_normal();
  v /= v.norm();
  return PureState(layout, std::move(v));
}

PureState haar_pure(Index dim, SeededSource& source) {
  if (dim < 1) throw std::invalid_argument("haar_pure: dimension must be >= 1");
  return haar_pure(SubsystemLayout{{"S", dim}}, source);
}

DensityMatrix ginibre_mixed(const SubsystemLayout& layout, Index rank, SeededSource& source) {
  const Index d = layout.total_dim();
  if (rank < 1 || rank > d) throw std::invalid_argument("ginibre_mixed: rank must lie in [1, dim]");
  Matrix m(d, rank);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < rank; ++j) m(i, j) = source.complex_normal();
  }
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(layout, std::move(rho));
}

DensityMatrix ginibre_mixed(Index dim, Index rank, SeededSource& source) {
  if (dim < 1) throw std::invalid_argument("ginibre_mixed: dimension must be >= 1");
  return ginibre_mixed(SubsystemLayout{{"S", dim}}, rank, source);
}

DensityMatrix mix_noise(const DensityMatrix& rho, double eps, SeededSource& source) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("mix_noise: eps must lie in [0, 1]");
  const DensityMatrix eta = ginibre_mixed(rho.layout(), rho.dim(), source);
  if (eps == 0.0) return rho;
  if (eps == 1.0) return eta;
  return DensityMatrix(rho.layout(), (1.0 - eps) * rho.matrix() + eps * eta.matrix());
}

std::vector<double> random_angles(int n, SeededSource& source) {
  if (n < 1) throw std::invalid_argument("random_angles: n must be >= 1");
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(angles.size()) < n) {
    const double a = 2.0 * std::numbers::pi * source.uniform();
    bool clash = false;
    for (double b : angles) clash = clash || std::abs(a - b) <= 1e-12;
    if (!clash) angles.push_back(a);
  }
  return angles;
}

Matrix random_hermitian(Index dim, SeededSource& source) {
  Matrix x(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) x(i, j) = source.complex_normal();
  }
  return 0.5 * (x + x.adjoint());
}

Matrix random_unitary(Index dim, SeededSource& source) {
  Matrix z(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) z(i, j) = source.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

DensityMatrix theta_family(double theta, const SubsystemLayout& layout) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("theta_family: theta must lie in [0, pi]");
  }
  Vector v = Vector::Ones(1);
  for (const auto& part : layout.parts()) {
    Vector local = Vector::Zero(part.dim);
    if (part.dim == 1) {
      local(0) = 1.0;
    } else {
      local(0) = std::cos(theta / 2.0);
      local(1) = std::sin(theta / 2.0);
    }
    Vector next(v.size() * local.size());
    for (Index i = 0; i < v.size(); ++i) next.segment(i * local.size(), local.size()) = v(i) * local;
    v = std::move(next);
  }
  return DensityMatrix(PureState(layout, v / v.norm()));
}

DensityMatrix theta_family(double theta, int parties) {
  if (parties < 2) throw std::invalid_argument("theta_family: at least two parties");
  std::vector<Subsystem> parts{{"A", 2}};
  if (parties == 2) {
    parts.push_back({"B", 2});
  } else {
    for (int k = 1; k < parties; ++k) parts.push_back({"B" + std::to_string(k), 2});
  }
  return theta_family(theta, SubsystemLayout(std::move(parts)));
}

}  // namespace teur
