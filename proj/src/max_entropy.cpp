// Copyright 2026 The ctcsim Authors
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

#include "ctc/max_entropy.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "ctc/errors.hpp"

namespace ctc {
namespace {

constexpr double kSupportEigenvalue = 1e-9;
constexpr double kArmijo = 1e-4;

struct Point {
  HermitianEigen eig;
  double entropy;  // bits
};

std::optional<Point> evaluate(const ComplexMatrix& sigma) {
  HermitianEigen e = eigh(sigma);
  if (!(e.values(0) > 0.0)) return std::nullopt;
  double h = 0.0;
  for (double lambda : e.values) h -= lambda * std::log2(lambda);
  return Point{std::move(e), h};
}

}  // namespace

MaxEntropyResult solve_max_entropy(const FixedPointSet& set,
                                   const MaxEntropyOptions& options) {
  const std::size_t d = set.basepoint.dim();
  if (set.traceless_basis.empty()) {
    return {set.basepoint, von_neumann_entropy(set.basepoint), 0, 0.0};
  }

  // Restrict to the support of the basepoint.
  const HermitianEigen be = eigh(set.basepoint.matrix());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < be.values.size(); ++i)
    if (be.values(i) > kSupportEigenvalue) keep.push_back(i);
  const auto s = static_cast<Eigen::Index>(keep.size());
  ComplexMatrix v(static_cast<Eigen::Index>(d), s);
  for (Eigen::Index k = 0; k < s; ++k) v.col(k) = be.vectors.col(keep[static_cast<std::size_t>(k)]);

  const ComplexMatrix base = v.adjoint() * set.basepoint.matrix() * v;
  std::vector<ComplexMatrix> dirs;
  for (const ComplexMatrix& b : set.traceless_basis)
    dirs.push_back(hermitize(v.adjoint() * b * v));
  const auto k = static_cast<Eigen::Index>(dirs.size());

  auto sigma_at = [&](const Eigen::VectorXd& x) {
    ComplexMatrix m = base;
    for (Eigen::Index i = 0; i < k; ++i) m += x(i) * dirs[static_cast<std::size_t>(i)];
    return hermitize(m);
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  std::optional<Point> current = evaluate(sigma_at(x));
  if (!current)
    throw InvalidState("max-entropy basepoint is not positive definite on its support");

  const double inv_ln2 = 1.0 / std::log(2.0);
  double grad_norm = INFINITY;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    const HermitianEigen& e = current->eig;
    const RealVector log_l = e.values.array().log();
    const ComplexMatrix log_sigma =
        e.vectors * log_l.cast<Complex>().asDiagonal() * e.vectors.adjoint();

    Eigen::VectorXd grad(k);
    std::vector<ComplexMatrix> rotated;
    rotated.reserve(dirs.size());
    for (Eigen::Index i = 0; i < k; ++i) {
      const ComplexMatrix& b = dirs[static_cast<std::size_t>(i)];
      grad(i) = -(b * log_sigma).trace().real() * inv_ln2;
      rotated.push_back(e.vectors.adjoint() * b * e.vectors);
    }
    grad_norm = grad.norm();
    if (grad_norm <= options.gradient_tolerance) {
      const ComplexMatrix full = v * sigma_at(x) * v.adjoint();
      return {DensityMatrix::normalized(full, Dims{d}), current->entropy, iter,
              grad_norm};
    }

    // Hessian from the divided differences of log.
    Eigen::MatrixXd gamma(s, s);
    for (Eigen::Index a = 0; a < s; ++a)
      for (Eigen::Index b = 0; b < s; ++b) {
        const double la = e.values(a), lb = e.values(b);
        gamma(a, b) = std::abs(la - lb) > 1e-12 * std::max(la, lb)
                          ? (log_l(a) - log_l(b)) / (la - lb)
                          : 1.0 / la;
      }
    Eigen::MatrixXd neg_hess(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i; j < k; ++j) {
        const ComplexMatrix& bi = rotated[static_cast<std::size_t>(i)];
        const ComplexMatrix& bj = rotated[static_cast<std::size_t>(j)];
        const double h =
            (bi.conjugate().array() * gamma.cast<Complex>().array() * bj.array())
                .sum()
                .real() *
            inv_ln2;
        neg_hess(i, j) = neg_hess(j, i) = h;
      }

    Eigen::VectorXd step = Eigen::LDLT<Eigen::MatrixXd>(neg_hess).solve(grad);
    double slope = grad.dot(step);
    if (!step.allFinite() || !(slope > 0.0)) {
      step = grad;
      slope = grad.squaredNorm();
    }

    double t = 1.0;
    bool accepted = false;
    const double slack = 1e-14 * std::max(1.0, std::abs(current->entropy));
    for (int halvings = 0; halvings < 80; ++halvings, t *= 0.5) {
      const Eigen::VectorXd trial_x = x + t * step;
      std::optional<Point> trial = evaluate(sigma_at(trial_x));
      if (!trial) continue;
      if (trial->entropy >= current->entropy + kArmijo * t * slope - slack) {
        x = trial_x;
        current = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw NonConvergence("max-entropy line search stalled (gradient norm " +
                               std::to_string(grad_norm) + ")",
                           grad_norm);
  }
  throw NonConvergence("max-entropy ascent hit the iteration limit (gradient norm " +
                           std::to_string(grad_norm) + ")",
                       grad_norm);
}

MaxEntropyResult solve_max_entropy(const QuantumChannel& ch,
                                   const MaxEntropyOptions& options) {
  return solve_max_entropy(fixed_point_subspace(ch), options);
}

DensityMatrix max_entropy_fixed_point(const QuantumChannel& ch) {
  return solve_max_entropy(ch).state;
}

}  // namespace ctc
