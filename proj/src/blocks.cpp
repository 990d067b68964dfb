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

#include "ctc/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "ctc/errors.hpp"
#include "ctc/fixed_points.hpp"

namespace ctc {
namespace {

constexpr double kSupportEigenvalue = 1e-9;
constexpr double kNullSingular = 1e-7;
constexpr double kClusterGap = 1e-6;
constexpr double kNegligibleNorm = 1e-10;
constexpr int kAttempts = 4;

/// Operators scaled to unit norm, dropping those that are negligible next
/// to the largest (restrictions of operators supported elsewhere).
std::vector<ComplexMatrix> significant_normalized(const std::vector<ComplexMatrix>& ops) {
  double top = 0.0;
  for (const ComplexMatrix& op : ops) top = std::max(top, op.norm());
  std::vector<ComplexMatrix> out;
  for (const ComplexMatrix& op : ops) {
    const double norm = op.norm();
    if (norm > kNegligibleNorm * top) out.push_back(op / norm);
  }
  return out;
}

/// Basis of {X : [X, A] = 0 for every A in generators} on s x s matrices.
std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& generators,
                                     Eigen::Index s) {
  const Eigen::Index len = s * s;
  std::vector<ComplexMatrix> out;
  if (generators.empty()) {
    for (Eigen::Index j = 0; j < s; ++j)
      for (Eigen::Index i = 0; i < s; ++i) {
        ComplexMatrix e = ComplexMatrix::Zero(s, s);
        e(i, j) = 1.0;
        out.push_back(std::move(e));
      }
    return out;
  }
  const ComplexMatrix id = ComplexMatrix::Identity(s, s);
  const std::vector<ComplexMatrix> gens = significant_normalized(generators);
  ComplexMatrix system(len * static_cast<Eigen::Index>(gens.size()), len);
  Eigen::Index row = 0;
  for (const ComplexMatrix& a : gens) {
    // vec(AX - XA) = (I (x) A - A^T (x) I) vec(X)
    system.middleRows(row, len) = kron(id, a) - kron(a.transpose(), id);
    row += len;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(system, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < len; ++k) {
    const double sigma = k < sv.size() ? sv(k) : 0.0;
    if (sigma < kNullSingular)
      out.push_back(unvectorize(svd.matrixV().col(k), static_cast<std::size_t>(s)));
  }
  return out;
}

std::size_t span_rank(const std::vector<ComplexMatrix>& raw) {
  const std::vector<ComplexMatrix> ops = significant_normalized(raw);
  if (ops.empty()) return 0;
  ComplexMatrix stacked(ops.front().size(), static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) = vectorize(ops[i]);
  const RealVector sv = singular_values(stacked);
  std::size_t rank = 0;
  for (double s : sv)
    if (s > kNullSingular * std::max(1.0, sv(0))) ++rank;
  return rank;
}

ComplexMatrix random_hermitian_combination(const std::vector<ComplexMatrix>& basis,
                                           Eigen::Index s, Rng& rng) {
  ComplexMatrix h = ComplexMatrix::Zero(s, s);
  for (const ComplexMatrix& b : basis) h += rng.normal() * b;
  return hermitize(h);
}

ComplexMatrix random_complex_combination(const std::vector<ComplexMatrix>& basis,
                                         Eigen::Index s, Rng& rng) {
  ComplexMatrix m = ComplexMatrix::Zero(s, s);
  for (const ComplexMatrix& b : basis) m += rng.complex_normal() * b;
  return m;
}

/// Eigenspaces of a Hermitian matrix, grouping eigenvalues closer than the
/// cluster gap (relative to the spectral radius).
std::vector<ComplexMatrix> eigenspaces(const ComplexMatrix& h) {
  const HermitianEigen e = eigh(h);
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  std::vector<ComplexMatrix> spaces;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= e.values.size(); ++i) {
    if (i == e.values.size() || e.values(i) - e.values(i - 1) > kClusterGap * scale) {
      spaces.push_back(e.vectors.middleCols(start, i - start));
      start = i;
    }
  }
  return spaces;
}

std::vector<ComplexMatrix> restrict_all(const std::vector<ComplexMatrix>& ops,
                                        const ComplexMatrix& iso) {
  std::vector<ComplexMatrix> out;
  out.reserve(ops.size());
  for (const ComplexMatrix& op : ops) out.push_back(iso.adjoint() * op * iso);
  return out;
}

struct TensorBlock {
  ComplexMatrix columns;  // s x (d_l * d_r), in support coordinates
  std::size_t d_left;
  std::size_t d_right;
};

/// Align one central block (algebra M_dL (x) I, commutant I (x) M_dR) with
/// an explicit tensor basis. Returns nullopt when the random elements did
/// not separate the spectrum cleanly.
std::optional<TensorBlock> align_block(const ComplexMatrix& q,
                                       const std::vector<ComplexMatrix>& algebra,
                                       const std::vector<ComplexMatrix>& comm,
                                       Rng& rng) {
  const Eigen::Index n = q.cols();
  const std::vector<ComplexMatrix> a = restrict_all(algebra, q);
  const std::vector<ComplexMatrix> c = restrict_all(comm, q);
  const std::size_t rank = span_rank(a);
  const auto d_left = static_cast<std::size_t>(std::llround(std::sqrt(double(rank))));
  if (d_left == 0 || d_left * d_left != rank || n % static_cast<Eigen::Index>(d_left) != 0)
    return std::nullopt;
  const std::size_t d_right = static_cast<std::size_t>(n) / d_left;

  const std::vector<ComplexMatrix> f =
      eigenspaces(random_hermitian_combination(a, n, rng));
  const std::vector<ComplexMatrix> e =
      eigenspaces(random_hermitian_combination(c, n, rng));
  if (f.size() != d_left || e.size() != d_right) return std::nullopt;
  for (const ComplexMatrix& fa : f)
    if (static_cast<std::size_t>(fa.cols()) != d_right) return std::nullopt;
  for (const ComplexMatrix& eb : e)
    if (static_cast<std::size_t>(eb.cols()) != d_left) return std::nullopt;

  auto proj = [](const ComplexMatrix& iso) { return ComplexMatrix(iso * iso.adjoint()); };

  // Seed vector in F_1 ∩ E_1.
  const ComplexMatrix pf1 = proj(f[0]);
  const HermitianEigen seed = eigh(pf1 * proj(e[0]) * pf1);
  const Eigen::Index top = seed.values.size() - 1;
  if (std::abs(seed.values(top) - 1.0) > 1e-6) return std::nullopt;
  ComplexVector v11 = seed.vectors.col(top);

  // Transport along R with a commutant element and along L with an algebra
  // element; each projection fixes one phase per index, so the columns
  // factor as (phase_l |l>) (x) (phase_r |r>).
  const ComplexMatrix g = random_complex_combination(c, n, rng);
  const ComplexMatrix y = random_complex_combination(a, n, rng);
  ComplexMatrix cols(n, n);
  for (std::size_t b = 0; b < d_right; ++b) {
    ComplexVector v1b = v11;
    if (b > 0) {
      v1b = proj(e[b]) * (g * v11);
      const double norm = v1b.norm();
      if (norm < 1e-8) return std::nullopt;
      v1b /= norm;
    }
    for (std::size_t l = 0; l < d_left; ++l) {
      ComplexVector vab = v1b;
      if (l > 0) {
        vab = proj(f[l]) * (y * v1b);
        const double norm = vab.norm();
        if (norm < 1e-8) return std::nullopt;
        vab /= norm;
      }
      cols.col(static_cast<Eigen::Index>(l * d_right + b)) = vab;
    }
  }
  return TensorBlock{q * cols, d_left, d_right};
}

ComplexMatrix tensor_residual(const ComplexMatrix& m, std::size_t d_left,
                              const DensityMatrix& rho) {
  const Dims dims{d_left, rho.dim()};
  const std::size_t keep_left[] = {0};
  const ComplexMatrix left = partial_trace(m, dims, keep_left);
  return m - kron(left, rho.matrix());
}

}  // namespace

// --- BlockDecomposition -------------------------------------------------------

ComplexMatrix BlockDecomposition::block_isometry(std::size_t j) const {
  const Block& b = blocks.at(j);
  return basis.middleCols(static_cast<Eigen::Index>(b.offset),
                          static_cast<Eigen::Index>(b.d_left * b.d_right));
}

ComplexMatrix BlockDecomposition::project(const ComplexMatrix& omega) const {
  const auto n = static_cast<Eigen::Index>(d());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const ComplexMatrix w = block_isometry(j);
    const Dims dims{blocks[j].d_left, blocks[j].d_right};
    const std::size_t keep_left[] = {0};
    const ComplexMatrix left =
        partial_trace(ComplexMatrix(w.adjoint() * omega * w), dims, keep_left);
    out += w * kron(left, blocks[j].rho.matrix()) * w.adjoint();
  }
  return out;
}

std::vector<double> BlockDecomposition::max_entropy_weights() const {
  std::vector<double> log_w;
  for (const Block& b : blocks)
    log_w.push_back(von_neumann_entropy(b.rho) +
                    std::log2(static_cast<double>(b.d_left)));
  const double top = *std::max_element(log_w.begin(), log_w.end());
  double total = 0.0;
  for (double& w : log_w) total += (w = std::exp2(w - top));
  for (double& w : log_w) w /= total;
  return log_w;
}

DensityMatrix BlockDecomposition::max_entropy_state() const {
  const std::vector<double> q = max_entropy_weights();
  const auto n = static_cast<Eigen::Index>(d());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const ComplexMatrix w = block_isometry(j);
    const ComplexMatrix pi_left =
        identity(blocks[j].d_left) / static_cast<double>(blocks[j].d_left);
    out += q[j] * (w * kron(pi_left, blocks[j].rho.matrix()) * w.adjoint());
  }
  return DensityMatrix::normalized(out, Dims{d()});
}

// --- detection ----------------------------------------------------------------

BlockDecomposition detect_blocks(const QuantumChannel& ch, std::uint64_t seed) {
  const FixedPointProjector projector(ch);
  const std::size_t d = ch.d();
  const auto dn = static_cast<Eigen::Index>(d);

  // Fixed state of maximal support and its support isometry.
  const ComplexMatrix sigma =
      hermitize(projector.act(identity(d) / static_cast<double>(d)));
  const HermitianEigen se = eigh(sigma);
  std::vector<Eigen::Index> support_idx, transient_idx;
  for (Eigen::Index i = dn - 1; i >= 0; --i)
    (se.values(i) > kSupportEigenvalue ? support_idx : transient_idx).push_back(i);
  const auto s = static_cast<Eigen::Index>(support_idx.size());
  ComplexMatrix v(dn, s);
  RealVector inv_sqrt(s);
  for (Eigen::Index k = 0; k < s; ++k) {
    v.col(k) = se.vectors.col(support_idx[static_cast<std::size_t>(k)]);
    inv_sqrt(k) = 1.0 / std::sqrt(se.values(support_idx[static_cast<std::size_t>(k)]));
  }
  const ComplexMatrix s_inv_half = inv_sqrt.cast<Complex>().asDiagonal();

  // sigma^{-1/2} F sigma^{-1/2} on the support is the *-algebra (+) M_dL (x) I.
  std::vector<ComplexMatrix> kernel_ops;
  for (Eigen::Index i = 0; i < projector.right_kernel().cols(); ++i)
    kernel_ops.push_back(unvectorize(projector.right_kernel().col(i), d));
  std::vector<ComplexMatrix> conjugated;
  for (const ComplexMatrix& h : hermitian_basis_of(kernel_ops, projector.rank()))
    conjugated.push_back(hermitize(s_inv_half * v.adjoint() * h * v * s_inv_half));
  // The conjugation can leave the generators far from orthogonal, which
  // shrinks the commutator constraints below the null threshold.
  const std::vector<ComplexMatrix> algebra =
      hermitian_basis_of(conjugated, conjugated.size());
  const std::vector<ComplexMatrix> comm =
      hermitian_basis_of(commutant(algebra, s), commutant(algebra, s).size());
  std::vector<ComplexMatrix> both = algebra;
  both.insert(both.end(), comm.begin(), comm.end());
  const std::vector<ComplexMatrix> center_raw = commutant(both, s);
  const std::vector<ComplexMatrix> center =
      hermitian_basis_of(center_raw, center_raw.size());

  Rng root(seed);
  double best_residual = INFINITY;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng = root.split(static_cast<std::uint64_t>(attempt));
    BlockDecomposition out;
    out.support_dim = static_cast<std::size_t>(s);
    out.basis = ComplexMatrix::Zero(dn, dn);
    bool ok = true;
    Eigen::Index offset = 0;
    for (const ComplexMatrix& q : eigenspaces(random_hermitian_combination(center, s, rng))) {
      const std::optional<TensorBlock> tb = align_block(q, algebra, comm, rng);
      if (!tb) {
        ok = false;
        break;
      }
      const ComplexMatrix w = v * tb->columns;
      const Eigen::Index n = w.cols();
      out.basis.middleCols(offset, n) = w;
      const Dims dims{tb->d_left, tb->d_right};
      const std::size_t keep_right[] = {1};
      const ComplexMatrix right =
          partial_trace(ComplexMatrix(w.adjoint() * sigma * w), dims, keep_right);
      out.blocks.push_back(Block{w * w.adjoint(), tb->d_left, tb->d_right,
                                 DensityMatrix::normalized(right, Dims{tb->d_right}),
                                 static_cast<std::size_t>(offset)});
      offset += n;
    }
    if (!ok || offset != s) continue;
    for (std::size_t k = 0; k < transient_idx.size(); ++k)
      out.basis.col(offset + static_cast<Eigen::Index>(k)) = se.vectors.col(transient_idx[k]);

    // Verify the block form on projections of random states.
    double residual = 0.0;
    Rng probe = rng.split(0xfeed);
    for (int trial = 0; trial < 6; ++trial) {
      const ComplexMatrix omega =
          trial == 0 ? ComplexMatrix(identity(d) / static_cast<double>(d))
                     : haar_state(d, probe).projector().matrix();
      const ComplexMatrix tau = out.basis.adjoint() * projector.act(omega) * out.basis;
      ComplexMatrix aligned = ComplexMatrix::Zero(dn, dn);
      for (const Block& b : out.blocks) {
        const auto o = static_cast<Eigen::Index>(b.offset);
        const auto n = static_cast<Eigen::Index>(b.d_left * b.d_right);
        const ComplexMatrix m = tau.block(o, o, n, n);
        residual = std::max(
            residual, tensor_residual(m, b.d_left, b.rho).cwiseAbs().maxCoeff());
        aligned.block(o, o, n, n) = m;
      }
      residual = std::max(residual, (tau - aligned).cwiseAbs().maxCoeff());
    }
    out.verification_residual = residual;
    if (residual <= tol::kBlockVerification) return out;
    best_residual = std::min(best_residual, residual);
  }
  throw DecompositionFailed(
      "block decomposition did not verify (best residual " +
          std::to_string(best_residual) + ")",
      best_residual);
}

// --- constructed channels -------------------------------------------------------

QuantumChannel block_structured_channel(std::span<const BlockSpec> blocks,
                                        const ComplexMatrix& basis, double mixing) {
  if (!(mixing > 0.0 && mixing <= 1.0))
    throw InvalidArgument("block channel mixing must lie in (0, 1]");
  std::size_t d = 0;
  for (const BlockSpec& b : blocks) {
    if (b.d_left == 0) throw InvalidArgument("block with d_left = 0");
    d += b.d_left * b.rho.dim();
  }
  if (static_cast<std::size_t>(basis.rows()) != d || !is_unitary(basis))
    throw DimensionMismatch("block channel basis must be a " + std::to_string(d) +
                            "-dimensional unitary");
  std::vector<ComplexMatrix> kraus;
  Eigen::Index offset = 0;
  for (const BlockSpec& b : blocks) {
    const auto dr = static_cast<Eigen::Index>(b.rho.dim());
    const auto n = static_cast<Eigen::Index>(b.d_left) * dr;
    const ComplexMatrix e = basis.middleCols(offset, n);
    const ComplexMatrix id_left = identity(b.d_left);
    const HermitianEigen re = eigh(b.rho.matrix());

    ComplexMatrix phase = ComplexMatrix::Zero(dr, dr);
    for (Eigen::Index a = 0; a < dr; ++a)
      phase += std::polar(1.0, 0.7 * double(a + 1)) *
               (re.vectors.col(a) * re.vectors.col(a).adjoint());
    if (mixing < 1.0)
      kraus.push_back(e * kron(id_left, std::sqrt(1.0 - mixing) * phase) * e.adjoint());

    double kept = 0.0;
    for (Eigen::Index a = 0; a < dr; ++a)
      if (re.values(a) > tol::kEigenFloor) kept += re.values(a);
    for (Eigen::Index a = 0; a < dr; ++a) {
      if (re.values(a) <= tol::kEigenFloor) continue;
      for (Eigen::Index c = 0; c < dr; ++c) {
        ComplexMatrix k = ComplexMatrix::Zero(dr, dr);
        k.col(c) = std::sqrt(mixing * re.values(a) / kept) * re.vectors.col(a);
        kraus.push_back(e * kron(id_left, k) * e.adjoint());
      }
    }
    offset += n;
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

}  // namespace ctc
