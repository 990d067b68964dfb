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

#include "ctc/cross_sim.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "ctc/errors.hpp"
#include "ctc/fixed_points.hpp"
#include "ctc/kernels.hpp"

namespace ctc {
namespace {

void require_dims(const BipartiteUnitary& u, const DensityMatrix& rho,
                  const char* op) {
  if (rho.dim() != u.d_s())
    throw DimensionMismatch(std::string(op) + ": input has dimension " +
                            std::to_string(rho.dim()) +
                            ", unitary expects d_s = " + std::to_string(u.d_s()));
}

ComplexMatrix projector_on(std::size_t d, std::size_t k) {
  ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                        static_cast<Eigen::Index>(d));
  p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  return p;
}

ComplexMatrix full_vector_output(const BipartiteUnitary& u,
                                 const DensityMatrix& rho,
                                 const DensityMatrix& omega0,
                                 const ControlState& control,
                                 const CircuitOptions& options,
                                 std::size_t copies) {
  const std::size_t n = control.n();
  Dims dims(n, 2);
  for (std::size_t i = 0; i < copies; ++i) dims.push_back(u.d_s());
  dims.push_back(u.d_c());
  double total = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(n, 1000)));
  total *= std::pow(static_cast<double>(u.d_s()), static_cast<double>(copies));
  total *= static_cast<double>(u.d_c());
  if (total > static_cast<double>(options.full_vector_cap))
    throw CapacityExceeded("full-vector circuit needs dimension " +
                           std::to_string(static_cast<long long>(total)) +
                           ", cap is " + std::to_string(options.full_vector_cap));

  const ComplexVector a = control.amplitudes();
  ComplexMatrix state = a * a.adjoint();
  for (std::size_t i = 0; i < copies; ++i) state = kron(state, rho.matrix());
  state = kron(state, omega0.matrix());

  const ComplexMatrix cu = kron(projector_on(2, 0), identity(u.dim())) +
                           kron(projector_on(2, 1), u.matrix());
  const std::size_t c = n + copies;
  auto conjugate = [&](std::span<const std::size_t> targets,
                       const ComplexMatrix& op) {
    if (options.exec == kernels::Execution::parallel)
      kernels::parallel::conjugate_local(state, dims, targets, op);
    else
      kernels::serial::conjugate_local(state, dims, targets, op);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t targets[] = {i, n + i, c};
    conjugate(targets, cu);
  }
  if (options.mode == CircuitMode::adopted) {
    const std::size_t targets[] = {n + n, c};
    conjugate(targets, u.matrix());
  }
  const std::size_t keep[] = {n + copies - 1};
  return options.exec == kernels::Execution::parallel
             ? kernels::parallel::partial_trace(state, dims, keep)
             : kernels::serial::partial_trace(state, dims, keep);
}

ComplexMatrix weight_mixture_output(const BipartiteUnitary& u,
                                    const DensityMatrix& rho,
                                    const QuantumChannel& ch,
                                    const DensityMatrix& omega0,
                                    const ControlState& control,
                                    CircuitMode mode) {
  const std::size_t n = control.n();
  std::vector<ComplexMatrix> powers;
  powers.reserve(n + 1);
  powers.push_back(omega0.matrix());
  for (std::size_t m = 1; m <= n; ++m) powers.push_back(ch.act(powers.back()));
  const std::vector<double> p = control.weight_distribution();

  if (mode == CircuitMode::adopted) {
    ComplexMatrix mix = ComplexMatrix::Zero(omega0.matrix().rows(),
                                            omega0.matrix().cols());
    for (std::size_t m = 0; m <= n; ++m) mix += p[m] * powers[m];
    return u.evolve_s(rho.matrix(), mix);
  }
  // Literal reading: S_n has seen U only if the last control fired, and
  // then C carried N^{m-1}(omega0).
  const std::vector<double> last = control.last_bit_given_weight();
  ComplexMatrix mix = ComplexMatrix::Zero(omega0.matrix().rows(),
                                          omega0.matrix().cols());
  double untouched = 0.0;
  for (std::size_t m = 0; m <= n; ++m) {
    untouched += p[m] * (1.0 - last[m]);
    if (m > 0 && last[m] > 0.0) mix += p[m] * last[m] * powers[m - 1];
  }
  return u.evolve_s(rho.matrix(), mix) + untouched * rho.matrix();
}

}  // namespace

std::string_view to_string(CircuitMethod method) {
  return method == CircuitMethod::full_vector ? "full_vector" : "weight_mixture";
}

std::string_view to_string(CircuitMode mode) {
  return mode == CircuitMode::adopted ? "adopted" : "literal";
}

DensityMatrix pctc_simulate_tctc(const BipartiteUnitary& u,
                                 const DensityMatrix& rho,
                                 const PSimTConfig& cfg) {
  require_dims(u, rho, "pctc_simulate_tctc");
  const std::size_t ds = u.d_s(), dc = u.d_c();
  const double p = cfg.p.value_or(1.0 / static_cast<double>(dc + 1));
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgument("mixing weight p must lie in [0, 1], got " +
                          std::to_string(p));

  const ComplexMatrix phi = max_entangled(dc).projector().matrix();
  const ComplexMatrix ancilla =
      p * phi + (1.0 - p) * identity(dc * dc) / static_cast<double>(dc * dc);
  const ComplexMatrix flag =
      kron(phi, identity(2)) + kron(identity(dc * dc) - phi, pauli_x());
  const BipartiteUnitary big(
      kron(identity(ds), flag) * kron(u.matrix(), identity(2 * dc)),
      ds * dc * dc, 2);

  const DensityMatrix input(kron(rho.matrix(), ancilla), Dims{ds, dc, dc});
  const PctcOutcome out = pctc_evolve(big, input);
  const std::size_t keep[] = {0};
  return partial_trace(out.state, keep).with_dims(rho.dims());
}

TSimPResult tctc_simulate_pctc(const BipartiteUnitary& u,
                               const DensityMatrix& rho,
                               const TSimPConfig& cfg) {
  require_dims(u, rho, "tctc_simulate_pctc");
  if (cfg.n == 0 || cfg.n > 60)
    throw InvalidArgument("CTC qubit count must lie in [1, 60], got " +
                          std::to_string(cfg.n));
  const std::size_t ds = u.d_s(), dc = u.d_c();

  // |phi^rho>_RS = sum_i sqrt(lambda_i) |i>_R |v_i>_S
  const HermitianEigen e = eigh(rho.matrix());
  ComplexVector purification = ComplexVector::Zero(static_cast<Eigen::Index>(ds * ds));
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (!(e.values(i) > 0.0)) continue;
    ComplexVector r = ComplexVector::Zero(static_cast<Eigen::Index>(ds));
    r(i) = 1.0;
    purification += std::sqrt(e.values(i)) * kron(r, ComplexVector(e.vectors.col(i)));
  }

  const Dims dims{ds, ds, dc, dc};  // R, S, C, C'
  ComplexMatrix xi = kron(purification, max_entangled(dc).vector());
  const std::size_t sc[] = {1, 2};
  kernels::serial::left_apply_local(xi, dims, sc, u.matrix());
  ComplexMatrix psi0 = xi;
  const std::size_t cc[] = {2, 3};
  kernels::serial::left_apply_local(psi0, dims, cc,
                                    max_entangled(dc).projector().matrix());
  const ComplexVector v0 = psi0.col(0);
  const ComplexVector v1 = xi.col(0) - v0;
  const double p0 = v0.squaredNorm();
  const double p1 = v1.squaredNorm();
  if (!(p0 > tol::kNullProjection)) throw TargetUndefined(p0);

  ComplexVector flag0 = ComplexVector::Zero(2), flag1 = ComplexVector::Zero(2);
  flag0(0) = 1.0;
  flag1(1) = 1.0;
  const ComplexVector varphi = kron(flag0, v0) + kron(flag1, v1);

  const std::size_t rest = ds * ds * dc * dc;
  const double two_n = std::ldexp(1.0, static_cast<int>(cfg.n));
  FactoredInteraction v;
  v.s_ops = {kron(projector_on(2, 0), identity(rest)),
             kron(projector_on(2, 1), identity(rest))};
  v.c_traces = ComplexVector::Zero(2);
  v.c_traces(0) = two_n;  // Tr X^{(x)n} = 0
  v.c_gram = ComplexMatrix::Zero(2, 2);
  v.c_gram(0, 0) = two_n;
  v.c_gram(1, 1) = two_n;

  const DensityMatrix input = DensityMatrix::normalized(
      varphi * varphi.adjoint(), Dims{2, ds, ds, dc, dc});
  const TctcOutcome out = tctc_evolve(v, input);
  const std::size_t keep[] = {2};
  return {partial_trace(out.state, keep).with_dims(rho.dims()),
          p1 / ((two_n + 1.0) * p0 + p1), p0, p1};
}

DctcSimReport dctc_circuit_simulate(const BipartiteUnitary& u,
                                    const DensityMatrix& rho,
                                    const DensityMatrix& omega0,
                                    const ControlState& control,
                                    const CircuitOptions& options) {
  require_dims(u, rho, "dctc_circuit_simulate");
  if (omega0.dim() != u.d_c())
    throw DimensionMismatch("dctc_circuit_simulate: omega0 has dimension " +
                            std::to_string(omega0.dim()) +
                            ", unitary expects d_c = " + std::to_string(u.d_c()));
  const std::size_t n = control.n();
  const std::size_t copies = options.mode == CircuitMode::adopted ? n + 1 : n;
  const QuantumChannel ch = induced_channel(u, rho);

  const ComplexMatrix raw =
      options.method == CircuitMethod::full_vector
          ? full_vector_output(u, rho, omega0, control, options, copies)
          : weight_mixture_output(u, rho, ch, omega0, control, options.mode);
  DensityMatrix output = DensityMatrix::normalized(raw, rho.dims());

  const DensityMatrix cesaro = cesaro_average(ch, omega0, n);
  DensityMatrix formula = DensityMatrix::normalized(
      u.evolve_s(rho.matrix(), cesaro.matrix()), rho.dims());
  const DensityMatrix fixed = fixed_point_projection(ch, omega0);
  DensityMatrix exact = DensityMatrix::normalized(
      u.evolve_s(rho.matrix(), fixed.matrix()), rho.dims());

  const double df = trace_distance(output, formula);
  const double dx = trace_distance(output, exact);
  return {std::move(output), std::move(formula), std::move(exact), df, dx,
          n, options.method, options.mode, copies};
}

std::vector<ScanRow> dctc_convergence_scan(const BipartiteUnitary& u,
                                           const DensityMatrix& rho,
                                           const DensityMatrix& omega0,
                                           const std::vector<ControlSpec>& kinds,
                                           std::size_t n_max) {
  if (n_max == 0) throw InvalidArgument("convergence scan needs n_max >= 1");
  // Validate every spec up front so errors surface outside the parallel loop.
  for (const ControlSpec& k : kinds) (void)make_control_state(k.kind, 1, k.gamma);

  const std::size_t total = kinds.size() * n_max;
  std::vector<std::optional<ScanRow>> rows(total);
  std::vector<std::exception_ptr> failures(total);
  const auto count = static_cast<long long>(total);
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < count; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    try {
      const std::size_t k = i / n_max;
      const std::size_t n = i % n_max + 1;
      const ControlState control = make_control_state(kinds[k].kind, n, kinds[k].gamma);
      CircuitOptions opts;
      opts.exec = kernels::Execution::serial;
      const DctcSimReport r = dctc_circuit_simulate(u, rho, omega0, control, opts);
      rows[i] = ScanRow{kinds[k], n, r.dist_formula, r.dist_fixed};
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  std::vector<ScanRow> out;
  out.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    out.push_back(*rows[i]);
  }
  return out;
}

}  // namespace ctc
