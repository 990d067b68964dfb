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

#include "ctc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <string>

#include "ctc/blocks.hpp"
#include "ctc/cross_sim.hpp"
#include "ctc/errors.hpp"
#include "ctc/fixed_points.hpp"
#include "ctc/log.hpp"
#include "ctc/max_entropy.hpp"
#include "ctc/models.hpp"

#ifndef CTC_VERSION_STRING
#define CTC_VERSION_STRING "unknown"
#endif

namespace ctc {
namespace {

// RNG streams carved out of the config seed.
constexpr std::uint64_t kStreamUnitary = 1;
constexpr std::uint64_t kStreamRho = 2;
constexpr std::uint64_t kStreamOmega = 3;
constexpr std::uint64_t kStreamMonteCarlo = 4;

constexpr std::pair<Model, const char*> kModelNames[] = {
    {Model::pctc, "pctc"},
    {Model::tctc, "tctc"},
    {Model::tctc_mc, "tctc_mc"},
    {Model::dctc, "dctc"},
    {Model::cross_p2t, "cross_p2t"},
    {Model::cross_t2p, "cross_t2p"},
    {Model::dctc_circuit, "dctc_circuit"},
    {Model::fixpoint, "fixpoint"},
    {Model::maxent, "maxent"},
};

Model parse_model(const json& j) {
  if (!j.is_string()) throw ConfigError("\"model\" must be a string");
  const auto name = j.get<std::string>();
  for (const auto& [m, s] : kModelNames)
    if (name == s) return m;
  throw ConfigError("unknown model '" + name + "'");
}

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object())
    throw ConfigError(std::string("\"") + where + "\" must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }))
      throw ConfigError(std::string("unknown field \"") + key + "\" in " + where);
  }
}

bool is_non_negative_integer(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

std::size_t get_count(const json& j, const char* name) {
  if (!is_non_negative_integer(j))
    throw ConfigError(std::string("\"") + name + "\" must be a non-negative integer");
  return j.get<std::size_t>();
}

double get_number(const json& j, const char* name) {
  if (!j.is_number()) throw ConfigError(std::string("\"") + name + "\" must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(std::string("\"") + name + "\" must be finite");
  return x;
}

std::string get_string(const json& j, const char* name) {
  if (!j.is_string()) throw ConfigError(std::string("\"") + name + "\" must be a string");
  return j.get<std::string>();
}

Dims get_pair(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(std::string("\"") + name + "\" must be a two-element array");
  Dims d{get_count(j[0], name), get_count(j[1], name)};
  if (d[0] == 0 || d[1] == 0)
    throw ConfigError(std::string("\"") + name + "\" dimensions must be positive");
  return d;
}

BipartiteUnitary resolve_unitary(const OperatorSpec& spec, std::uint64_t seed) {
  const json& s = spec.source;
  if (s.is_string()) {
    const auto name = s.get<std::string>();
    if (name == "identity") return BipartiteUnitary::identity(2, 2);
    if (name == "swap") return BipartiteUnitary::swap(2);
    if (name == "cnot") return BipartiteUnitary::cnot();
    if (name == "cz") return BipartiteUnitary::cz();
    throw ConfigError("unknown gate '" + name + "' (expected identity, swap, cnot or cz)");
  }
  if (s.is_object() && s.contains("haar")) {
    check_keys(s, "unitary", {"haar"});
    const Dims d = get_pair(s.at("haar"), "haar");
    if (d[0] * d[1] > 4096) throw ConfigError("random unitary is too large");
    Rng rng = Rng(seed).split(kStreamUnitary);
    return BipartiteUnitary(haar_unitary(d[0] * d[1], rng), d[0], d[1]);
  }
  if (s.is_object()) {
    check_keys(s, "unitary", {"dims", "data"});
    if (!s.contains("dims")) throw ConfigError("inline unitary needs \"dims\": [d_s, d_c]");
    ParsedMatrix pm = matrix_from_json(s);
    if (pm.dims.size() != 2) throw ConfigError("inline unitary needs \"dims\": [d_s, d_c]");
    try {
      return BipartiteUnitary(std::move(pm.matrix), pm.dims[0], pm.dims[1]);
    } catch (const Error& e) {
      throw ConfigError(std::string("unitary: ") + e.what());
    }
  }
  throw ConfigError("\"unitary\" must be a gate name or an object");
}

DensityMatrix resolve_state(const OperatorSpec& spec, std::size_t d,
                            std::uint64_t seed, std::uint64_t stream,
                            const char* field) {
  const json& s = spec.source;
  const std::string where(field);
  if (s.is_string()) {
    const auto name = s.get<std::string>();
    if (name == "zero") return DensityMatrix::basis_state(d, 0);
    if (name == "mixed") return DensityMatrix::maximally_mixed(d);
    if (name == "plus") {
      if (d != 2) throw ConfigError(where + ": \"plus\" needs dimension 2, got " + std::to_string(d));
      return DensityMatrix(ComplexMatrix::Constant(2, 2, 0.5));
    }
    throw ConfigError(where + ": unknown state '" + name + "' (expected zero, plus or mixed)");
  }
  if (s.is_object() && s.contains("random")) {
    check_keys(s, field, {"random"});
    const std::size_t k = get_count(s.at("random"), "random");
    if (k != d)
      throw ConfigError(where + ": random state of dimension " + std::to_string(k) +
                        " where " + std::to_string(d) + " is needed");
    Rng rng = Rng(seed).split(stream);
    return random_density(d, rng);
  }
  if (s.is_object()) {
    check_keys(s, field, {"dims", "data"});
    ParsedMatrix pm = matrix_from_json(s);
    if (static_cast<std::size_t>(pm.matrix.rows()) != d)
      throw ConfigError(where + " has dimension " + std::to_string(pm.matrix.rows()) +
                        " where " + std::to_string(d) + " is needed");
    try {
      return DensityMatrix(std::move(pm.matrix), std::move(pm.dims));
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + " must be a state name or an object");
}

void check_operator_spec(const json& j, const char* field) {
  if (!j.is_string() && !j.is_object())
    throw ConfigError(std::string("\"") + field + "\" must be a name or an object");
}

struct Setup {
  BipartiteUnitary u;
  DensityMatrix rho;
  DensityMatrix omega0;
};

Setup resolve(const ExperimentConfig& cfg) {
  BipartiteUnitary u = resolve_unitary(cfg.unitary, cfg.seed);
  DensityMatrix rho = resolve_state(cfg.rho, u.d_s(), cfg.seed, kStreamRho, "rho");
  const OperatorSpec mixed{json("mixed")};
  DensityMatrix omega0 = resolve_state(cfg.params.omega0.value_or(mixed), u.d_c(),
                                       cfg.seed, kStreamOmega, "omega0");
  return {std::move(u), std::move(rho), std::move(omega0)};
}

ControlKind control_kind(const ExperimentConfig& cfg) {
  return parse_control_kind(cfg.params.control.value_or("dicke"));
}

double entropy_of(const DensityMatrix& rho) { return von_neumann_entropy(rho); }

json error_details(const Error& e) {
  json j{{"code", e.code()}, {"message", e.what()}};
  if (const auto* x = dynamic_cast<const NullProjection*>(&e)) j["normalization"] = x->normalization();
  if (const auto* x = dynamic_cast<const TargetUndefined*>(&e)) j["p0"] = x->p0();
  if (const auto* x = dynamic_cast<const InconsistentSigma*>(&e)) j["residual"] = x->residual();
  if (const auto* x = dynamic_cast<const DecompositionFailed*>(&e)) j["residual"] = x->residual();
  if (const auto* x = dynamic_cast<const NonConvergence*>(&e)) j["gradient_norm"] = x->gradient_norm();
  return j;
}

PureState pure_input(const DensityMatrix& rho) {
  const HermitianEigen e = eigh(rho.matrix());
  const Eigen::Index top = e.values.size() - 1;
  if (e.values(top) < 1.0 - 1e-9)
    throw InvalidState("tctc_mc needs a pure input state (largest eigenvalue " +
                       std::to_string(e.values(top)) + ")");
  return PureState::normalized(e.vectors.col(top), rho.dims());
}

json run_model(const ExperimentConfig& cfg, const Setup& s) {
  const ExperimentParams& p = cfg.params;
  json out = json::object();
  json states = json::object(), scalars = json::object(), distances = json::object();
  json trace = json::array();

  switch (cfg.model) {
    case Model::pctc: {
      const PctcOutcome r = pctc_evolve(
          s.u, s.rho, cfg.tolerances.null_projection.value_or(tol::kNullProjection));
      states["state"] = density_to_json(r.state);
      scalars["normalization"] = r.normalization;
      scalars["entropy"] = entropy_of(r.state);
      break;
    }
    case Model::tctc: {
      const TctcOutcome r = tctc_evolve(s.u, s.rho);
      states["state"] = density_to_json(r.state);
      scalars["z"] = r.z;
      scalars["entropy"] = entropy_of(r.state);
      break;
    }
    case Model::tctc_mc: {
      const PureState psi = pure_input(s.rho);
      const MonteCarloEstimate r = tctc_monte_carlo(
          s.u, psi, p.samples.value_or(10000), Rng(cfg.seed).split(kStreamMonteCarlo));
      const TctcOutcome exact = tctc_evolve(s.u, s.rho);
      states["state"] = density_to_json(r.state);
      scalars["standard_error"] = r.standard_error;
      scalars["weight_sum"] = r.weight_sum;
      scalars["samples"] = r.samples;
      distances["dist_to_tctc"] = trace_distance(r.state, exact.state);
      break;
    }
    case Model::dctc: {
      const QuantumChannel ch = induced_channel(s.u, s.rho);
      const DensityMatrix sigma = p.policy.value_or("max_entropy") == "project_from"
                                      ? fixed_point_projection(ch, s.omega0)
                                      : max_entropy_fixed_point(ch);
      const DctcOutcome r = dctc_evolve(
          s.u, s.rho, sigma, cfg.tolerances.consistency.value_or(tol::kConsistency));
      states["state"] = density_to_json(r.state);
      states["sigma_c"] = density_to_json(r.sigma_c);
      scalars["residual"] = r.residual;
      scalars["entropy"] = entropy_of(r.state);
      scalars["sigma_entropy"] = entropy_of(r.sigma_c);
      break;
    }
    case Model::cross_p2t: {
      PSimTConfig c;
      c.p = p.p;
      const DensityMatrix r = pctc_simulate_tctc(s.u, s.rho, c);
      const TctcOutcome exact = tctc_evolve(s.u, s.rho);
      states["state"] = density_to_json(r);
      scalars["p"] = p.p.value_or(1.0 / static_cast<double>(s.u.d_c() + 1));
      scalars["entropy"] = entropy_of(r);
      distances["dist_to_tctc"] = trace_distance(r, exact.state);
      break;
    }
    case Model::cross_t2p: {
      const TSimPResult r = tctc_simulate_pctc(s.u, s.rho, TSimPConfig{p.n.value_or(1)});
      const PctcOutcome target = pctc_evolve(s.u, s.rho);
      states["state"] = density_to_json(r.state);
      states["target"] = density_to_json(target.state);
      scalars["n"] = p.n.value_or(1);
      scalars["p0"] = r.p0;
      scalars["p1"] = r.p1;
      scalars["error_weight"] = r.error_weight;
      scalars["entropy"] = entropy_of(r.state);
      distances["dist_to_pctc"] = trace_distance(r.state, target.state);
      distances["bound"] = 2.0 * r.error_weight;
      break;
    }
    case Model::dctc_circuit: {
      const ControlState control =
          make_control_state(control_kind(cfg), p.n.value_or(4), p.gamma.value_or(0.5));
      CircuitOptions opts;
      opts.method = p.method.value_or("weight_mixture") == "full_vector"
                        ? CircuitMethod::full_vector
                        : CircuitMethod::weight_mixture;
      opts.mode = p.literal.value_or(false) ? CircuitMode::literal : CircuitMode::adopted;
      const DctcSimReport r = dctc_circuit_simulate(s.u, s.rho, s.omega0, control, opts);
      states["output"] = density_to_json(r.output);
      states["reference_formula"] = density_to_json(r.reference_formula);
      states["reference_fixed"] = density_to_json(r.reference_fixed);
      scalars["n"] = r.n;
      scalars["copies"] = r.copies;
      scalars["entropy"] = entropy_of(r.output);
      distances["dist_formula"] = r.dist_formula;
      distances["dist_fixed"] = r.dist_fixed;
      out["method"] = std::string(to_string(r.method));
      out["mode"] = std::string(to_string(r.mode));
      out["control"] = std::string(to_string(control.kind()));
      break;
    }
    case Model::fixpoint: {
      const QuantumChannel ch = induced_channel(s.u, s.rho);
      const FixedPointSet set = fixed_point_subspace(ch);
      const DensityMatrix proj = fixed_point_projection(ch, s.omega0);
      const double gamma = p.gamma.value_or(0.5);
      const std::size_t n = p.n.value_or(10);
      states["projection"] = density_to_json(proj);
      scalars["fixed_dimension"] = set.dimension;
      scalars["residual"] = verify_consistency(ch, proj);
      scalars["entropy"] = entropy_of(proj);
      const QuantumChannel damped = ch.damped(gamma);
      ComplexMatrix power = s.omega0.matrix(), sum = power, kras = power;
      for (std::size_t i = 0; i <= n; ++i) {
        if (i > 0) {
          power = ch.act(power);
          sum += power;
          kras = damped.act(kras);
        }
        const ComplexMatrix avg = sum / static_cast<double>(i + 1);
        trace.push_back({{"iteration", i},
                         {"dist_cesaro", trace_distance(avg, proj.matrix())},
                         {"dist_krasnoselskij", trace_distance(kras, proj.matrix())}});
      }
      for (const std::string& w : set.warnings) out["notes"].push_back(w);
      break;
    }
    case Model::maxent: {
      const QuantumChannel ch = induced_channel(s.u, s.rho);
      const MaxEntropyResult r = solve_max_entropy(ch);
      states["sigma"] = density_to_json(r.state);
      scalars["entropy"] = r.entropy;
      scalars["iterations"] = r.iterations;
      scalars["gradient_norm"] = r.gradient_norm;
      try {
        const BlockDecomposition blocks = detect_blocks(ch, cfg.seed ^ 0x5eedb10cULL);
        json list = json::array();
        for (const Block& b : blocks.blocks)
          list.push_back({{"d_left", b.d_left}, {"d_right", b.d_right}});
        out["blocks"] = std::move(list);
        out["block_weights"] = blocks.max_entropy_weights();
        distances["dist_to_block_formula"] =
            trace_distance(r.state, blocks.max_entropy_state());
      } catch (const DecompositionFailed& e) {
        out["notes"].push_back(std::string("block detection failed: ") + e.what());
      }
      break;
    }
  }
  out["states"] = std::move(states);
  out["scalars"] = std::move(scalars);
  out["distances"] = std::move(distances);
  if (!trace.empty()) out["trace"] = std::move(trace);
  return out;
}

ScanPoint scan_point(const ExperimentConfig& cfg) {
  const Setup s = resolve(cfg);
  const ExperimentParams& p = cfg.params;
  ScanPoint pt;
  switch (cfg.model) {
    case Model::dctc_circuit: {
      const ControlKind kind = control_kind(cfg);
      const ControlState control =
          make_control_state(kind, p.n.value_or(4), p.gamma.value_or(0.5));
      CircuitOptions opts;
      opts.method = p.method.value_or("weight_mixture") == "full_vector"
                        ? CircuitMethod::full_vector
                        : CircuitMethod::weight_mixture;
      opts.mode = p.literal.value_or(false) ? CircuitMode::literal : CircuitMode::adopted;
      opts.exec = kernels::Execution::serial;
      const DctcSimReport r = dctc_circuit_simulate(s.u, s.rho, s.omega0, control, opts);
      pt.n = r.n;
      if (kind == ControlKind::product) pt.gamma = control.gamma();
      pt.dist_formula = r.dist_formula;
      pt.dist_fixed = r.dist_fixed;
      pt.entropy = entropy_of(r.output);
      break;
    }
    case Model::cross_t2p: {
      const std::size_t n = p.n.value_or(1);
      const TSimPResult r = tctc_simulate_pctc(s.u, s.rho, TSimPConfig{n});
      const PctcOutcome target = pctc_evolve(s.u, s.rho);
      pt.n = n;
      pt.dist_formula = trace_distance(r.state, target.state);
      pt.error_weight = r.error_weight;
      pt.entropy = entropy_of(r.state);
      break;
    }
    case Model::fixpoint: {
      const QuantumChannel ch = induced_channel(s.u, s.rho);
      const DensityMatrix proj = fixed_point_projection(ch, s.omega0);
      const std::size_t n = p.n.value_or(10);
      const double gamma = p.gamma.value_or(0.5);
      const DensityMatrix avg = cesaro_average(ch, s.omega0, n);
      const DensityMatrix kras = krasnoselskij_iterate(ch, s.omega0, gamma, n);
      pt.n = n;
      pt.gamma = gamma;
      pt.dist_formula = trace_distance(avg, proj);
      pt.dist_fixed = trace_distance(kras, proj);
      pt.entropy = entropy_of(kras);
      break;
    }
    default:
      throw ConfigError("scan supports dctc_circuit, cross_t2p and fixpoint, not " +
                        std::string(to_string(cfg.model)));
  }
  return pt;
}

void validate_params(const ExperimentConfig& cfg) {
  const ExperimentParams& p = cfg.params;
  if (p.n && *p.n == 0) throw ConfigError("\"n\" must be >= 1");
  if (p.n && *p.n > 100000) throw ConfigError("\"n\" is unreasonably large");
  if (p.gamma && !(*p.gamma > 0.0 && *p.gamma < 1.0))
    throw ConfigError("\"gamma\" must lie in (0, 1)");
  if (p.p && !(*p.p >= 0.0 && *p.p <= 1.0)) throw ConfigError("\"p\" must lie in [0, 1]");
  if (p.samples && *p.samples == 0) throw ConfigError("\"samples\" must be >= 1");
  if (p.control) {
    try {
      (void)parse_control_kind(*p.control);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  if (p.policy && *p.policy != "max_entropy" && *p.policy != "project_from")
    throw ConfigError("\"policy\" must be max_entropy or project_from");
  if (p.method && *p.method != "weight_mixture" && *p.method != "full_vector")
    throw ConfigError("\"method\" must be weight_mixture or full_vector");
  if (cfg.model == Model::cross_t2p && p.n && *p.n > 60)
    throw ConfigError("cross_t2p supports at most 60 CTC qubits");
  if (p.sweep) {
    const SweepSpec& sw = *p.sweep;
    for (double v : sw.values) {
      if (sw.over == "n" && !(v >= 1.0 && v == std::floor(v) && v <= 100000.0))
        throw ConfigError("sweep over n needs positive integers");
      if (sw.over == "gamma" && !(v > 0.0 && v < 1.0))
        throw ConfigError("sweep over gamma needs values in (0, 1)");
    }
  }
}

SweepSpec parse_sweep(const json& j) {
  check_keys(j, "sweep", {"over", "values", "from", "to", "step"});
  if (!j.contains("over")) throw ConfigError("sweep needs \"over\"");
  SweepSpec sw;
  sw.over = get_string(j.at("over"), "over");
  if (sw.over != "n" && sw.over != "gamma")
    throw ConfigError("sweep \"over\" must be n or gamma");
  if (j.contains("values")) {
    if (j.contains("from") || j.contains("to") || j.contains("step"))
      throw ConfigError("sweep takes either \"values\" or \"from\"/\"to\", not both");
    if (!j.at("values").is_array() || j.at("values").empty())
      throw ConfigError("sweep \"values\" must be a non-empty array");
    for (const json& v : j.at("values")) sw.values.push_back(get_number(v, "values"));
    return sw;
  }
  if (!j.contains("from") || !j.contains("to"))
    throw ConfigError("sweep needs \"values\" or \"from\" and \"to\"");
  const double from = get_number(j.at("from"), "from");
  const double to = get_number(j.at("to"), "to");
  const double step = j.contains("step") ? get_number(j.at("step"), "step") : 1.0;
  if (!(step > 0.0)) throw ConfigError("sweep \"step\" must be positive");
  if (to < from) throw ConfigError("sweep \"to\" must not be below \"from\"");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  if (count > 100000) throw ConfigError("sweep has too many points");
  for (std::size_t i = 0; i < count; ++i)
    sw.values.push_back(from + static_cast<double>(i) * step);
  return sw;
}

json sweep_to_json(const SweepSpec& sw) {
  json values = json::array();
  for (double v : sw.values) {
    if (sw.over == "n")
      values.push_back(static_cast<std::size_t>(v));
    else
      values.push_back(v);
  }
  return json{{"over", sw.over}, {"values", std::move(values)}};
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view to_string(Model model) {
  for (const auto& [m, s] : kModelNames)
    if (m == model) return s;
  return "unknown";
}

std::string library_version() { return CTC_VERSION_STRING; }

ExperimentConfig parse_config(const json& j) {
  check_keys(j, "config", {"model", "unitary", "rho", "params", "seed", "tolerances"});
  ExperimentConfig cfg;
  if (!j.contains("model")) throw ConfigError("config needs \"model\"");
  cfg.model = parse_model(j.at("model"));
  if (!j.contains("unitary")) throw ConfigError("config needs \"unitary\"");
  check_operator_spec(j.at("unitary"), "unitary");
  cfg.unitary.source = j.at("unitary");
  if (!j.contains("rho")) throw ConfigError("config needs \"rho\"");
  check_operator_spec(j.at("rho"), "rho");
  cfg.rho.source = j.at("rho");
  if (j.contains("seed")) {
    if (!is_non_negative_integer(j.at("seed")))
      throw ConfigError("\"seed\" must be a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }

  if (j.contains("params")) {
    const json& pj = j.at("params");
    check_keys(pj, "params", {"n", "gamma", "p", "samples", "control", "omega0",
                              "policy", "method", "literal", "sweep"});
    ExperimentParams& p = cfg.params;
    if (pj.contains("n")) p.n = get_count(pj.at("n"), "n");
    if (pj.contains("gamma")) p.gamma = get_number(pj.at("gamma"), "gamma");
    if (pj.contains("p")) p.p = get_number(pj.at("p"), "p");
    if (pj.contains("samples")) p.samples = get_count(pj.at("samples"), "samples");
    if (pj.contains("control")) p.control = get_string(pj.at("control"), "control");
    if (pj.contains("omega0")) {
      check_operator_spec(pj.at("omega0"), "omega0");
      p.omega0 = OperatorSpec{pj.at("omega0")};
    }
    if (pj.contains("policy")) p.policy = get_string(pj.at("policy"), "policy");
    if (pj.contains("method")) p.method = get_string(pj.at("method"), "method");
    if (pj.contains("literal")) {
      if (!pj.at("literal").is_boolean()) throw ConfigError("\"literal\" must be a boolean");
      p.literal = pj.at("literal").get<bool>();
    }
    if (pj.contains("sweep")) p.sweep = parse_sweep(pj.at("sweep"));
  }

  if (j.contains("tolerances")) {
    const json& tj = j.at("tolerances");
    check_keys(tj, "tolerances", {"null_projection", "consistency"});
    if (tj.contains("null_projection"))
      cfg.tolerances.null_projection = get_number(tj.at("null_projection"), "null_projection");
    if (tj.contains("consistency"))
      cfg.tolerances.consistency = get_number(tj.at("consistency"), "consistency");
    if (cfg.tolerances.null_projection && !(*cfg.tolerances.null_projection >= 0.0))
      throw ConfigError("\"null_projection\" must be non-negative");
    if (cfg.tolerances.consistency && !(*cfg.tolerances.consistency > 0.0))
      throw ConfigError("\"consistency\" must be positive");
  }

  validate_params(cfg);
  (void)resolve(cfg);
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

json serialize_config(const ExperimentConfig& cfg) {
  json j{{"model", std::string(to_string(cfg.model))},
         {"unitary", cfg.unitary.source},
         {"rho", cfg.rho.source},
         {"seed", cfg.seed}};
  const ExperimentParams& p = cfg.params;
  json pj = json::object();
  if (p.n) pj["n"] = *p.n;
  if (p.gamma) pj["gamma"] = *p.gamma;
  if (p.p) pj["p"] = *p.p;
  if (p.samples) pj["samples"] = *p.samples;
  if (p.control) pj["control"] = *p.control;
  if (p.omega0) pj["omega0"] = p.omega0->source;
  if (p.policy) pj["policy"] = *p.policy;
  if (p.method) pj["method"] = *p.method;
  if (p.literal) pj["literal"] = *p.literal;
  if (p.sweep) pj["sweep"] = sweep_to_json(*p.sweep);
  if (!pj.empty()) j["params"] = std::move(pj);
  json tj = json::object();
  if (cfg.tolerances.null_projection) tj["null_projection"] = *cfg.tolerances.null_projection;
  if (cfg.tolerances.consistency) tj["consistency"] = *cfg.tolerances.consistency;
  if (!tj.empty()) j["tolerances"] = std::move(tj);
  return j;
}

RunResult run(const ExperimentConfig& cfg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> warnings;
  std::mutex warnings_mutex;
  log::Sink previous = log::set_sink([&](std::string_view m) {
    std::lock_guard<std::mutex> lock(warnings_mutex);
    warnings.emplace_back(m);
  });
  struct Restore {
    log::Sink& prev;
    ~Restore() { log::set_sink(std::move(prev)); }
  } restore{previous};

  RunResult result;
  json& report = result.report;
  report["config"] = serialize_config(cfg);
  report["version"] = library_version();
  report["rng"] = {{"name", std::string(Rng::kName)}, {"version", Rng::kVersion}};
  report["seed"] = cfg.seed;
  report["model"] = std::string(to_string(cfg.model));

  const Setup setup = resolve(cfg);
  try {
    report["result"] = run_model(cfg, setup);
    report["status"] = "ok";
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = error_details(e);
    result.error_code = e.code();
  }
  report["warnings"] = warnings;
  if (options.include_timing)
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<ScanPoint> scan(const ExperimentConfig& cfg) {
  if (!cfg.params.sweep) throw ConfigError("scan needs params.sweep");
  if (cfg.model != Model::dctc_circuit && cfg.model != Model::cross_t2p &&
      cfg.model != Model::fixpoint)
    throw ConfigError("scan supports dctc_circuit, cross_t2p and fixpoint, not " +
                      std::string(to_string(cfg.model)));
  const SweepSpec& sw = *cfg.params.sweep;
  if (cfg.model == Model::cross_t2p && sw.over != "n")
    throw ConfigError("cross_t2p sweeps over n only");

  std::vector<ExperimentConfig> points(sw.values.size(), cfg);
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].params.sweep.reset();
    if (sw.over == "n")
      points[i].params.n = static_cast<std::size_t>(sw.values[i]);
    else
      points[i].params.gamma = sw.values[i];
    validate_params(points[i]);
  }

  std::vector<std::optional<ScanPoint>> rows(points.size());
  std::vector<std::exception_ptr> failures(points.size());
  const auto count = static_cast<long long>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < count; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    try {
      rows[i] = scan_point(points[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  std::vector<ScanPoint> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    out.push_back(*rows[i]);
  }
  return out;
}

std::string scan_to_csv(const std::vector<ScanPoint>& points) {
  std::string csv = std::string(kCsvHeader) + "\n";
  auto field = [](const std::optional<double>& x) {
    return x ? format_number(*x) : std::string();
  };
  for (const ScanPoint& p : points) {
    csv += p.n ? std::to_string(*p.n) : std::string();
    csv += ',' + field(p.gamma);
    csv += ',' + field(p.dist_formula);
    csv += ',' + field(p.dist_fixed);
    csv += ',' + field(p.error_weight);
    csv += ',' + field(p.entropy);
    csv += '\n';
  }
  return csv;
}

}  // namespace ctc
