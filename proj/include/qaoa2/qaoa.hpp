#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qaoa2/graph.hpp"
#include "qaoa2/oracle.hpp"
#include "qaoa2/statevector.hpp"

namespace qaoa2 {

/// Ising cost operator sum_{(u,v)} w_uv Z_u Z_v with its full eigenvalue
/// table. MaxCut and the cost eigenvalue are related by
/// cut(z) = (total_weight - E(z)) / 2, so minimizing E maximizes the cut.
struct CostHamiltonian {
  std::size_t n_qubits = 0;
  std::vector<Edge> terms;
  std::vector<double> diagonal;  // E(z) per basis index
};

inline CostHamiltonian build_cost(const Graph& g) {
  const std::size_t n = g.n_nodes();
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("build_cost: node count outside the simulator range 1.." +
                                std::to_string(kMaxQubits));
  CostHamiltonian h;
  h.n_qubits = n;
  h.terms = g.edges();
  h.diagonal.assign(std::size_t(1) << n, 0.0);
  for (const Edge& e : h.terms) {
    const std::uint64_t mu = std::uint64_t(1) << e.u, mv = std::uint64_t(1) << e.v;
    for (std::uint64_t i = 0; i < h.diagonal.size(); ++i)
      h.diagonal[i] += ((i & mu) != 0) == ((i & mv) != 0) ? e.w : -e.w;
  }
  return h;
}

struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;  // same length p >= 1
};

enum class ExpectationMode { exact, shots };

struct QaoaConfig {
  int p = 1;
  int iterations = 20;
  double learning_rate = 0.01;
  int shots = 1000;
  int sample_rounds = 1000;
  InitKind init_state = InitKind::uniform;
  ExpectationMode expectation_mode = ExpectationMode::shots;
  std::uint64_t seed = 0;

  void validate() const {
    if (p < 1) throw std::invalid_argument("qaoa: need p >= 1");
    if (iterations < 0) throw std::invalid_argument("qaoa: need iterations >= 0");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("qaoa: need learning_rate > 0");
    if (shots < 1) throw std::invalid_argument("qaoa: need shots >= 1");
    if (sample_rounds < 1) throw std::invalid_argument("qaoa: need sample_rounds >= 1");
  }
};

// Optional single-gate offset used by the parameter-shift rule: one extra
// rotation of the named gate by delta, applied right after its layer entry.
struct GateShift {
  int layer = 0;
  bool cost_gate = true;  // true: index names a cost term, false: a mixer qubit
  std::size_t index = 0;
  double delta = 0.0;
};

/// Alternating ansatz: per layer, the cost phase exp(-i*gamma_l*H) then the
/// mixer exp(-i*beta_l*X_q) on every qubit.
inline Statevector apply_ansatz(const CostHamiltonian& h, const QaoaParams& params,
                                const Statevector& init, const GateShift* shift = nullptr) {
  if (params.gammas.empty() || params.gammas.size() != params.betas.size())
    throw std::invalid_argument("apply_ansatz: gammas/betas must have equal length >= 1");
  if (init.amp.size() != h.diagonal.size())
    throw std::invalid_argument("apply_ansatz: state dimension mismatch");
  Statevector sv = init;
  const int p = int(params.gammas.size());
  for (int l = 0; l < p; ++l) {
    apply_phase(sv, h.diagonal, params.gammas[l]);
    if (shift && shift->cost_gate && shift->layer == l) {
      const Edge& e = h.terms[shift->index];
      apply_zz_phase(sv, e.u, e.v, shift->delta * e.w);
    }
    for (std::size_t q = 0; q < h.n_qubits; ++q) {
      double beta = params.betas[l];
      if (shift && !shift->cost_gate && shift->layer == l && shift->index == q)
        beta += shift->delta;
      apply_rx(sv, q, beta);
    }
  }
  return sv;
}

/// <H> either summed exactly over the distribution or estimated from
/// measurement shots drawn with `gen`.
inline double expectation(const CostHamiltonian& h, const Statevector& sv,
                          ExpectationMode mode, int shots, std::mt19937_64& gen) {
  if (sv.amp.size() != h.diagonal.size())
    throw std::invalid_argument("expectation: state dimension mismatch");
  if (mode == ExpectationMode::exact) {
    double s = 0.0;
    for (std::size_t i = 0; i < sv.amp.size(); ++i) s += std::norm(sv.amp[i]) * h.diagonal[i];
    return s;
  }
  const auto cdf = probability_prefix(sv);
  double s = 0.0;
  for (int k = 0; k < shots; ++k) s += h.diagonal[sample_index(cdf, gen)];
  return s / double(shots);
}

/// Analytic gradient by the two-term parameter-shift rule, one term per
/// underlying rotation. A mixer rotation exp(-i*beta*X) has eigenvalues +-1:
/// shift +-pi/4, unit factor. A cost rotation exp(-i*gamma*w*ZZ) has
/// eigenvalues +-w: shift +-pi/(4w), factor w. Zero-weight terms contribute
/// exactly zero and are skipped.
inline std::pair<std::vector<double>, std::vector<double>> gradient(
    const CostHamiltonian& h, const QaoaParams& params, const QaoaConfig& cfg,
    const Statevector& init, std::mt19937_64& shot_rng) {
  const int p = int(params.gammas.size());
  auto eval = [&](const GateShift& sh) {
    const Statevector sv = apply_ansatz(h, params, init, &sh);
    return expectation(h, sv, cfg.expectation_mode, cfg.shots, shot_rng);
  };
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  std::vector<double> dg(p, 0.0), db(p, 0.0);
  for (int l = 0; l < p; ++l) {
    for (std::size_t t = 0; t < h.terms.size(); ++t) {
      const double w = h.terms[t].w;
      if (w == 0.0) continue;
      const double s = quarter_pi / w;
      dg[l] += w * (eval({l, true, t, +s}) - eval({l, true, t, -s}));
    }
    for (std::size_t q = 0; q < h.n_qubits; ++q)
      db[l] += eval({l, false, q, +quarter_pi}) - eval({l, false, q, -quarter_pi});
  }
  return {std::move(dg), std::move(db)};
}

struct OptimizeResult {
  QaoaParams params;
  std::vector<double> objective_trace;  // <H> at each iterate, final included
};

/// Gradient descent on <H> from uniformly random parameters in (0, 2pi].
/// Parameter init draws from the (seed, "init-params") stream, shot noise
/// from (seed, "shots").
inline OptimizeResult optimize(const Graph& g, const QaoaConfig& cfg) {
  cfg.validate();
  const CostHamiltonian h = build_cost(g);
  const Statevector init = prepare_initial(h.n_qubits, cfg.init_state);

  auto init_rng = make_stream(cfg.seed, "init-params");
  QaoaParams params;
  params.gammas.resize(cfg.p);
  params.betas.resize(cfg.p);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double& v : params.gammas) v = two_pi * (1.0 - uniform_real(init_rng, 0.0, 1.0));
  for (double& v : params.betas) v = two_pi * (1.0 - uniform_real(init_rng, 0.0, 1.0));

  auto shot_rng = make_stream(cfg.seed, "shots");
  OptimizeResult res;
  res.objective_trace.reserve(std::size_t(cfg.iterations) + 1);
  for (int it = 0; it < cfg.iterations; ++it) {
    res.objective_trace.push_back(
        expectation(h, apply_ansatz(h, params, init), cfg.expectation_mode, cfg.shots, shot_rng));
    auto [dg, db] = gradient(h, params, cfg, init, shot_rng);
    for (int l = 0; l < cfg.p; ++l) {
      params.gammas[l] -= cfg.learning_rate * dg[l];
      params.betas[l] -= cfg.learning_rate * db[l];
    }
  }
  res.objective_trace.push_back(
      expectation(h, apply_ansatz(h, params, init), cfg.expectation_mode, cfg.shots, shot_rng));
  res.params = std::move(params);
  return res;
}

/// Draws sample_rounds measurements from the ansatz state and returns the one
/// with the lowest cost eigenvalue (highest cut); ties keep the earliest draw.
/// Sampling uses the (seed, "shots", 1) stream, disjoint from the optimizer's.
inline Assignment sample_best(const Graph& g, const QaoaParams& params, const QaoaConfig& cfg) {
  const CostHamiltonian h = build_cost(g);
  const Statevector sv = apply_ansatz(h, params, prepare_initial(h.n_qubits, cfg.init_state));
  auto gen = make_stream(cfg.seed, "shots", 1);
  const auto cdf = probability_prefix(sv);
  std::uint64_t best_idx = 0;
  double best_e = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.sample_rounds; ++r) {
    const std::uint64_t idx = sample_index(cdf, gen);
    if (h.diagonal[idx] < best_e) {
      best_e = h.diagonal[idx];
      best_idx = idx;
    }
  }
  return index_to_assignment(best_idx, h.n_qubits);
}

/// Full block solve: optimize, sample the best measured assignment, then
/// 1-flip polish. The polish certifies cut >= total_weight/2 and never
/// returns less than the sampled cut.
inline Assignment qaoa_solve(const Graph& g, const QaoaConfig& cfg) {
  const OptimizeResult opt = optimize(g, cfg);
  return local_search_polish(g, sample_best(g, opt.params, cfg));
}

}  // namespace qaoa2
