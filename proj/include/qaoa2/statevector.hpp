#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qaoa2/graph.hpp"
#include "qaoa2/rng.hpp"

namespace qaoa2 {

/// Dense simulation is capped here; beyond this the hierarchy must split.
inline constexpr std::size_t kMaxQubits = 20;

enum class InitKind { uniform, ghz };

/// Dense n-qubit state. Basis index bit k holds qubit k; bit value 0 means
/// spin +1, bit value 1 means spin -1.
struct Statevector {
  std::size_t n_qubits = 0;
  std::vector<std::complex<double>> amp;

  std::size_t dim() const { return amp.size(); }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
  }
};

inline Statevector prepare_initial(std::size_t n, InitKind kind) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("prepare_initial: qubit count outside 1.." +
                                std::to_string(kMaxQubits));
  Statevector sv;
  sv.n_qubits = n;
  sv.amp.assign(std::size_t(1) << n, {0.0, 0.0});
  if (kind == InitKind::uniform) {
    const double a = std::pow(2.0, -double(n) / 2.0);
    std::fill(sv.amp.begin(), sv.amp.end(), std::complex<double>(a, 0.0));
  } else {
    const double a = 1.0 / std::sqrt(2.0);
    sv.amp.front() = {a, 0.0};
    sv.amp.back() = {a, 0.0};
  }
  return sv;
}

/// Diagonal evolution exp(-i*gamma*diag) applied amplitude-wise.
inline void apply_phase(Statevector& sv, const std::vector<double>& diag, double gamma) {
  if (diag.size() != sv.amp.size())
    throw std::invalid_argument("apply_phase: diagonal size mismatch");
  for (std::size_t i = 0; i < sv.amp.size(); ++i)
    sv.amp[i] *= std::polar(1.0, -gamma * diag[i]);
}

/// Single-qubit mixing rotation exp(-i*beta*X_q).
inline void apply_rx(Statevector& sv, std::size_t q, double beta) {
  const double c = std::cos(beta);
  const std::complex<double> is(0.0, -std::sin(beta));
  const std::uint64_t bit = std::uint64_t(1) << q;
  const std::uint64_t dim = sv.amp.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const auto a0 = sv.amp[i], a1 = sv.amp[i | bit];
    sv.amp[i] = c * a0 + is * a1;
    sv.amp[i | bit] = is * a0 + c * a1;
  }
}

/// Two-qubit phase exp(-i*angle*Z_u Z_v).
inline void apply_zz_phase(Statevector& sv, NodeId u, NodeId v, double angle) {
  const std::uint64_t mu = std::uint64_t(1) << u, mv = std::uint64_t(1) << v;
  const auto same = std::polar(1.0, -angle), diff = std::polar(1.0, angle);
  for (std::uint64_t i = 0; i < sv.amp.size(); ++i)
    sv.amp[i] *= ((i & mu) != 0) == ((i & mv) != 0) ? same : diff;
}

inline int spin_of(std::uint64_t idx, std::size_t q) {
  return (idx >> q) & 1 ? -1 : +1;
}

inline Assignment index_to_assignment(std::uint64_t idx, std::size_t n) {
  Assignment a(n);
  for (std::size_t q = 0; q < n; ++q) a[q] = spin_of(idx, q);
  return a;
}

/// Running prefix sums of |amp|^2, for inverse-CDF sampling.
inline std::vector<double> probability_prefix(const Statevector& sv) {
  std::vector<double> cdf(sv.amp.size());
  double run = 0.0;
  for (std::size_t i = 0; i < sv.amp.size(); ++i) {
    run += std::norm(sv.amp[i]);
    cdf[i] = run;
  }
  return cdf;
}

inline std::uint64_t sample_index(const std::vector<double>& cdf, std::mt19937_64& gen) {
  const double u = uniform_real(gen, 0.0, cdf.back());
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return std::uint64_t(it - cdf.begin());
}

}  // namespace qaoa2
