#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string_view>
#include <vector>

#include "defectwalk/lattice.hpp"
#include "defectwalk/matrix2.hpp"
#include "defectwalk/scalar.hpp"

namespace defectwalk {

/// C(x) = (ω_x/√2)[[1, -1], [1, 1]]; ω_x = ω at the origin and 1 elsewhere.
inline Matrix2<double> coin(long x, DefectParameter omega) {
  const double f = omega.site_factor(x) / std::sqrt(2.0);
  return {f, -f, f, f};
}

/// One step of U_ω = SC on the truncated window. Amplitudes that would be
/// read from outside [-N, N] are zero (Dirichlet truncation):
///   (UΨ)_L(x) = (ω_{x+1}/√2)(Ψ_L(x+1) - Ψ_R(x+1))
///   (UΨ)_R(x) = (ω_{x-1}/√2)(Ψ_L(x-1) + Ψ_R(x-1))
template <class C>
WaveFunction<C> apply_U(const WaveFunction<C>& psi, DefectParameter omega) {
  using Real = real_t<C>;
  using std::sqrt;
  const long n = psi.window();
  const Real inv_rt2 = Real{1} / sqrt(Real{2});
  const Real defect(omega.value());
  WaveFunction<C> out(n);
  for (long x = -n; x <= n; ++x) {
    if (x + 1 <= n) {
      const auto& s = psi.at(x + 1);
      const Real f = x + 1 == 0 ? defect * inv_rt2 : inv_rt2;
      out.at(x).left = f * (s.left - s.right);
    }
    if (x - 1 >= -n) {
      const auto& s = psi.at(x - 1);
      const Real f = x - 1 == 0 ? defect * inv_rt2 : inv_rt2;
      out.at(x).right = f * (s.left + s.right);
    }
  }
  return out;
}

/// ‖(UΨ - λΨ) restricted to |x| ≤ N - margin‖. margin = 0 gives the full
/// truncated residual, including the boundary leakage.
template <class C>
real_t<C> eigen_residual(const WaveFunction<C>& psi, DefectParameter omega, const C& lambda, long margin = 2) {
  using Real = real_t<C>;
  using std::norm;
  using std::sqrt;
  const auto u = apply_U(psi, omega);
  const long limit = psi.window() - margin;
  Real total{0};
  for (long x = -limit; x <= limit; ++x) {
    total += norm(u.at(x).left - lambda * psi.at(x).left) + norm(u.at(x).right - lambda * psi.at(x).right);
  }
  return sqrt(total);
}

enum class InitialState { origin_up, origin_down, origin_symmetric };

inline std::string_view to_string(InitialState s) {
  switch (s) {
    case InitialState::origin_up:
      return "origin-up";
    case InitialState::origin_down:
      return "origin-down";
    case InitialState::origin_symmetric:
      return "origin-symmetric";
  }
  return "?";
}

/// δ-state at the origin: (1, 0), (0, 1) or (1, i)/√2.
inline WaveFunction<> initial_state(InitialState kind, long window) {
  WaveFunction<> psi(window);
  switch (kind) {
    case InitialState::origin_up:
      psi.at(0) = {1.0, 0.0};
      break;
    case InitialState::origin_down:
      psi.at(0) = {0.0, 1.0};
      break;
    case InitialState::origin_symmetric:
      psi.at(0) = {Complex(1.0 / std::sqrt(2.0), 0.0), Complex(0.0, 1.0 / std::sqrt(2.0))};
      break;
  }
  return psi;
}

struct StepRecord {
  long t = 0;
  double log_norm = 0.0;            ///< log ‖U^t Ψ‖
  double norm = 0.0;                ///< ‖U^t Ψ‖ (may overflow to inf; log_norm stays finite)
  double origin_weight = 0.0;       ///< |Ψ_L(0)|² + |Ψ_R(0)|² of U^t Ψ
  double origin_probability = 0.0;  ///< origin_weight / ‖U^t Ψ‖²
  double growth_rate = 1.0;         ///< (‖U^t Ψ‖ / ‖U^{⌊t/2⌋} Ψ‖)^{1/(t - ⌊t/2⌋)}
  double cumulative_growth_rate = 1.0;  ///< (‖U^t Ψ‖ / ‖Ψ‖)^{1/t}
};

struct Trajectory {
  std::vector<StepRecord> records;
  /// Set when the light cone of the initial support left the window.
  bool truncated = false;
  long first_truncated_step = -1;
  /// U^steps Ψ = exp(final_log_scale) · final_state.
  WaveFunction<> final_state{1};
  double final_log_scale = 0.0;
};

/// Iterates U_ω `steps` times. The state is rescaled whenever its norm leaves
/// [1e-150, 1e150] and the scale is kept as a separate logarithm, so long
/// non-unitary runs cannot overflow.
inline Trajectory evolve(const WaveFunction<>& initial, DefectParameter omega, long steps) {
  if (steps < 0) throw DomainError("steps must be >= 0");
  if (!initial.all_finite()) throw DomainError("initial state has non-finite amplitudes");
  if (initial.norm() == 0.0) throw DomainError("initial state is zero");

  Trajectory traj;
  const long radius = initial.support_radius();
  // Amplitude at |x| = N is pushed out of the window at step N - radius + 1.
  const long first_loss = initial.window() - radius + 1;
  if (steps >= first_loss) {
    traj.truncated = true;
    traj.first_truncated_step = first_loss;
  }

  WaveFunction<> psi = initial;
  double log_scale = 0.0;
  std::vector<double> log_norms;
  log_norms.reserve(static_cast<std::size_t>(steps) + 1);

  auto record = [&](long t, double norm) {
    const double log_norm = norm > 0.0 ? log_scale + std::log(norm) : -std::numeric_limits<double>::infinity();
    log_norms.push_back(log_norm);
    StepRecord r;
    r.t = t;
    r.log_norm = log_norm;
    r.norm = std::exp(log_norm);
    r.origin_probability = norm > 0.0 ? psi.weight(0) / (norm * norm) : 0.0;
    r.origin_weight = norm > 0.0 ? std::exp(2.0 * log_norm) * r.origin_probability : 0.0;
    if (t > 0) {
      const long half = t / 2;
      r.growth_rate = std::exp((log_norm - log_norms[static_cast<std::size_t>(half)]) / static_cast<double>(t - half));
      r.cumulative_growth_rate = std::exp((log_norm - log_norms.front()) / static_cast<double>(t));
    }
    traj.records.push_back(r);
  };

  record(0, psi.norm());
  for (long t = 1; t <= steps; ++t) {
    psi = apply_U(psi, omega);
    const double n = psi.norm();
    record(t, n);
    if (n == 0.0) break;  // everything left the window
    if (n > 1e150 || n < 1e-150) {
      log_scale += std::log(n);
      psi *= Complex(1.0 / n);
    }
  }
  traj.final_state = std::move(psi);
  traj.final_log_scale = log_scale;
  return traj;
}

/// Asymptotic growth rate of ‖U^t Ψ‖ at t = steps, estimated over the trailing
/// half of the run. Tends to max(1, |λ₁|) for generic Ψ.
inline double growth_rate(const WaveFunction<>& initial, DefectParameter omega, long steps) {
  if (steps < 10) throw DomainError("growth_rate needs at least 10 steps");
  return evolve(initial, omega, steps).records.back().growth_rate;
}

}  // namespace defectwalk
