#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "defectwalk/oracle/dense.hpp"

namespace defectwalk {

struct DominantEstimate {
  Complex rayleigh;        ///< ⟨v, Uv⟩ / ⟨v, v⟩ for the final iterate
  Complex eigenvalue;      ///< first-quadrant representative of the dominant quadruple
  double modulus = 0.0;    ///< |λ| of the dominant quadruple
  double modulus_change = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  Complex acc{};
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

inline double vector_norm(std::span<const Complex> v) { return std::sqrt(std::abs(inner(v, v))); }

struct PairFit {
  Complex eigenvalue;
  double modulus = 0.0;
  bool ok = false;
};

// The dominant eigenvalues come as ±λ, ±conj(λ) with equal modulus, so U²
// restricted to the dominant subspace has the two eigenvalues λ², conj(λ)².
// Fit x₂ ≈ a x₁ + b x₀ with x₁ = U²x₀, x₂ = U²x₁ and read λ² off μ² - aμ - b.
inline PairFit fit_pair(const DenseOperator& op, const std::vector<Complex>& x0) {
  const auto x1 = op.apply(op.apply(x0));
  const auto x2 = op.apply(op.apply(x1));
  const Complex g11 = inner(x1, x1);
  const Complex g10 = inner(x1, x0);
  const Complex g01 = inner(x0, x1);
  const Complex g00 = inner(x0, x0);
  const Complex r1 = inner(x1, x2);
  const Complex r0 = inner(x0, x2);
  const Complex det = g11 * g00 - g10 * g01;
  if (std::abs(det) <= 1e-300) return {};
  const Complex a = (r1 * g00 - g10 * r0) / det;
  const Complex b = (g11 * r0 - g01 * r1) / det;
  const Complex disc = principal_sqrt(a * a + 4.0 * b);
  const Complex mu1 = (a + disc) / 2.0;
  const Complex mu2 = (a - disc) / 2.0;
  Complex mu = std::abs(mu1) >= std::abs(mu2) ? mu1 : mu2;
  if (std::abs(std::abs(mu1) - std::abs(mu2)) <= 1e-8 * std::abs(mu)) mu = mu1.imag() >= 0.0 ? mu1 : mu2;
  return {principal_sqrt(mu), std::sqrt(std::abs(mu)), std::isfinite(std::abs(mu))};
}

}  // namespace detail

/// Fixed pseudo-random start vector (deterministic across runs).
inline std::vector<Complex> default_seed_vector(std::size_t dimension, std::uint64_t seed = 0x5eedULL) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> v(dimension);
  for (auto& c : v) c = Complex(normal(rng), normal(rng));
  return v;
}

/// Power iteration with per-step normalization. Plain power iteration does
/// not settle on a single vector here (the dominant quadruple shares one
/// modulus), so the returned modulus comes from a two-term recurrence fit on
/// U² and the phase is reported as the first-quadrant representative.
/// Converged when the fitted modulus moves by less than `tolerance`
/// (relative) over the last two iterations.
inline DominantEstimate dominant_eigenvalue(const DenseOperator& op, int iterations,
                                            std::optional<std::vector<Complex>> seed = std::nullopt,
                                            double tolerance = 1e-10) {
  if (iterations < 0) throw DomainError("iterations must be >= 0");
  std::vector<Complex> v = seed ? std::move(*seed) : default_seed_vector(op.dimension());
  if (v.size() != op.dimension()) throw DomainError("seed length does not match operator dimension");
  double n = detail::vector_norm(v);
  if (n == 0.0 || !std::isfinite(n)) throw DomainError("seed vector must be nonzero and finite");
  for (auto& c : v) c /= n;

  DominantEstimate est;
  std::vector<double> history;
  for (int k = 0; k < iterations; ++k) {
    auto w = op.apply(v);
    n = detail::vector_norm(w);
    if (n == 0.0) break;
    for (auto& c : w) c /= n;
    v = std::move(w);
    est.iterations = k + 1;
    if (k + 3 >= iterations) {
      const auto fit = detail::fit_pair(op, v);
      if (fit.ok) {
        history.push_back(fit.modulus);
        est.eigenvalue = fit.eigenvalue;
        est.modulus = fit.modulus;
      }
    }
  }
  est.rayleigh = detail::inner(v, op.apply(v)) / detail::inner(v, v);
  if (history.size() >= 3) {
    est.modulus_change = std::abs(history.back() - history[history.size() - 3]);
    est.converged = est.modulus_change <= tolerance * est.modulus;
  } else if (est.modulus == 0.0) {
    est.modulus = std::abs(est.rayleigh);
    est.eigenvalue = est.rayleigh;
  }
  return est;
}

}  // namespace defectwalk
